#pragma once

#include "lightlike/forms.hpp"

namespace lightlike {

enum class SectionKind { Degenerate, NonDegenerate };

inline const char* to_string(SectionKind k) {
    return k == SectionKind::Degenerate ? "degenerate" : "nondegenerate";
}

// Third-order germ of the normal section at p in the radical direction
// (d1 = xi) or the screen direction (d1 = v). kappa_sq carries the causal
// weight: eps * kappa_sq = <d2, d2>.
struct SectionJet {
    SectionKind kind;
    Vec4d d1, d2, d3;
    double kappa_sq = 0.0;
    double dkappa_sq_ds = 0.0;
    double planarity_residual = 0.0;
    bool geodesic_arc = false;
};

SectionJet section_jet(const PointGeometry& ctx, SectionKind kind);

struct PlanarityVerdict {
    bool planar;
    double residual;
};

inline PlanarityVerdict planarity(const SectionJet& jet, double tol) {
    return {jet.planarity_residual < tol, jet.planarity_residual};
}

// Wedge-based characterizations of planar sections. The degenerate form is
// the pair wedge of D2(xi,xi) u against its ambient derivative along xi; the
// non-degenerate form wedges the section direction v with T(v,v) and its
// derivative, which is exactly the planarity wedge of the section germ.
double planarity_criterion_residual(const PointGeometry& ctx, SectionKind kind);

// Geodesic-arc variants built from h = D1 N + D2 u and its covariant
// derivative (transversal field differentiated, tangent-slot corrections
// subtracted), wedged with the section direction.
double geodesic_criterion_residual(const PointGeometry& ctx, SectionKind kind);

// L_p: eps * D2(xi,xi)^2 in the radical direction, <T(v,v), T(v,v)> in the
// screen direction.
double section_energy(const PointGeometry& ctx, SectionKind kind);

// Coefficients of d3 = a d2 + b d1 for sections with D2(xi,xi) > 0.
struct PlaneCoefficients {
    double a, b;
};
PlaneCoefficients plane_coefficients(const PointGeometry& ctx, double tol = 1e-12);

} // namespace lightlike
