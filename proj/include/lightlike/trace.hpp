#pragma once

#include <vector>

#include "lightlike/sections.hpp"

namespace lightlike {

struct TraceOptions {
    double step = 1e-2;       // parameter-space arc step
    int steps = 6;            // samples each side of p
    double corrector_tol = 1e-12;
    int max_corrector = 30;
};

// Samples of the exact intersection curve of the surface with the affine
// 3-space E(p, w) spanned by the section direction and the transversal
// bundle, plus derivative estimates at p with respect to the same parameter
// the section jets use (rate matched to the frame field along the curve).
struct TracedCurve {
    std::vector<std::array<double, 2>> params;
    std::vector<Vec4d> points;
    std::vector<double> s;
    Vec4d d1, d2, d3;
    Vec4d plane_normal;
    double max_constraint_residual = 0.0;
};

TracedCurve trace_curve(const Immersion& m, const Metric4& g, std::array<double, 2> p,
                        SectionKind kind, const GeometryOptions& geo = {},
                        const TraceOptions& opt = {});

} // namespace lightlike
