#include "lightlike/sections.hpp"

#include <cmath>

namespace lightlike {

namespace {

Vec4<Jet> tangential_field(const PointGeometry& ctx, const Vec4<Jet>& w) {
    const auto co = decompose(ctx, w);
    return ctx.fr.xi * co[0] + ctx.fr.v * co[1];
}

Vec4d tangential_values(const PointGeometry& ctx, const Vec4<Jet>& w) {
    const auto co = decompose(ctx, w);
    return values_of(ctx.fr.xi) * co[0].value() + values_of(ctx.fr.v) * co[1].value();
}

struct DegParts {
    Vec4d d1, d2, d3;
    Vec4d nabla_xi_xi;        // tangential acceleration at p
    double xi_d2 = 0.0;       // xi(D2(xi,xi))
    Vec4d a_u_xi;             // A_u xi in ambient components
    double d2_xixi = 0.0, eps1_xi = 0.0;
};

DegParts degenerate_parts(const PointGeometry& ctx, const InducedPackage& pk) {
    DegParts out;
    const auto dir = ctx.fr.xi_par;
    const Vec4d xi = values_of(ctx.fr.xi);
    const Vec4d v = values_of(ctx.fr.v);
    const Vec4d u = values_of(ctx.fr.u);
    const Vec4d n = values_of(ctx.fr.n);

    const Vec4<Jet> gamma2 = dbar(dir, ctx.fr.xi);
    out.d1 = xi;
    out.d2 = values_of(gamma2);

    const Vec4<Jet> nabla_field = tangential_field(ctx, gamma2);
    out.nabla_xi_xi = values_of(nabla_field);

    const auto nabla_co = decompose(ctx, nabla_field);
    const std::array<double, 2> w{nabla_co[0].value(), nabla_co[1].value()};

    const Vec4<Jet> second = dbar(dir, nabla_field);
    const Vec4d nabla2 = tangential_values(ctx, second);

    const Jet d2_field = inner(ctx.g, gamma2, ctx.fr.u) * static_cast<double>(pk.eps);
    out.xi_d2 = dbar_scalar(dir, d2_field).value();
    out.d2_xixi = pk.D2[0][0];
    out.eps1_xi = pk.eps1[0];
    out.a_u_xi = xi * pk.A_u[0][0] + v * pk.A_u[1][0];

    // every printed term of the third derivative, none absorbed
    out.d3 = nabla2 + u * (pk.d2(w, {1.0, 0.0})) + u * out.xi_d2 +
             (n * out.eps1_xi - out.a_u_xi) * out.d2_xixi;
    return out;
}

struct NondegParts {
    Vec4d d1, d2, d3;
    Vec4d T;          // transversal-plus-radical part of d2
    Vec4d dbar_T;     // its derivative along v per the expanded formula
    Vec4d nabla_v_v;  // tangential part of d2
    Vec4d h;          // D1 N + D2 u at (v,v)
};

NondegParts nondegenerate_parts(const PointGeometry& ctx, const InducedPackage& pk) {
    NondegParts out;
    const auto dir = ctx.fr.v_par;
    const Vec4d xi = values_of(ctx.fr.xi);
    const Vec4d v = values_of(ctx.fr.v);
    const Vec4d u = values_of(ctx.fr.u);
    const Vec4d n = values_of(ctx.fr.n);

    const Vec4<Jet> gamma2 = dbar(dir, ctx.fr.v);
    out.d1 = v;
    out.d2 = values_of(gamma2);

    const auto co = decompose(ctx, gamma2);
    const Jet e1_field = co[0];
    const Jet d1_field = co[3];
    const Jet d2_field = co[2];
    const std::array<double, 2> nabla_coords{co[0].value(), co[1].value()};
    out.nabla_v_v = xi * nabla_coords[0] + v * nabla_coords[1];
    out.T = xi * e1_field.value() + n * d1_field.value() + u * d2_field.value();
    out.h = n * d1_field.value() + u * d2_field.value();

    const Vec4<Jet> screen_field = ctx.fr.v * co[1];
    const auto screen2_co = decompose(ctx, dbar(dir, screen_field));
    const Vec4d nabla_star_2 = v * screen2_co[1].value();

    const double c = co[1].value(); // nabla*_v v = c v
    const double e1 = pk.E1[1][1], d1 = pk.D1[1][1], d2v = pk.D2[1][1];
    const Vec4d a_xi_v = v * pk.A_xi[1][1];
    const Vec4d a_n_v = xi * pk.A_N[0][1] + v * pk.A_N[1][1];
    const Vec4d a_u_v = xi * pk.A_u[0][1] + v * pk.A_u[1][1];

    const double v_e1 = dbar_scalar(dir, e1_field).value();
    const double v_d1 = dbar_scalar(dir, d1_field).value();
    const double v_d2 = dbar_scalar(dir, d2_field).value();

    out.dbar_T = xi * (c * e1) + n * (c * d1) + u * (c * d2v)   // slots against nabla*_v v
                 + xi * v_e1 + n * v_d1 + u * v_d2              // scalar derivatives
                 - a_xi_v * e1 + xi * (e1 * pk.u1[1]) + u * (e1 * pk.D2[1][0]) // E1 block
                 - a_n_v * d1 + n * (d1 * pk.rho1[1]) + u * (d1 * pk.rho2[1])  // D1 block
                 - a_u_v * d2v + n * (d2v * pk.eps1[1]);                       // D2 block

    out.d3 = nabla_star_2 + out.dbar_T;
    return out;
}

} // namespace

SectionJet section_jet(const PointGeometry& ctx, SectionKind kind) {
    const InducedPackage pk = induced_package(ctx);
    SectionJet jet;
    jet.kind = kind;

    // The arc is geodesic on a neighborhood, not merely at the point: the
    // tangential acceleration and its rate along the section must both vanish.
    auto arc_flag = [&ctx](const std::array<Jet, 2>& dir, const Vec4<Jet>& field,
                           const Vec4d& d1) {
        const Vec4<Jet> gamma2 = dbar(dir, field);
        const auto co = decompose(ctx, gamma2);
        const Vec4d tang =
            values_of(ctx.fr.xi) * co[0].value() + values_of(ctx.fr.v) * co[1].value();
        const double rate = std::abs(dbar_scalar(dir, co[0]).value()) +
                            std::abs(dbar_scalar(dir, co[1]).value());
        const double scale = norm_euclid(d1) + norm_euclid(values_of(gamma2));
        return norm_euclid(tang) < 1e-8 * scale && rate < 1e-8 * (1.0 + scale);
    };

    if (kind == SectionKind::Degenerate) {
        const auto parts = degenerate_parts(ctx, pk);
        jet.d1 = parts.d1;
        jet.d2 = parts.d2;
        jet.d3 = parts.d3;
        jet.geodesic_arc = arc_flag(ctx.fr.xi_par, ctx.fr.xi, parts.d1);
    } else {
        const auto parts = nondegenerate_parts(ctx, pk);
        jet.d1 = parts.d1;
        jet.d2 = parts.d2;
        jet.d3 = parts.d3;
        jet.geodesic_arc = arc_flag(ctx.fr.v_par, ctx.fr.v, parts.d1);
    }

    const int eps = ctx.fr.eps;
    jet.kappa_sq = eps * inner(ctx.g, jet.d2, jet.d2);
    jet.dkappa_sq_ds = 2.0 * eps * inner(ctx.g, jet.d3, jet.d2);
    jet.planarity_residual = relative_wedge_residual(jet.d1, jet.d2, jet.d3);
    return jet;
}

double planarity_criterion_residual(const PointGeometry& ctx, SectionKind kind) {
    const InducedPackage pk = induced_package(ctx);
    if (kind == SectionKind::Degenerate) {
        const auto parts = degenerate_parts(ctx, pk);
        const Vec4d u = values_of(ctx.fr.u);
        const Vec4d n = values_of(ctx.fr.n);
        const Vec4d a = u * parts.d2_xixi;
        const Vec4d b =
            u * parts.xi_d2 + (n * parts.eps1_xi - parts.a_u_xi) * parts.d2_xixi;
        return relative_pair_residual(a, b, 1.0);
    }
    const auto parts = nondegenerate_parts(ctx, pk);
    return relative_wedge_residual(parts.d1, parts.T, parts.dbar_T, 1.0);
}

double geodesic_criterion_residual(const PointGeometry& ctx, SectionKind kind) {
    const InducedPackage pk = induced_package(ctx);
    const int which = kind == SectionKind::Degenerate ? 0 : 1;
    const auto dir = which == 0 ? ctx.fr.xi_par : ctx.fr.v_par;
    const Vec4<Jet>& w_field = which == 0 ? ctx.fr.xi : ctx.fr.v;

    const Vec4<Jet> gamma2 = dbar(dir, w_field);
    const auto co = decompose(ctx, gamma2);
    const Vec4<Jet> h_field = ctx.fr.n * co[3] + ctx.fr.u * co[2];
    const std::array<double, 2> nabla_coords{co[0].value(), co[1].value()};

    const Vec4d n = values_of(ctx.fr.n);
    const Vec4d u = values_of(ctx.fr.u);
    const std::array<double, 2> w_slot = which == 0 ? std::array<double, 2>{1.0, 0.0}
                                                    : std::array<double, 2>{0.0, 1.0};
    const Vec4d correction =
        (n * pk.d1(nabla_coords, w_slot) + u * pk.d2(nabla_coords, w_slot)) * 2.0;
    const Vec4d dbar_h = values_of(dbar(dir, h_field)) - correction;

    return relative_wedge_residual(values_of(w_field), values_of(h_field), dbar_h, 1.0);
}

double section_energy(const PointGeometry& ctx, SectionKind kind) {
    const InducedPackage pk = induced_package(ctx);
    if (kind == SectionKind::Degenerate) return pk.eps * pk.D2[0][0] * pk.D2[0][0];
    const auto parts = nondegenerate_parts(ctx, pk);
    return inner(ctx.g, parts.T, parts.T);
}

PlaneCoefficients plane_coefficients(const PointGeometry& ctx, double tol) {
    const InducedPackage pk = induced_package(ctx);
    const auto parts = degenerate_parts(ctx, pk);
    if (!(parts.d2_xixi > tol))
        throw CoefficientUndefinedError("plane coefficients need D2(xi,xi) > 0");

    const auto dir = ctx.fr.xi_par;
    const Jet u1_field = inner(ctx.g, dbar(dir, ctx.fr.xi), ctx.fr.n);
    const double xi_u1 = dbar_scalar(dir, u1_field).value();

    const double log_rate = parts.xi_d2 / parts.d2_xixi;
    PlaneCoefficients pc;
    pc.a = pk.u1[0] + log_rate;
    pc.b = xi_u1 - parts.d2_xixi * pk.rho2[0] * pk.eps - pk.u1[0] * log_rate;
    return pc;
}

} // namespace lightlike
