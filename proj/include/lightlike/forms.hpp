#pragma once

#include <string>
#include <vector>

#include "lightlike/frame.hpp"
#include "lightlike/surface.hpp"

namespace lightlike {

enum class Backend { Jet, Fd };

struct GeometryOptions {
    Backend backend = Backend::Jet;
    bool use_pins = true;
    double gauge = 1.0;
    double fd_step = 5e-3;
    double pin_tol = 1e-7;
};

// Everything jet-valued at one parameter point: the immersion jet, the
// coordinate tangent fields, and the frame run on jet scalars so that every
// frame member is differentiable twice.
struct PointGeometry {
    Metric4 g;
    std::array<double, 2> p{};
    Vec4<Jet> x;
    Vec4<Jet> t1, t2;
    Frame<Jet> fr;
};

inline PointGeometry point_geometry(const Immersion& m, const Metric4& g,
                                    std::array<double, 2> p, const GeometryOptions& opt = {}) {
    PointGeometry ctx;
    ctx.g = g;
    ctx.p = p;
    const ImmersionJet jet = opt.backend == Backend::Jet ? immersion_jet(m, p)
                                                         : immersion_jet_fd(m, p, opt.fd_step);
    ctx.x = jet.x;
    ctx.t1 = jet.tangent_field(0);
    ctx.t2 = jet.tangent_field(1);

    PinValues<Jet> pins;
    const PinValues<Jet>* pins_ptr = nullptr;
    if (opt.use_pins && (m.pins.xi || m.pins.v || m.pins.u)) {
        const std::array<Jet, 2> params{Jet::variable(p[0], 0, 2), Jet::variable(p[1], 1, 2)};
        auto eval_pin = [&](const std::array<Expr, 4>& exprs) {
            Vec4<Jet> out;
            for (int k = 0; k < 4; ++k) out[k] = exprs[k].eval<Jet>(params);
            return out;
        };
        if (m.pins.xi) pins.xi = eval_pin(*m.pins.xi);
        if (m.pins.v) pins.v = eval_pin(*m.pins.v);
        if (m.pins.u) pins.u = eval_pin(*m.pins.u);
        pins_ptr = &pins;
    }
    ctx.fr = build_frame(g, ctx.t1, ctx.t2, pins_ptr, opt.pin_tol);
    if (opt.gauge != 1.0) ctx.fr = gauge_transform(ctx.fr, opt.gauge);
    return ctx;
}

// Flat-ambient covariant derivative: component-wise directional derivative of
// a field along a tangent direction given by parameter-space coefficients.
inline Vec4<Jet> dbar(const std::array<Jet, 2>& dir, const Vec4<Jet>& field) {
    Vec4<Jet> out;
    for (int k = 0; k < 4; ++k)
        out[k] = dir[0] * field[k].derivative(0) + dir[1] * field[k].derivative(1);
    return out;
}

inline Jet dbar_scalar(const std::array<Jet, 2>& dir, const Jet& field) {
    return dir[0] * field.derivative(0) + dir[1] * field.derivative(1);
}

// Frame coefficients (a_xi, a_v, a_u, a_N) of an ambient jet vector.
inline std::array<Jet, 4> decompose(const PointGeometry& ctx, const Vec4<Jet>& w) {
    return frame_coefficients(ctx.g, ctx.fr, w);
}

// Induced objects in the working basis {xi, v}; index 0 = xi, 1 = v.
// Operator matrices are stored [output coeff][input], with the xi-row of A_N
// kept explicit so S(TM)-valuedness is a checked residual, not an assumption.
struct InducedPackage {
    double D1[2][2]{}, D2[2][2]{}, E1[2][2]{};
    double A_N[2][2]{}, A_u[2][2]{}, A_xi[2][2]{};
    double A_N_xi_row[2]{}; // g(A_N X, N) per input, expected 0
    double rho1[2]{}, rho2[2]{}, eps1[2]{}, eps2[2]{}, u1[2]{}, eta[2]{};
    double nabla[2][2][2]{}; // [X][Y][output coeff]
    int eps = 1, eps_v = 1;

    double d1(const std::array<double, 2>& a, const std::array<double, 2>& b) const {
        return a[0] * (D1[0][0] * b[0] + D1[0][1] * b[1]) +
               a[1] * (D1[1][0] * b[0] + D1[1][1] * b[1]);
    }
    double d2(const std::array<double, 2>& a, const std::array<double, 2>& b) const {
        return a[0] * (D2[0][0] * b[0] + D2[0][1] * b[1]) +
               a[1] * (D2[1][0] * b[0] + D2[1][1] * b[1]);
    }
};

namespace detail {

inline std::array<Jet, 2> frame_dir(const PointGeometry& ctx, int which) {
    return which == 0 ? ctx.fr.xi_par : ctx.fr.v_par;
}

inline const Vec4<Jet>& frame_field(const PointGeometry& ctx, int which) {
    return which == 0 ? ctx.fr.xi : ctx.fr.v;
}

} // namespace detail

inline InducedPackage induced_package(const PointGeometry& ctx) {
    InducedPackage pk;
    pk.eps = ctx.fr.eps;
    pk.eps_v = ctx.fr.eps_v;

    for (int xi_idx = 0; xi_idx < 2; ++xi_idx) {
        const auto dir = detail::frame_dir(ctx, xi_idx);

        for (int y = 0; y < 2; ++y) {
            const auto cov = dbar(dir, detail::frame_field(ctx, y));
            const auto co = decompose(ctx, cov);
            pk.nabla[xi_idx][y][0] = co[0].value();
            pk.nabla[xi_idx][y][1] = co[1].value();
            pk.D1[xi_idx][y] = co[3].value();
            pk.D2[xi_idx][y] = co[2].value();
        }

        // E1(X, P Y): the PY = v column; P kills xi.
        {
            const auto cov = dbar(dir, ctx.fr.v);
            pk.E1[xi_idx][0] = 0.0;
            pk.E1[xi_idx][1] = inner(ctx.g, cov, ctx.fr.n).value();
        }

        // Weingarten members for N and u.
        {
            const auto cov = dbar(dir, ctx.fr.n);
            const auto co = decompose(ctx, cov);
            pk.A_N[0][xi_idx] = -co[0].value();
            pk.A_N[1][xi_idx] = -co[1].value();
            pk.A_N_xi_row[xi_idx] = -co[0].value(); // g(A_N X, N)
            pk.rho1[xi_idx] = co[3].value();
            pk.rho2[xi_idx] = co[2].value();
        }
        {
            const auto cov = dbar(dir, ctx.fr.u);
            const auto co = decompose(ctx, cov);
            pk.A_u[0][xi_idx] = -co[0].value();
            pk.A_u[1][xi_idx] = -co[1].value();
            pk.eps1[xi_idx] = co[3].value();
            pk.eps2[xi_idx] = co[2].value();
        }

        // Screen split of nabla_X xi: u1 on the radical, -A*_xi on S(TM).
        {
            const auto cov = dbar(dir, ctx.fr.xi);
            const auto co = decompose(ctx, cov);
            pk.u1[xi_idx] = co[0].value();
            pk.A_xi[0][xi_idx] = 0.0;
            pk.A_xi[1][xi_idx] = -co[1].value();
        }

        pk.eta[xi_idx] =
            inner(ctx.g, detail::frame_field(ctx, xi_idx), ctx.fr.n).value();
    }
    return pk;
}

struct NamedResidual {
    std::string name;
    double value;
};

// Structural identities tying the Gauss and Weingarten objects together,
// every one scale-normalized so tolerances are relative.
std::vector<NamedResidual> identity_residuals(const PointGeometry& ctx, const InducedPackage& pk);

inline double max_residual(const std::vector<NamedResidual>& rs) {
    double worst = 0.0;
    for (const auto& r : rs) worst = std::max(worst, std::abs(r.value));
    return worst;
}

} // namespace lightlike
