#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>

#include "lightlike/ambient.hpp"

namespace lightlike {

enum class StructureKind { HalfLightlike, NonDegenerate, CoIsotropic };

inline const char* to_string(StructureKind k) {
    switch (k) {
        case StructureKind::HalfLightlike: return "half_lightlike";
        case StructureKind::NonDegenerate: return "non_degenerate";
        case StructureKind::CoIsotropic: return "co_isotropic";
    }
    return "?";
}

template <class S>
struct Sym2 {
    S a11, a12, a22;
};

template <class S>
Sym2<S> induced_metric(const Metric4& g, const Vec4<S>& t1, const Vec4<S>& t2) {
    return {inner(g, t1, t1), inner(g, t1, t2), inner(g, t2, t2)};
}

// Rank of the induced 2x2 metric by eigenvalue magnitudes, relative to the
// largest entry: rank 1 -> half-lightlike, 2 -> non-degenerate, 0 -> co-isotropic.
inline StructureKind classify_structure(const Sym2<double>& m, double rank_tol = 1e-9) {
    const double scale = std::max({std::abs(m.a11), std::abs(m.a12), std::abs(m.a22), 1e-30});
    const double tau = rank_tol * scale;
    const double tr = m.a11 + m.a22;
    const double disc = std::sqrt(std::max(0.0, (m.a11 - m.a22) * (m.a11 - m.a22) + 4.0 * m.a12 * m.a12));
    const double l1 = 0.5 * (tr + disc);
    const double l2 = 0.5 * (tr - disc);
    const int rank = (std::abs(l1) > tau) + (std::abs(l2) > tau);
    if (rank == 1) return StructureKind::HalfLightlike;
    if (rank == 2) return StructureKind::NonDegenerate;
    return StructureKind::CoIsotropic;
}

// Quasi-orthonormal moving frame {xi, v, u, N}: xi spans the radical, v the
// screen, u the screen-transversal direction, N the lightlike transversal
// normalized to g(N, xi) = 1. Tangent members carry their coordinates in the
// parameter basis so frame fields can be differentiated along them.
template <class S>
struct Frame {
    Vec4<S> xi, v, u, n;
    std::array<S, 2> xi_par{};
    std::array<S, 2> v_par{};
    int eps = 1;
    int eps_v = 1;
    double gauge = 1.0;
};

template <class S>
struct PinValues {
    std::optional<Vec4<S>> xi, v, u;
};

namespace detail {

template <class S>
S jabs(const S& s) {
    return value_of(s) < 0.0 ? -s : s;
}

template <class S>
std::array<S, 2> solve2(const S& a, const S& b, const S& c, const S& d, const S& r1, const S& r2) {
    S det = a * d - b * c;
    if (value_of(det) == 0.0) throw Error("singular 2x2 solve");
    return {(r1 * d - b * r2) / det, (a * r2 - r1 * c) / det};
}

// Null space of the 2x4 system R1.x = R2.x = 0 (rank 2), solved through the
// column pair with the largest pivot minor; free columns get unit entries.
template <class S>
std::array<Vec4<S>, 2> null_space(const std::array<S, 4>& r1, const std::array<S, 4>& r2) {
    int pi = 0, pj = 1;
    double best = -1.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            const double det =
                std::abs(value_of(r1[i]) * value_of(r2[j]) - value_of(r1[j]) * value_of(r2[i]));
            if (det > best) {
                best = det;
                pi = i;
                pj = j;
            }
        }
    if (best <= 0.0) throw Error("degenerate orthogonality system");
    int free_k = -1, free_l = -1;
    for (int c = 0; c < 4; ++c) {
        if (c == pi || c == pj) continue;
        (free_k < 0 ? free_k : free_l) = c;
    }
    auto basis_for = [&](int fc) {
        auto sol = solve2(r1[pi], r1[pj], r2[pi], r2[pj], -r1[fc], -r2[fc]);
        Vec4<S> w;
        w[pi] = sol[0];
        w[pj] = sol[1];
        w[fc] = scalar_of<S>(1.0);
        return w;
    };
    return {basis_for(free_k), basis_for(free_l)};
}

template <class S>
std::array<S, 4> metric_row(const Metric4& g, const Vec4<S>& t) {
    return {t[0] * scalar_of<S>(g.signs[0]), t[1] * scalar_of<S>(g.signs[1]),
            t[2] * scalar_of<S>(g.signs[2]), t[3] * scalar_of<S>(g.signs[3])};
}

inline int first_significant(const Vec4d& v) {
    double scale = 0.0;
    for (int i = 0; i < 4; ++i) scale = std::max(scale, std::abs(v[i]));
    for (int i = 0; i < 4; ++i)
        if (std::abs(v[i]) > 1e-9 * scale) return i;
    return 0;
}

// Euclidean least squares of w against the tangent pair; residual is the
// off-plane remainder at values.
template <class S>
struct TangentCoords {
    std::array<S, 2> c;
    double residual;
};

template <class S>
TangentCoords<S> coords_in_tangents(const Vec4<S>& w, const Vec4<S>& t1, const Vec4<S>& t2) {
    auto sol = solve2(dot_euclid(t1, t1), dot_euclid(t1, t2), dot_euclid(t1, t2),
                      dot_euclid(t2, t2), dot_euclid(t1, w), dot_euclid(t2, w));
    const Vec4d rem = values_of(w) - values_of(t1 * sol[0] + t2 * sol[1]);
    return {{sol[0], sol[1]}, norm_euclid(rem)};
}

} // namespace detail

// Kernel direction of the induced metric, scaled so the largest-magnitude
// coefficient over the coordinate tangents is +1.
template <class S>
std::array<S, 2> radical_coordinates(const Sym2<S>& m) {
    std::array<S, 2> c;
    const double r1 = std::abs(value_of(m.a11)) + std::abs(value_of(m.a12));
    const double r2 = std::abs(value_of(m.a12)) + std::abs(value_of(m.a22));
    if (r1 >= r2) {
        c = {m.a12, -m.a11};
    } else {
        c = {m.a22, -m.a12};
    }
    const int imax = std::abs(value_of(c[0])) >= std::abs(value_of(c[1])) ? 0 : 1;
    const S pivot = c[imax];
    if (value_of(pivot) == 0.0) throw NotLightlikeError("radical direction not found");
    return {c[0] / pivot, c[1] / pivot};
}

// Eq path for the lightlike transversal: N = (V - g(V,V)/(2 g(V,xi)) xi) / g(V,xi),
// which enforces g(N,xi) = 1 and g(N,N) = 0 identically.
template <class S>
Vec4<S> transversal_from(const Metric4& g, const Vec4<S>& V, const Vec4<S>& xi, double tol = 1e-10) {
    const S gvx = inner(g, V, xi);
    const double scale = norm_euclid(values_of(V)) * norm_euclid(values_of(xi)) + 1e-300;
    if (std::abs(value_of(gvx)) < tol * scale)
        throw TransversalError("transversal not found: g(V, xi) vanishes");
    return (V - xi * (inner(g, V, V) / (gvx * 2.0))) / gvx;
}

template <class S>
std::array<S, 4> frame_coefficients(const Metric4& g, const Frame<S>& fr, const Vec4<S>& w) {
    return {inner(g, w, fr.n), inner(g, w, fr.v) * scalar_of<S>(fr.eps_v),
            inner(g, w, fr.u) * scalar_of<S>(fr.eps), inner(g, w, fr.xi)};
}

// Largest violation over the frame inner-product relations.
template <class S>
double frame_residual(const Metric4& g, const Frame<S>& fr) {
    const Vec4d xi = values_of(fr.xi), v = values_of(fr.v), u = values_of(fr.u), n = values_of(fr.n);
    const Metric4& m = g;
    double worst = 0.0;
    auto upd = [&](double val) { worst = std::max(worst, std::abs(val)); };
    upd(inner(m, xi, xi));
    upd(inner(m, n, n));
    upd(inner(m, n, xi) - 1.0);
    upd(inner(m, n, u));
    upd(inner(m, u, u) - fr.eps);
    upd(inner(m, u, xi));
    upd(inner(m, u, v));
    upd(inner(m, v, v) - fr.eps_v);
    upd(inner(m, v, xi));
    upd(inner(m, n, v));
    return worst;
}

template <class S>
Frame<S> build_frame(const Metric4& g, const Vec4<S>& t1, const Vec4<S>& t2,
                     const PinValues<S>* pins = nullptr, double pin_tol = 1e-7) {
    using std::sqrt;
    const auto m = induced_metric(g, t1, t2);
    const Sym2<double> mv{value_of(m.a11), value_of(m.a12), value_of(m.a22)};
    const StructureKind kind = classify_structure(mv);
    if (kind == StructureKind::NonDegenerate)
        throw NotLightlikeError("induced metric is non-degenerate");
    if (kind == StructureKind::CoIsotropic)
        throw CoIsotropicError("radical has dimension 2 (co-isotropic point)");

    Frame<S> fr;
    const double t_scale =
        std::max(norm_euclid(values_of(t1)), norm_euclid(values_of(t2)));

    // radical generator
    if (pins && pins->xi) {
        const Vec4<S>& cand = *pins->xi;
        auto tc = detail::coords_in_tangents(cand, t1, t2);
        const double cn = norm_euclid(values_of(cand));
        if (tc.residual > pin_tol * cn)
            throw PinError("pinned xi violates tangency to the surface");
        if (std::abs(value_of(inner(g, cand, cand))) > pin_tol * cn * cn)
            throw PinError("pinned xi violates g(xi, xi) = 0");
        if (std::abs(value_of(inner(g, cand, t1))) > pin_tol * cn * t_scale ||
            std::abs(value_of(inner(g, cand, t2))) > pin_tol * cn * t_scale)
            throw PinError("pinned xi violates orthogonality to the tangent plane");
        fr.xi = cand;
        fr.xi_par = tc.c;
    } else {
        fr.xi_par = radical_coordinates(m);
        fr.xi = t1 * fr.xi_par[0] + t2 * fr.xi_par[1];
    }

    // screen unit vector
    if (pins && pins->v) {
        const Vec4<S>& cand = *pins->v;
        auto tc = detail::coords_in_tangents(cand, t1, t2);
        const double cn = norm_euclid(values_of(cand));
        if (tc.residual > pin_tol * cn) throw PinError("pinned v violates tangency to the surface");
        const S nv = inner(g, cand, cand);
        if (std::abs(value_of(nv)) < 1e-12 * cn * cn)
            throw PinError("pinned v violates non-degeneracy of the screen");
        const S scale = sqrt(detail::jabs(nv));
        fr.v = cand / scale;
        fr.v_par = {tc.c[0] / scale, tc.c[1] / scale};
        fr.eps_v = value_of(nv) > 0.0 ? 1 : -1;
    } else {
        const Vec4d xiv = values_of(fr.xi);
        auto ratio = [&](const Vec4d& t) {
            return std::abs(dot_euclid(t, xiv)) / (norm_euclid(t) * norm_euclid(xiv) + 1e-300);
        };
        const int pick = ratio(values_of(t2)) < ratio(values_of(t1)) - 1e-12 ? 1 : 0;
        const Vec4<S>& cand = pick == 0 ? t1 : t2;
        const S nv = inner(g, cand, cand);
        if (std::abs(value_of(nv)) < 1e-14)
            throw NotLightlikeError("no non-degenerate coordinate tangent for the screen");
        const S scale = sqrt(detail::jabs(nv));
        Vec4<S> v = cand / scale;
        std::array<S, 2> vp{};
        vp[pick] = scalar_of<S>(1.0) / scale;
        if (values_of(v)[detail::first_significant(values_of(v))] < 0.0) {
            v = -v;
            vp[pick] = -vp[pick];
        }
        fr.v = v;
        fr.v_par = vp;
        fr.eps_v = value_of(nv) > 0.0 ? 1 : -1;
    }

    // screen-transversal unit u inside the solution space of g(w, t_i) = 0
    if (pins && pins->u) {
        const Vec4<S>& cand = *pins->u;
        const double cn = norm_euclid(values_of(cand));
        if (std::abs(value_of(inner(g, cand, t1))) > pin_tol * cn * t_scale ||
            std::abs(value_of(inner(g, cand, t2))) > pin_tol * cn * t_scale)
            throw PinError("pinned u violates orthogonality to the tangent plane");
        const S nu = inner(g, cand, cand);
        if (std::abs(value_of(nu)) < 1e-12 * cn * cn)
            throw PinError("pinned u violates g(u, u) != 0");
        fr.u = cand / sqrt(detail::jabs(nu));
        fr.eps = value_of(nu) > 0.0 ? 1 : -1;
    } else {
        const auto basis =
            detail::null_space(detail::metric_row(g, t1), detail::metric_row(g, t2));
        const Vec4<S>& w1 = basis[0];
        const Vec4<S>& w2 = basis[1];
        const S b00 = inner(g, w1, w1), b01 = inner(g, w1, w2), b11 = inner(g, w2, w2);
        // rank-1 Gram: the direction maximizing |g(w,w)| / |w|_E^2 is the
        // Euclidean-inverse image of the dominant column.
        std::array<S, 2> x = std::abs(value_of(b00)) >= std::abs(value_of(b11))
                                 ? std::array<S, 2>{b00, b01}
                                 : std::array<S, 2>{b01, b11};
        auto c = detail::solve2(dot_euclid(w1, w1), dot_euclid(w1, w2), dot_euclid(w1, w2),
                                dot_euclid(w2, w2), x[0], x[1]);
        Vec4<S> u0 = w1 * c[0] + w2 * c[1];
        const S nu = inner(g, u0, u0);
        if (std::abs(value_of(nu)) <
            1e-12 * dot_euclid(values_of(u0), values_of(u0)))
            throw NotLightlikeError("no non-degenerate screen-transversal direction");
        Vec4<S> u = u0 / sqrt(detail::jabs(nu));
        if (values_of(u)[detail::first_significant(values_of(u))] < 0.0) u = -u;
        fr.u = u;
        fr.eps = value_of(nu) > 0.0 ? 1 : -1;
    }

    // lightlike transversal via the complement of {v, u}
    {
        const auto basis =
            detail::null_space(detail::metric_row(g, fr.v), detail::metric_row(g, fr.u));
        const double s0 = std::abs(value_of(inner(g, basis[0], fr.xi))) /
                          (norm_euclid(values_of(basis[0])) + 1e-300);
        const double s1 = std::abs(value_of(inner(g, basis[1], fr.xi))) /
                          (norm_euclid(values_of(basis[1])) + 1e-300);
        const Vec4<S>& V = s0 >= s1 ? basis[0] : basis[1];
        fr.n = transversal_from(g, V, fr.xi);
    }

    return fr;
}

// xi -> alpha xi forces N -> N / alpha; the screen members are untouched.
template <class S>
Frame<S> gauge_transform(const Frame<S>& fr, double alpha) {
    if (alpha == 0.0) throw Error("gauge factor must be nonzero");
    Frame<S> out = fr;
    out.xi = fr.xi * scalar_of<S>(alpha);
    out.xi_par = {fr.xi_par[0] * scalar_of<S>(alpha), fr.xi_par[1] * scalar_of<S>(alpha)};
    out.n = fr.n / scalar_of<S>(alpha);
    out.gauge = fr.gauge * alpha;
    return out;
}

} // namespace lightlike
