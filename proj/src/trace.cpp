#include "lightlike/trace.hpp"

#include <cmath>

namespace lightlike {

namespace {

struct Tangents {
    Vec4d x, t1, t2;
};

Tangents eval_tangents(const Immersion& m, std::array<double, 2> q) {
    const std::array<Jet, 2> params{Jet::variable(q[0], 0, 1), Jet::variable(q[1], 1, 1)};
    Tangents out;
    for (int k = 0; k < 4; ++k) {
        const Jet j = m.coords()[k].eval<Jet>(params);
        out.x[k] = j.value();
        out.t1[k] = j.d(1, 0);
        out.t2[k] = j.d(0, 1);
    }
    return out;
}

Frame<double> value_frame(const Immersion& m, const Metric4& g, std::array<double, 2> q,
                          const GeometryOptions& geo) {
    const Tangents t = eval_tangents(m, q);
    PinValues<double> pins;
    const PinValues<double>* pins_ptr = nullptr;
    if (geo.use_pins && (m.pins.xi || m.pins.v || m.pins.u)) {
        const std::array<double, 2> params{q[0], q[1]};
        auto eval_pin = [&](const std::array<Expr, 4>& exprs) {
            Vec4d out;
            for (int k = 0; k < 4; ++k) out[k] = exprs[k].eval<double>(params);
            return out;
        };
        if (m.pins.xi) pins.xi = eval_pin(*m.pins.xi);
        if (m.pins.v) pins.v = eval_pin(*m.pins.v);
        if (m.pins.u) pins.u = eval_pin(*m.pins.u);
        pins_ptr = &pins;
    }
    Frame<double> fr = build_frame(g, t.t1, t.t2, pins_ptr, geo.pin_tol);
    if (geo.gauge != 1.0) fr = gauge_transform(fr, geo.gauge);
    return fr;
}

// Least-squares polynomial fit on the scaled abscissa; returns coefficients
// of sum c_k z^k.
std::vector<double> poly_fit(const std::vector<double>& z, const std::vector<double>& y, int deg) {
    const int ncoef = deg + 1;
    std::vector<double> ata(static_cast<std::size_t>(ncoef) * ncoef, 0.0);
    std::vector<double> atb(ncoef, 0.0);
    for (std::size_t r = 0; r < z.size(); ++r) {
        std::vector<double> row(ncoef);
        row[0] = 1.0;
        for (int k = 1; k < ncoef; ++k) row[k] = row[k - 1] * z[r];
        for (int i = 0; i < ncoef; ++i) {
            atb[i] += row[i] * y[r];
            for (int j = 0; j < ncoef; ++j) ata[i * ncoef + j] += row[i] * row[j];
        }
    }
    // Gaussian elimination with partial pivoting
    std::vector<int> perm(ncoef);
    for (int i = 0; i < ncoef; ++i) perm[i] = i;
    for (int col = 0; col < ncoef; ++col) {
        int piv = col;
        for (int r = col + 1; r < ncoef; ++r)
            if (std::abs(ata[r * ncoef + col]) > std::abs(ata[piv * ncoef + col])) piv = r;
        if (piv != col) {
            for (int j = 0; j < ncoef; ++j) std::swap(ata[col * ncoef + j], ata[piv * ncoef + j]);
            std::swap(atb[col], atb[piv]);
        }
        const double d = ata[col * ncoef + col];
        if (d == 0.0) throw Error("singular polynomial fit");
        for (int r = col + 1; r < ncoef; ++r) {
            const double f = ata[r * ncoef + col] / d;
            for (int j = col; j < ncoef; ++j) ata[r * ncoef + j] -= f * ata[col * ncoef + j];
            atb[r] -= f * atb[col];
        }
    }
    std::vector<double> c(ncoef);
    for (int r = ncoef - 1; r >= 0; --r) {
        double acc = atb[r];
        for (int j = r + 1; j < ncoef; ++j) acc -= ata[r * ncoef + j] * c[j];
        c[r] = acc / ata[r * ncoef + r];
    }
    return c;
}

double poly_eval(const std::vector<double>& c, double z) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

std::vector<double> poly_derivative(const std::vector<double>& c) {
    std::vector<double> d;
    for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<double>(k));
    if (d.empty()) d.push_back(0.0);
    return d;
}

} // namespace

TracedCurve trace_curve(const Immersion& m, const Metric4& g, std::array<double, 2> p,
                        SectionKind kind, const GeometryOptions& geo, const TraceOptions& opt) {
    const Frame<double> fr = value_frame(m, g, p, geo);
    const Vec4d w = kind == SectionKind::Degenerate ? fr.xi : fr.v;
    const Vec4d z = kind == SectionKind::Degenerate ? fr.v : fr.xi;
    const std::array<double, 2> w_par =
        kind == SectionKind::Degenerate ? fr.xi_par : fr.v_par;

    TracedCurve out;
    {
        Vec4d nrm = triple_wedge(w, fr.u, fr.n);
        const double nn = norm_euclid(nrm);
        if (nn < 1e-12) throw StepError("section plane is degenerate");
        out.plane_normal = nrm / nn;
    }
    // covector defining the field-matched rate: orthogonal to the complementary
    // tangent direction so the drift of the curve off the frame field is invisible
    Vec4d m2;
    {
        const Vec4d zh = z / norm_euclid(z);
        m2 = w - zh * dot_euclid(w, zh);
        const double nn = norm_euclid(m2);
        if (nn < 1e-12) throw StepError("section direction degenerate against the screen");
        m2 = m2 / nn;
    }

    const Tangents base = eval_tangents(m, p);
    const double x_scale = 1.0 + norm_euclid(base.x);

    auto constraint = [&](std::array<double, 2> q) {
        const Tangents t = eval_tangents(m, q);
        return dot_euclid(t.x - base.x, out.plane_normal);
    };
    auto gradient = [&](std::array<double, 2> q) {
        const Tangents t = eval_tangents(m, q);
        return std::array<double, 2>{dot_euclid(t.t1, out.plane_normal),
                                     dot_euclid(t.t2, out.plane_normal)};
    };

    const double h = opt.step;
    const int n = opt.steps;

    auto march = [&](int sgn) {
        std::vector<std::array<double, 2>> side;
        std::array<double, 2> q = p;
        std::array<double, 2> t_prev{sgn * w_par[0], sgn * w_par[1]};
        {
            const double tn = std::hypot(t_prev[0], t_prev[1]);
            t_prev = {t_prev[0] / tn, t_prev[1] / tn};
        }
        for (int k = 0; k < n; ++k) {
            const auto gr = gradient(q);
            const double gn = std::hypot(gr[0], gr[1]);
            if (gn < 1e-14) throw TraceStallError("constraint gradient vanished");
            std::array<double, 2> t{-gr[1] / gn, gr[0] / gn};
            if (t[0] * t_prev[0] + t[1] * t_prev[1] < 0.0) t = {-t[0], -t[1]};
            std::array<double, 2> next{q[0] + h * t[0], q[1] + h * t[1]};
            bool ok = false;
            for (int it = 0; it < opt.max_corrector; ++it) {
                const double f = constraint(next);
                if (std::abs(f) < opt.corrector_tol * x_scale) {
                    ok = true;
                    break;
                }
                const auto cg = gradient(next);
                const double cg2 = cg[0] * cg[0] + cg[1] * cg[1];
                if (cg2 < 1e-28) throw TraceStallError("corrector gradient vanished");
                next = {next[0] - f * cg[0] / cg2, next[1] - f * cg[1] / cg2};
            }
            if (!ok) throw TraceStallError("corrector failed to converge");
            const double moved = std::hypot(next[0] - q[0], next[1] - q[1]);
            if (moved > 3.0 * h) throw StepError("continuation step too large");
            if (!m.domain().contains(next))
                throw StepError("continuation left the parameter domain");
            out.max_constraint_residual =
                std::max(out.max_constraint_residual, std::abs(constraint(next)));
            t_prev = t;
            side.push_back(next);
            q = next;
        }
        return side;
    };

    const auto plus = march(+1);
    const auto minus = march(-1);

    out.params.reserve(2 * static_cast<std::size_t>(n) + 1);
    for (std::size_t k = minus.size(); k-- > 0;) out.params.push_back(minus[k]);
    out.params.push_back(p);
    for (const auto& q : plus) out.params.push_back(q);

    std::vector<double> tau;
    std::vector<Vec4d> ws;
    bool field_ok = true;
    for (const auto& q : out.params) {
        out.points.push_back(eval_tangents(m, q).x);
        // surfaces degenerate only on a locus have no stable frame off it
        try {
            const Frame<double> fq = value_frame(m, g, q, geo);
            const Vec4d wq = kind == SectionKind::Degenerate ? fq.xi : fq.v;
            if (norm_euclid(wq - w) > 0.2 * norm_euclid(w)) field_ok = false;
            ws.push_back(wq);
        } catch (const Error&) {
            field_ok = false;
            ws.push_back(w);
        }
    }
    // the constant base field still normalizes the first derivative and the
    // transversal second-derivative components exactly
    if (!field_ok)
        for (auto& wq : ws) wq = w;
    for (int k = -n; k <= n; ++k) tau.push_back(k * h);

    // Fit gamma(tau) and W(gamma(tau)) on the scaled abscissa, convert the
    // tau-derivatives to derivatives in the field-matched parameter s with
    // sigma' = <gamma_tau, m2> / <W, m2>.
    const int deg = std::min(8, 2 * n);
    std::vector<double> zscaled;
    for (double t : tau) zscaled.push_back(t / h);

    std::array<std::vector<double>, 4> comp_fit, wcomp_fit;
    for (int c = 0; c < 4; ++c) {
        std::vector<double> yc, wc;
        for (std::size_t k = 0; k < out.points.size(); ++k) {
            yc.push_back(out.points[k][c]);
            wc.push_back(ws[k][c]);
        }
        comp_fit[c] = poly_fit(zscaled, yc, deg);
        wcomp_fit[c] = poly_fit(zscaled, wc, deg);
    }

    auto vec_derivs = [&](const std::array<std::vector<double>, 4>& fit, int upto) {
        // derivatives in tau at 0: k! * c_k / h^k
        std::array<Vec4d, 4> d{};
        double fact = 1.0;
        for (int k = 0; k <= upto; ++k) {
            if (k > 0) fact *= k;
            for (int c = 0; c < 4; ++c)
                d[static_cast<std::size_t>(k)][c] =
                    (static_cast<std::size_t>(k) < fit[c].size() ? fit[c][static_cast<std::size_t>(k)] : 0.0) *
                    fact / std::pow(h, k);
        }
        return d;
    };
    const auto gamma_d = vec_derivs(comp_fit, 3);
    const auto w_d = vec_derivs(wcomp_fit, 2);

    // A = <gamma_tau, m2>, B = <W, m2>, r = A/B with two tau-derivatives.
    const double A0 = dot_euclid(gamma_d[1], m2);
    const double A1 = dot_euclid(gamma_d[2], m2);
    const double A2 = dot_euclid(gamma_d[3], m2);
    const double B0 = dot_euclid(w_d[0], m2);
    const double B1 = dot_euclid(w_d[1], m2);
    const double B2 = dot_euclid(w_d[2], m2);
    if (std::abs(B0) < 1e-14) throw TraceStallError("field rate vanished at base point");
    const double r0 = A0 / B0;
    const double r1 = (A1 - r0 * B1) / B0;
    const double r2 = (A2 - 2.0 * r1 * B1 - r0 * B2) / B0;

    const double tp = 1.0 / r0;
    const double tpp = -r1 / (r0 * r0 * r0);
    const double tppp = -r2 / (r0 * r0 * r0 * r0) + 3.0 * r1 * r1 / std::pow(r0, 5);

    out.d1 = gamma_d[1] * tp;
    out.d2 = gamma_d[2] * (tp * tp) + gamma_d[1] * tpp;
    out.d3 = gamma_d[3] * (tp * tp * tp) + gamma_d[2] * (3.0 * tp * tpp) + gamma_d[1] * tppp;

    // report-only: s per sample by Simpson on sigma'
    out.s.resize(out.params.size(), 0.0);
    auto sigma_rate = [&](double zv) {
        Vec4d gt, wv;
        for (int c = 0; c < 4; ++c) {
            gt[c] = poly_eval(poly_derivative(comp_fit[c]), zv) / h;
            wv[c] = poly_eval(wcomp_fit[c], zv);
        }
        const double den = dot_euclid(wv, m2);
        return dot_euclid(gt, m2) / den;
    };
    const std::size_t mid = static_cast<std::size_t>(n);
    for (std::size_t k = mid + 1; k < out.params.size(); ++k) {
        const double za = zscaled[k - 1], zb = zscaled[k];
        out.s[k] = out.s[k - 1] + h * (zb - za) / 6.0 *
                                      (sigma_rate(za) + 4.0 * sigma_rate(0.5 * (za + zb)) +
                                       sigma_rate(zb));
    }
    for (std::size_t k = mid; k-- > 0;) {
        const double za = zscaled[k], zb = zscaled[k + 1];
        out.s[k] = out.s[k + 1] - h * (zb - za) / 6.0 *
                                      (sigma_rate(za) + 4.0 * sigma_rate(0.5 * (za + zb)) +
                                       sigma_rate(zb));
    }
    return out;
}

} // namespace lightlike
