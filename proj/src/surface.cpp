#include "lightlike/surface.hpp"

#include <cmath>
#include <functional>

namespace lightlike {

Immersion Immersion::parametric(std::array<Expr, 4> coords, Box domain) {
    Immersion m;
    m.coords_ = std::move(coords);
    m.names_ = parametric_names();
    m.domain_ = domain;
    m.graph_ = false;
    return m;
}

Immersion Immersion::graph(int free_a, int free_b, Expr dep1, Expr dep2, Box domain) {
    if (free_a < 0 || free_b > 3 || free_a >= free_b)
        throw ConfigError("graph form needs two distinct free coordinates in order");
    Immersion m;
    int dep_slot = 0;
    for (int k = 0; k < 4; ++k) {
        if (k == free_a) {
            m.coords_[k] = Expr::var(0);
        } else if (k == free_b) {
            m.coords_[k] = Expr::var(1);
        } else {
            m.coords_[k] = dep_slot++ == 0 ? dep1 : dep2;
        }
    }
    m.names_ = graph_names(free_a, free_b);
    m.domain_ = domain;
    m.graph_ = true;
    return m;
}

namespace {

void check_rank2(const ImmersionJet& jet) {
    const Vec4d t1 = jet.tangent(0);
    const Vec4d t2 = jet.tangent(1);
    const double a = dot_euclid(t1, t1);
    const double b = dot_euclid(t1, t2);
    const double c = dot_euclid(t2, t2);
    // eigenvalues of the Euclidean Gram matrix
    const double tr = a + c;
    const double disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4.0 * b * b));
    const double lmin = 0.5 * (tr - disc);
    const double lmax = 0.5 * (tr + disc);
    if (!(lmin > 1e-18 + 1e-12 * lmax))
        throw NotImmersionError("not an immersion: Jacobian rank below 2 at (" +
                                std::to_string(jet.p[0]) + ", " + std::to_string(jet.p[1]) + ")");
}

} // namespace

ImmersionJet immersion_jet(const Immersion& m, std::array<double, 2> p) {
    if (!m.domain().contains(p))
        throw EvalError("parameter point outside domain box");
    ImmersionJet jet;
    jet.p = p;
    jet.x = m.eval<Jet>(Jet::variable(p[0], 0), Jet::variable(p[1], 1));
    check_rank2(jet);
    return jet;
}

double fd_partial(const Expr& e, std::array<double, 2> p, int i, int j, double step) {
    auto at = [&](double a, double b) {
        const std::array<double, 2> q{a, b};
        return e.eval<double>(q);
    };

    // 1-D central estimators of order h^2, composed per axis.
    using Fn1 = std::function<double(double)>;
    auto d_axis = [](const Fn1& f, double x, int order, double h) -> double {
        switch (order) {
            case 0: return f(x);
            case 1: return (f(x + h) - f(x - h)) / (2.0 * h);
            case 2: return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
            default:
                return (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) /
                       (2.0 * h * h * h);
        }
    };

    auto estimate = [&](double h) {
        Fn1 inner_fn = [&](double a) {
            Fn1 g = [&](double b) { return at(a, b); };
            return d_axis(g, p[1], j, h);
        };
        return d_axis(inner_fn, p[0], i, h);
    };

    if (i + j == 0) return at(p[0], p[1]);
    const double coarse = estimate(step);
    const double fine = estimate(step / 2.0);
    return (4.0 * fine - coarse) / 3.0;
}

ImmersionJet immersion_jet_fd(const Immersion& m, std::array<double, 2> p, double step) {
    ImmersionJet jet;
    jet.p = p;
    for (int k = 0; k < 4; ++k) {
        Jet c(0.0, Jet::kMaxOrder);
        for (int i = 0; i <= Jet::kMaxOrder; ++i)
            for (int j = 0; i + j <= Jet::kMaxOrder; ++j)
                c.set(i, j, fd_partial(m.coords()[k], p, i, j, step));
        jet.x[k] = c;
    }
    check_rank2(jet);
    return jet;
}

} // namespace lightlike
