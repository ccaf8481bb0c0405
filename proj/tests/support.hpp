#pragma once

// Shared test machinery: an independent finite-difference oracle for partial
// derivatives (central stencils with two Richardson sweeps) and the fixture
// surfaces the suite runs against.

#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lightlike/forms.hpp"
#include "lightlike/surface.hpp"

namespace oracle {

using Fn2 = std::function<double(double, double)>;

// O(h^2) central base estimators, composed per axis and extrapolated twice.
inline double axis_estimate(const std::function<double(double)>& f, double x, int order,
                            double h) {
    switch (order) {
        case 0: return f(x);
        case 1: return (f(x + h) - f(x - h)) / (2.0 * h);
        case 2: return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
        default:
            return (f(x + 2.0 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2.0 * h)) /
                   (2.0 * h * h * h);
    }
}

inline double partial(const Fn2& f, double x, double y, int i, int j, double h = 1e-2) {
    auto estimate = [&](double step) {
        std::function<double(double)> outer = [&](double a) {
            std::function<double(double)> inner_fn = [&](double b) { return f(a, b); };
            return axis_estimate(inner_fn, y, j, step);
        };
        return axis_estimate(outer, x, i, step);
    };
    if (i + j == 0) return f(x, y);
    const double e1 = estimate(h);
    const double e2 = estimate(h / 2.0);
    const double e3 = estimate(h / 4.0);
    const double r1 = (4.0 * e2 - e1) / 3.0;
    const double r2 = (4.0 * e3 - e2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

} // namespace oracle

namespace fixtures {

using lightlike::Box;
using lightlike::Expr;
using lightlike::Immersion;
using lightlike::Metric4;

inline std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "(%.17g)", v);
    return buf;
}

inline Expr gexpr(const std::string& text) {
    static const std::vector<std::string> vocab{"x1", "x2"};
    return Expr::parse(text, vocab);
}

inline std::array<Expr, 4> gpins(const std::string& a, const std::string& b,
                                 const std::string& c, const std::string& d) {
    return {gexpr(a), gexpr(b), gexpr(c), gexpr(d)};
}

// Graph surface in the index-2 space built from a log profile; the radical
// direction is the constant null vector (1, 1, sqrt(2), 0).
inline Immersion r42_log(bool pinned = true) {
    Immersion m = Immersion::graph(0, 1, gexpr("(x1 + x2)/sqrt(2)"),
                                   gexpr("(1/2)*log(1 + (x1 - x2)^2)"),
                                   Box{{-0.8, -0.8}, {0.8, 0.8}});
    if (pinned) {
        m.pins.xi = gpins("1", "1", "sqrt(2)", "0");
        m.pins.v = gpins("0", "sqrt(2)*(1 + (x1 - x2)^2)", "1 + (x1 - x2)^2",
                         "-sqrt(2)*(x1 - x2)");
        m.pins.u = gpins("0", "2*(x2 - x1)", "sqrt(2)*(x2 - x1)", "1 + (x1 - x2)^2");
    }
    return m;
}

// Same surface with a cubic perturbation of the last coordinate; the induced
// metric is degenerate only on the line x1 = 0, so fixtures sample there.
inline Immersion r42_log_perturbed() {
    return Immersion::graph(0, 1, gexpr("(x1 + x2)/sqrt(2)"),
                            gexpr("(1/2)*log(1 + (x1 - x2)^2) + 0.1*x1^3"),
                            Box{{-0.8, -0.8}, {0.8, 0.8}});
}

// Graph surface in the index-1 space: x2^2 + x4^2 = 1 with x3 = x1; the
// screen sections are arcs of the circle.
inline Immersion r41_circle(bool pinned = true) {
    static const std::vector<std::string> vocab{"x1", "x4"};
    Immersion m = Immersion::graph(0, 3, Expr::parse("sqrt(1 - x4^2)", vocab),
                                   Expr::parse("x1", vocab), Box{{-0.8, 0.2}, {0.8, 0.8}});
    if (pinned) {
        auto pin = [&](const std::string& a, const std::string& b, const std::string& c,
                       const std::string& d) {
            return std::array<Expr, 4>{Expr::parse(a, vocab), Expr::parse(b, vocab),
                                       Expr::parse(c, vocab), Expr::parse(d, vocab)};
        };
        m.pins.xi = pin("1", "0", "1", "0");
        m.pins.v = pin("0", "-x4", "0", "sqrt(1 - x4^2)");
        m.pins.u = pin("0", "sqrt(1 - x4^2)", "0", "x4");
    }
    return m;
}

// Tube family: profile circle of radius r traversed at half speed, giving a
// half-lightlike surface whose screen second fundamental form never vanishes.
inline Immersion r42_tube(double r = 1.0, double phase = 0.0) {
    const std::string arg = "(x1 + x2)/" + num(r * std::sqrt(2.0)) + " + " + num(phase);
    return Immersion::graph(0, 1, gexpr(num(r) + "*cos(" + arg + ")"),
                            gexpr(num(r) + "*sin(" + arg + ")"),
                            Box{{-0.8, -0.8}, {0.8, 0.8}});
}

// Affine plane spanned by a null direction and a spacelike axis.
inline Immersion null_plane() {
    static const std::vector<std::string> vocab{"u1", "u2"};
    return Immersion::parametric({Expr::parse("u1", vocab), Expr::parse("u1", vocab),
                                  Expr::parse("sqrt(2)*u1", vocab), Expr::parse("u2", vocab)},
                                 Box{{-1.0, -1.0}, {1.0, 1.0}});
}

inline Immersion nondegenerate_plane() {
    return Immersion::graph(0, 1, gexpr("0"), gexpr("0"), Box{{-1.0, -1.0}, {1.0, 1.0}});
}

inline Immersion coisotropic_plane() {
    return Immersion::graph(0, 1, gexpr("x1"), gexpr("x2"), Box{{-1.0, -1.0}, {1.0, 1.0}});
}

// Fixed member of the profile family below; its shape operators satisfy
// A_N != 0 with A*_xi = 0, so it fails the screen-conformal relation.
inline Immersion r42_profile_fixed() {
    const std::string t = "(x1 - x2)";
    const std::string g =
        "0.05*" + t + " + 0.03*" + t + "^2 - 0.04*" + t + "^3 + 0.05*sin" + t;
    return Immersion::graph(0, 1, gexpr("(x1 + x2)/sqrt(2)"), gexpr(g),
                            Box{{-0.4, -0.4}, {0.4, 0.4}});
}

// Random member of the log-profile family: x4 = g(x1 - x2) with g' kept well
// inside the degeneracy bound |g'| < 1/sqrt(2).
inline Immersion r42_profile_random(std::mt19937& rng) {
    std::uniform_real_distribution<double> coef(-0.06, 0.06);
    const double c1 = coef(rng), c2 = coef(rng), c3 = coef(rng), c4 = coef(rng), c5 = coef(rng);
    const std::string t = "(x1 - x2)";
    const std::string g = num(c1) + "*" + t + " + " + num(c2) + "*" + t + "^2 + " + num(c3) +
                          "*" + t + "^3 + " + num(c4) + "*sin" + t + " + " + num(c5) + "*cos" +
                          t;
    return Immersion::graph(0, 1, gexpr("(x1 + x2)/sqrt(2)"), gexpr(g),
                            Box{{-0.4, -0.4}, {0.4, 0.4}});
}

// Random tube with radius and phase drawn away from degенerate choices.
inline Immersion r42_tube_random(std::mt19937& rng) {
    std::uniform_real_distribution<double> rad(0.9, 2.0);
    std::uniform_real_distribution<double> ph(-1.0, 1.0);
    return r42_tube(rad(rng), ph(rng));
}

} // namespace fixtures
