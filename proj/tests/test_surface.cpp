#include <doctest.h>

#include <cmath>
#include <random>

#include "lightlike/surface.hpp"
#include "support.hpp"

using namespace lightlike;

TEST_CASE("log fixture tangents at the origin") {
    const Immersion m = fixtures::r42_log();
    const ImmersionJet jet = immersion_jet(m, {0.0, 0.0});
    const Vec4d t1 = jet.tangent(0);
    const Vec4d t2 = jet.tangent(1);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(t1[0] == doctest::Approx(1.0));
    CHECK(t1[1] == doctest::Approx(0.0));
    CHECK(t1[2] == doctest::Approx(s));
    CHECK(t1[3] == doctest::Approx(0.0));
    CHECK(t2[0] == doctest::Approx(0.0));
    CHECK(t2[1] == doctest::Approx(1.0));
    CHECK(t2[2] == doctest::Approx(s));
    CHECK(t2[3] == doctest::Approx(0.0));
}

TEST_CASE("circle fixture carries the constant null tangent") {
    const Immersion m = fixtures::r41_circle();
    const ImmersionJet jet = immersion_jet(m, {0.1, 0.5});
    const Vec4d t1 = jet.tangent(0);
    CHECK(t1[0] == doctest::Approx(1.0));
    CHECK(t1[1] == doctest::Approx(0.0));
    CHECK(t1[2] == doctest::Approx(1.0));
    CHECK(t1[3] == doctest::Approx(0.0));
    const Vec4d t2 = jet.tangent(1);
    const double x2 = std::sqrt(1.0 - 0.25);
    CHECK(t2[1] == doctest::Approx(-0.5 / x2));
    CHECK(t2[3] == doctest::Approx(1.0));
}

TEST_CASE("affine immersions have vanishing higher jets") {
    const std::vector<std::string> vocab{"u1", "u2"};
    const Immersion m = Immersion::parametric(
        {Expr::parse("1 + 2*u1", vocab), Expr::parse("u2 - u1", vocab),
         Expr::parse("3*u2", vocab), Expr::parse("0.5", vocab)},
        Box{{-1, -1}, {1, 1}});
    const ImmersionJet jet = immersion_jet(m, {0.2, -0.3});
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; i + j <= 3; ++j)
                if (i + j >= 2) CHECK(jet.x[k].d(i, j) == 0.0);
}

TEST_CASE("graph form places dependent coordinates by slot order") {
    // free x2 and x4: x1 and x3 are the dependents, in increasing index order
    const std::vector<std::string> vocab{"x2", "x4"};
    const Immersion m =
        Immersion::graph(1, 3, Expr::parse("x2 + x4", vocab), Expr::parse("x2 - x4", vocab),
                         Box{{-1, -1}, {1, 1}});
    CHECK(m.param_names()[0] == "x2");
    CHECK(m.param_names()[1] == "x4");
    const Vec4d x = m.eval<double>(0.3, 0.1);
    CHECK(x[0] == doctest::Approx(0.4)); // x1 = x2 + x4
    CHECK(x[1] == doctest::Approx(0.3));
    CHECK(x[2] == doctest::Approx(0.2)); // x3 = x2 - x4
    CHECK(x[3] == doctest::Approx(0.1));
}

TEST_CASE("rank deficiency raises the immersion error") {
    const std::vector<std::string> vocab{"u1", "u2"};
    const Immersion m = Immersion::parametric(
        {Expr::parse("u1", vocab), Expr::parse("u1", vocab), Expr::parse("2*u1", vocab),
         Expr::parse("u1*u1", vocab)},
        Box{{-1, -1}, {1, 1}});
    CHECK_THROWS_AS(immersion_jet(m, {0.3, 0.1}), NotImmersionError);
}

TEST_CASE("points outside the domain box are rejected") {
    const Immersion m = fixtures::r42_log();
    CHECK_THROWS_AS(immersion_jet(m, {2.0, 0.0}), EvalError);
}

TEST_CASE("finite-difference backend reproduces the jet backend") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> pt(-0.35, 0.35);
    for (const Immersion& m :
         {fixtures::r42_log(), fixtures::r42_tube(1.3, 0.4), fixtures::r41_circle()}) {
        for (int trial = 0; trial < 3; ++trial) {
            std::array<double, 2> p{pt(rng), pt(rng)};
            if (m.param_names()[1] == "x4") p[1] = 0.5 + 0.3 * pt(rng); // stay on the patch
            const ImmersionJet a = immersion_jet(m, p);
            const ImmersionJet b = immersion_jet_fd(m, p);
            for (int k = 0; k < 4; ++k)
                for (int i = 0; i <= 3; ++i)
                    for (int j = 0; i + j <= 3; ++j)
                        CHECK(b.x[k].d(i, j) ==
                              doctest::Approx(a.x[k].d(i, j)).epsilon(1e-6).scale(1.0));
        }
    }
}
