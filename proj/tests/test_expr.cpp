#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lightlike/expr.hpp"
#include "support.hpp"

using namespace lightlike;

namespace {
const std::vector<std::string> kVocab{"x1", "x2"};
}

TEST_CASE("parser handles the fixture coordinate expressions") {
    const Expr e = Expr::parse("(x1 + x2)/sqrt(2)", kVocab);
    const std::array<double, 2> p{0.3, 0.5};
    CHECK(e.eval<double>(p) == doctest::Approx(0.8 / std::sqrt(2.0)));
}

TEST_CASE("multiplication binds tighter than addition") {
    const Expr e = Expr::parse("x1 + x2 * x2", kVocab);
    const std::array<double, 2> p{1.0, 3.0};
    CHECK(e.eval<double>(p) == doctest::Approx(10.0));
}

TEST_CASE("power binds tighter than unary minus and associates left") {
    const std::array<double, 2> p{2.0, 0.0};
    CHECK(Expr::parse("-x1^2", kVocab).eval<double>(p) == doctest::Approx(-4.0));
    CHECK(Expr::parse("2^3^2", kVocab).eval<double>(p) == doctest::Approx(64.0));
    CHECK(Expr::parse("2^(-2)", kVocab).eval<double>(p) == doctest::Approx(0.25));
}

TEST_CASE("syntax errors carry a position") {
    CHECK_THROWS_AS(Expr::parse("log(1 + (x1-x2)^2", kVocab), ParseError);
    CHECK_THROWS_AS(Expr::parse("x1 + ", kVocab), ParseError);
    CHECK_THROWS_AS(Expr::parse("x1 + y3", kVocab), ParseError);
    CHECK_THROWS_AS(Expr::parse("(x1))", kVocab), ParseError);
    try {
        Expr::parse("x1 + y3", kVocab);
    } catch (const ParseError& e) {
        CHECK(e.pos == 5);
        CHECK(std::string(e.what()).find("y3") != std::string::npos);
    }
}

TEST_CASE("print then parse is idempotent") {
    const std::vector<std::string> cases{
        "(x1 + x2)/sqrt(2)",
        "(1/2)*log(1 + (x1 - x2)^2)",
        "-sqrt(2)*(x1 - x2)",
        "x1 - (x2 - 1) - 2",
        "x1/(x2*x2 + 1)/2",
        "2^x1^2",
        "-(x1 + x2)^3",
        "cos((x1 + x2)/sqrt(2))*sin(x2)",
    };
    for (const auto& text : cases) {
        const Expr e1 = Expr::parse(text, kVocab);
        const std::string printed = e1.str(kVocab);
        const Expr e2 = Expr::parse(printed, kVocab);
        CHECK_MESSAGE(e1.same_tree(e2), text, " -> ", printed);
        CHECK(printed == e2.str(kVocab));
    }
}

TEST_CASE("evaluation guards domains at evaluation time") {
    const std::array<double, 2> bad{-2.0, 0.0};
    const Expr lg = Expr::parse("log(x1)", kVocab);
    CHECK_THROWS_AS(lg.eval<double>(bad), EvalError);
    const Expr sq = Expr::parse("sqrt(x1)", kVocab);
    CHECK_THROWS_AS(sq.eval<double>(bad), EvalError);
    const Expr dv = Expr::parse("1/(x1 + 2)", kVocab);
    CHECK_THROWS_AS(dv.eval<double>(bad), EvalError);
    const std::array<double, 2> ok{1.0, 0.0};
    CHECK(dv.eval<double>(ok) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("jet evaluation of expressions matches the oracle") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> pt(-0.4, 0.4);
    const std::vector<std::string> exprs{
        "(1/2)*log(1 + (x1 - x2)^2)",
        "cos((x1 + x2)/sqrt(2))",
        "exp(0.2*x1 - 0.3*x2)*sin(x1 + x2)",
        "sqrt(2 + x1*x2)/(2 + cos(x1))",
        "(x1 + x2)^3 - 2*(x1 - x2)^2 + x2",
    };
    for (const auto& text : exprs) {
        const Expr e = Expr::parse(text, kVocab);
        auto f = [&](double a, double b) {
            const std::array<double, 2> q{a, b};
            return e.eval<double>(q);
        };
        for (int trial = 0; trial < 5; ++trial) {
            const double x = pt(rng), y = pt(rng);
            const std::array<Jet, 2> seed{Jet::variable(x, 0), Jet::variable(y, 1)};
            const Jet j = e.eval<Jet>(seed);
            for (int a = 0; a <= 3; ++a)
                for (int b = 0; a + b <= 3; ++b) {
                    const double ref = oracle::partial(f, x, y, a, b);
                    CHECK_MESSAGE(j.d(a, b) == doctest::Approx(ref).epsilon(1e-6),
                                  text, " d(", a, ",", b, ") at (", x, ",", y, ")");
                }
        }
    }
}

TEST_CASE("constant expression gives a constant jet") {
    const Expr e = Expr::parse("3/4 + sqrt(2)", kVocab);
    const std::array<Jet, 2> seed{Jet::variable(0.1, 0), Jet::variable(0.2, 1)};
    const Jet j = e.eval<Jet>(seed);
    CHECK(j.value() == doctest::Approx(0.75 + std::sqrt(2.0)));
    CHECK(j.is_constant());
}
