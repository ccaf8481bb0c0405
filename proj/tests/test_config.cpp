#include <doctest.h>

#include <string>

#include "lightlike/config.hpp"

using namespace lightlike;

namespace {

const std::string kMinimal = R"cfg(
schema = 1
[ambient]
signature = -1 -1 1 1
[surface]
form = graph
free = x1 x2
x3 = "(x1 + x2)/sqrt(2)"
x4 = "(1/2)*log(1 + (x1 - x2)^2)"
[domain]
u1 = -0.8 0.8
u2 = -0.8 0.8
)cfg";

} // namespace

TEST_CASE("minimal config applies defaults") {
    const SurfaceConfig cfg = parse_config(kMinimal, "inline");
    CHECK(cfg.schema == 1);
    CHECK(cfg.metric.index() == 2);
    CHECK(cfg.grid.n1 == 5);
    CHECK(cfg.grid.n2 == 5);
    CHECK(cfg.backend == BackendChoice::Both);
    CHECK(cfg.tol_jet == 1e-8);
    CHECK(cfg.tol_fd == 1e-4);
    CHECK(cfg.checks.frame);
    CHECK(cfg.checks.classify);
    CHECK(cfg.immersion.is_graph());
    CHECK(cfg.immersion.param_names()[0] == "x1");
    const Vec4d x = cfg.immersion.eval<double>(0.0, 0.0);
    CHECK(x[0] == 0.0);
    CHECK(x[2] == 0.0);
}

TEST_CASE("sections and overrides parse") {
    const std::string text = kMinimal + R"cfg(
[grid]
n1 = 3
n2 = 4
[pins]
xi = "1" "1" "sqrt(2)" "0"
[checks]
run = frame sections
backend = jet
tol_jet = 1e-9
tol_fd = 1e-3
)cfg";
    const SurfaceConfig cfg = parse_config(text, "inline");
    CHECK(cfg.grid.n1 == 3);
    CHECK(cfg.grid.n2 == 4);
    CHECK(cfg.backend == BackendChoice::Jet);
    CHECK(cfg.tol_jet == 1e-9);
    CHECK(cfg.checks.frame);
    CHECK(cfg.checks.sections);
    CHECK_FALSE(cfg.checks.forms);
    CHECK_FALSE(cfg.checks.classify);
    CHECK(cfg.immersion.pins.xi.has_value());
    CHECK_FALSE(cfg.immersion.pins.v.has_value());
}

TEST_CASE("config validation errors") {
    CHECK_THROWS_AS(parse_config("", "empty"), ConfigError);
    CHECK_THROWS_AS(parse_config("# only a comment\n", "empty"), ConfigError);
    CHECK_THROWS_AS(parse_config("schema = 2\n", "inline"), ConfigError);

    SUBCASE("bad signature") {
        std::string t = kMinimal;
        t.replace(t.find("-1 -1 1 1"), 9, "-1 -1 2 1");
        CHECK_THROWS_AS(parse_config(t, "inline"), ConfigError);
    }
    SUBCASE("metric index out of range") {
        std::string t = kMinimal;
        t.replace(t.find("-1 -1 1 1"), 9, "1 1 1 1 ");
        CHECK_THROWS_AS(parse_config(t, "inline"), ConfigError);
    }
    SUBCASE("expression error names the line") {
        std::string t = kMinimal;
        t.replace(t.find("\"(x1 + x2)/sqrt(2)\""), 19, "\"(x1 + x2\"         ");
        try {
            parse_config(t, "inline");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("line") != std::string::npos);
            CHECK(std::string(e.what()).find("x3") != std::string::npos);
        }
    }
    SUBCASE("degenerate domain") {
        std::string t = kMinimal;
        t.replace(t.find("u1 = -0.8 0.8"), 13, "u1 = 0.8 -0.8");
        CHECK_THROWS_AS(parse_config(t, "inline"), ConfigError);
    }
    SUBCASE("unknown check name") {
        const std::string t = kMinimal + "[checks]\nrun = frame spectral\n";
        CHECK_THROWS_AS(parse_config(t, "inline"), ConfigError);
    }
    SUBCASE("non-positive tolerance") {
        const std::string t = kMinimal + "[checks]\ntol_jet = 0\n";
        CHECK_THROWS_AS(parse_config(t, "inline"), ConfigError);
    }
    SUBCASE("empty grid") {
        const std::string t = kMinimal + "[grid]\nn1 = 0\n";
        CHECK_THROWS_AS(parse_config(t, "inline"), ConfigError);
    }
}

TEST_CASE("shipped fixture files load") {
    const std::string dir = LLGEOM_FIXTURES;
    for (const char* name :
         {"r42_log.cfg", "r42_log_screen.cfg", "r41_circle.cfg", "r42_tube.cfg",
          "r42_profile.cfg", "r42_log_perturbed.cfg", "null_plane.cfg"}) {
        const SurfaceConfig cfg = load_config(dir + "/" + name);
        CHECK(cfg.schema == 1);
        CHECK(cfg.name == name);
    }
    const SurfaceConfig log = load_config(dir + "/r42_log.cfg");
    CHECK(log.immersion.pins.xi.has_value());
    CHECK(log.immersion.pins.v.has_value());
    CHECK(log.immersion.pins.u.has_value());
    const SurfaceConfig line = load_config(dir + "/r42_log_perturbed.cfg");
    CHECK(line.grid.n1 == 1);
    CHECK_THROWS_AS(load_config(dir + "/missing.cfg"), ConfigError);
}
