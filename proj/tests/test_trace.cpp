#include <doctest.h>

#include <cmath>

#include "lightlike/trace.hpp"
#include "support.hpp"

using namespace lightlike;

namespace {

std::array<double, 2> transversal_parts(const PointGeometry& ctx, const Vec4d& w) {
    return {ctx.fr.eps * inner(ctx.g, w, values_of(ctx.fr.u)),
            inner(ctx.g, w, values_of(ctx.fr.xi))};
}

} // namespace

TEST_CASE("degenerate trace of the log fixture is a straight line") {
    const Metric4 g = Metric4::r42();
    const Immersion m = fixtures::r42_log();
    const TracedCurve tc = trace_curve(m, g, {0.1, -0.2}, SectionKind::Degenerate);
    CHECK(tc.max_constraint_residual < 1e-11);
    // all samples affine: x(s) = x(0) + s * d1
    const Vec4d base = tc.points[tc.points.size() / 2];
    for (std::size_t k = 0; k < tc.points.size(); ++k) {
        const Vec4d expect = base + tc.d1 * tc.s[k];
        CHECK(norm_euclid(tc.points[k] - expect) < 1e-9);
    }
    CHECK(norm_euclid(tc.d2) < 1e-7);
    CHECK(norm_euclid(tc.d3) < 1e-5);
}

TEST_CASE("nondegenerate trace of the circle fixture stays on the circle") {
    const Metric4 g = Metric4::r41();
    const Immersion m = fixtures::r41_circle();
    const TracedCurve tc = trace_curve(m, g, {0.0, 0.5}, SectionKind::NonDegenerate);
    CHECK(tc.max_constraint_residual < 1e-11);
    for (const auto& x : tc.points) {
        CHECK(x[1] * x[1] + x[3] * x[3] == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(x[0] == doctest::Approx(0.0).scale(1.0)); // x1, x3 frozen on this section
        CHECK(x[2] == doctest::Approx(0.0).scale(1.0));
    }
}

TEST_CASE("traced derivatives match the section jets on the reference fixtures") {
    struct Case {
        Immersion m;
        Metric4 g;
        std::array<double, 2> p;
    };
    const Case cases[] = {
        {fixtures::r42_log(), Metric4::r42(), {0.1, -0.2}},
        {fixtures::r42_log(), Metric4::r42(), {0.25, 0.25}},
        {fixtures::r41_circle(), Metric4::r41(), {0.0, 0.5}},
        {fixtures::r41_circle(), Metric4::r41(), {-0.2, 0.4}},
    };
    for (const auto& c : cases) {
        const PointGeometry ctx = point_geometry(c.m, c.g, c.p);
        for (SectionKind kind : {SectionKind::Degenerate, SectionKind::NonDegenerate}) {
            const SectionJet sj = section_jet(ctx, kind);
            const TracedCurve tc = trace_curve(c.m, c.g, c.p, kind);
            const double s1 = std::max(1.0, norm_euclid(sj.d1));
            const double s2 = std::max(1.0, norm_euclid(sj.d2));
            const double s3 = std::max(1.0, norm_euclid(sj.d3));
            CHECK_MESSAGE(norm_euclid(tc.d1 - sj.d1) < 1e-6 * s1, to_string(kind), " d1");
            CHECK_MESSAGE(norm_euclid(tc.d2 - sj.d2) < 1e-5 * s2, to_string(kind), " d2");
            CHECK_MESSAGE(norm_euclid(tc.d3 - sj.d3) < 1e-4 * s3, to_string(kind), " d3");
        }
    }
}

TEST_CASE("section curvature matches the traced curve") {
    const Metric4 g = Metric4::r41();
    const Immersion m = fixtures::r41_circle();
    const std::array<double, 2> p{0.0, 0.5};
    const PointGeometry ctx = point_geometry(m, g, p);
    const SectionJet sj = section_jet(ctx, SectionKind::NonDegenerate);
    const TracedCurve tc = trace_curve(m, g, p, SectionKind::NonDegenerate);
    const double traced_kappa = ctx.fr.eps * inner(g, tc.d2, tc.d2);
    CHECK(traced_kappa == doctest::Approx(sj.kappa_sq).epsilon(1e-5));
    CHECK(sj.kappa_sq == doctest::Approx(1.0));
}

TEST_CASE("curved fixtures agree through the transversal components") {
    // the exact section curve and the frame-field iterates differ by tangent
    // drift; the transversal parts of the second derivative are common
    const Metric4 g = Metric4::r42();
    for (const Immersion& m : {fixtures::r42_tube(1.0, 0.0), fixtures::r42_tube(1.4, 0.6)}) {
        const std::array<double, 2> p{0.05, -0.05};
        const PointGeometry ctx = point_geometry(m, g, p);
        for (SectionKind kind : {SectionKind::Degenerate, SectionKind::NonDegenerate}) {
            const SectionJet sj = section_jet(ctx, kind);
            const TracedCurve tc = trace_curve(m, g, p, kind);
            CHECK(norm_euclid(tc.d1 - sj.d1) < 1e-6 * std::max(1.0, norm_euclid(sj.d1)));
            const auto a = transversal_parts(ctx, sj.d2);
            const auto b = transversal_parts(ctx, tc.d2);
            const double scale = std::max(1.0, norm_euclid(sj.d2));
            CHECK_MESSAGE(std::abs(a[0] - b[0]) < 1e-5 * scale, to_string(kind), " u-part");
            CHECK_MESSAGE(std::abs(a[1] - b[1]) < 1e-5 * scale, to_string(kind), " N-part");
        }
    }
}

TEST_CASE("planarity verdicts agree between jets and traced curves") {
    struct Case {
        Immersion m;
        Metric4 g;
        std::array<double, 2> p;
        SectionKind kind;
        bool planar;
    };
    const Case cases[] = {
        {fixtures::r42_log(), Metric4::r42(), {0.1, -0.2}, SectionKind::Degenerate, true},
        {fixtures::r42_log(), Metric4::r42(), {0.1, -0.2}, SectionKind::NonDegenerate, true},
        {fixtures::r41_circle(), Metric4::r41(), {0.0, 0.5}, SectionKind::NonDegenerate, true},
        {fixtures::r42_tube(1.0, 0.0), Metric4::r42(), {0.0, 0.0}, SectionKind::Degenerate,
         false},
        {fixtures::r42_tube(1.0, 0.0), Metric4::r42(), {0.0, 0.0}, SectionKind::NonDegenerate,
         false},
    };
    for (const auto& c : cases) {
        const PointGeometry ctx = point_geometry(c.m, c.g, c.p);
        const SectionJet sj = section_jet(ctx, c.kind);
        const TracedCurve tc = trace_curve(c.m, c.g, c.p, c.kind);
        // floor at the resolution of finite differences: third-derivative
        // components below ~1e-3 relative are numerically zero
        const double fd_res = relative_wedge_residual(tc.d1, tc.d2, tc.d3, 1.0, 1e-3);
        CHECK((sj.planarity_residual < 1e-8) == c.planar);
        CHECK_MESSAGE((fd_res < 1e-4) == c.planar, "traced residual ", fd_res);
    }
}

TEST_CASE("every section of an affine plane is a straight line") {
    const Metric4 g = Metric4::r42();
    const Immersion m = fixtures::null_plane();
    for (SectionKind kind : {SectionKind::Degenerate, SectionKind::NonDegenerate}) {
        const TracedCurve tc = trace_curve(m, g, {0.2, -0.3}, kind);
        const Vec4d base = tc.points[tc.points.size() / 2];
        for (std::size_t k = 0; k < tc.points.size(); ++k)
            CHECK(norm_euclid(tc.points[k] - (base + tc.d1 * tc.s[k])) < 1e-9);
    }
}

TEST_CASE("trace options and failure modes") {
    const Metric4 g = Metric4::r42();
    const Immersion m = fixtures::r42_log();
    SUBCASE("oversized steps leave the domain") {
        TraceOptions opt;
        opt.step = 0.3;
        opt.steps = 10;
        CHECK_THROWS_AS(trace_curve(m, g, {0.6, 0.6}, SectionKind::Degenerate, {}, opt),
                        StepError);
    }
    SUBCASE("sample counts honour the requested window") {
        TraceOptions opt;
        opt.steps = 4;
        const TracedCurve tc = trace_curve(m, g, {0.0, 0.0}, SectionKind::Degenerate, {}, opt);
        CHECK(tc.points.size() == 9);
        CHECK(tc.params.size() == 9);
        CHECK(tc.s.size() == 9);
        CHECK(tc.s[4] == 0.0);
        CHECK(tc.s[5] > 0.0);
        CHECK(tc.s[3] < 0.0);
    }
}
