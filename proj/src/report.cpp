#include "lightlike/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace lightlike {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Minimal deterministic JSON emitter; keys keep insertion order and numbers
// print with 17 significant digits.
class Json {
  public:
    Json() { out_.reserve(1 << 14); }

    void begin_object(const std::string& key = "") { open(key, '{'); }
    void end_object() { close('}'); }
    void begin_array(const std::string& key = "") { open(key, '['); }
    void end_array() { close(']'); }

    void field(const std::string& key, double v) { scalar(key, fmt(v)); }
    void field(const std::string& key, int v) { scalar(key, std::to_string(v)); }
    void field(const std::string& key, bool v) { scalar(key, v ? "true" : "false"); }
    void field(const std::string& key, const std::string& v) { scalar(key, quote(v)); }
    void field(const std::string& key, const char* v) { scalar(key, quote(v)); }
    void element(double v) { scalar("", fmt(v)); }
    void element(const std::string& v) { scalar("", quote(v)); }

    void vec(const std::string& key, const Vec4d& v) {
        begin_array(key);
        for (int i = 0; i < 4; ++i) element(v[i]);
        end_array();
    }
    void mat2(const std::string& key, const double m[2][2]) {
        begin_array(key);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) element(m[i][j]);
        end_array();
    }
    void pair2(const std::string& key, const double m[2]) {
        begin_array(key);
        element(m[0]);
        element(m[1]);
        end_array();
    }

    std::string str() const { return out_; }

  private:
    static std::string quote(const std::string& s) {
        std::string q = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') q += '\\';
            if (c == '\n') {
                q += "\\n";
                continue;
            }
            q += c;
        }
        return q + "\"";
    }
    void open(const std::string& key, char c) {
        comma();
        if (!key.empty()) out_ += quote(key) + ": ";
        out_ += c;
        first_ = true;
    }
    void close(char c) {
        out_ += c;
        first_ = false;
    }
    void scalar(const std::string& key, const std::string& v) {
        comma();
        if (!key.empty()) out_ += quote(key) + ": ";
        out_ += v;
        first_ = false;
    }
    void comma() {
        if (!first_) out_ += ", ";
        first_ = false;
    }

    std::string out_;
    bool first_ = true;
};

struct PointRecord {
    std::array<double, 2> p{};
    bool ok = false;
    std::string error;
    StructureKind kind = StructureKind::HalfLightlike;
    Frame<Jet> frame;
    double frame_residual = 0.0;
    InducedPackage pk;
    std::vector<NamedResidual> identities;
    SectionJet deg, nondeg;
    double crit_deg = 0.0, crit_nondeg = 0.0;
    double geo_deg = 0.0, geo_nondeg = 0.0;
    double energy_deg = 0.0, energy_nondeg = 0.0;
    double null_curv = 0.0;
    // backend comparison (jet vs fd), when requested
    bool has_fd = false;
    double fd_package_delta = 0.0;
    double fd_frame_residual = 0.0;
};

double package_delta(const InducedPackage& a, const InducedPackage& b) {
    double worst = 0.0;
    auto upd2 = [&worst](const double x[2][2], const double y[2][2]) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                worst = std::max(worst, std::abs(x[i][j] - y[i][j]) /
                                            std::max(1.0, std::abs(x[i][j])));
    };
    auto upd1 = [&worst](const double x[2], const double y[2]) {
        for (int i = 0; i < 2; ++i)
            worst = std::max(worst, std::abs(x[i] - y[i]) / std::max(1.0, std::abs(x[i])));
    };
    upd2(a.D1, b.D1);
    upd2(a.D2, b.D2);
    upd2(a.E1, b.E1);
    upd2(a.A_N, b.A_N);
    upd2(a.A_u, b.A_u);
    upd2(a.A_xi, b.A_xi);
    upd1(a.rho1, b.rho1);
    upd1(a.rho2, b.rho2);
    upd1(a.eps1, b.eps1);
    upd1(a.eps2, b.eps2);
    upd1(a.u1, b.u1);
    upd1(a.eta, b.eta);
    return worst;
}

// a_u = eps g(w,u) and a_N = g(w,xi): the parts of w outside the tangent plane
std::array<double, 2> transversal_components(const PointGeometry& ctx, const Vec4d& w) {
    return {ctx.fr.eps * inner(ctx.g, w, values_of(ctx.fr.u)),
            inner(ctx.g, w, values_of(ctx.fr.xi))};
}

} // namespace

Report run(const SurfaceConfig& cfg, const RunOptions& opt) {
    Report rep;
    const BackendChoice backend = opt.backend_override.value_or(cfg.backend);
    const double tol = opt.tol_override.value_or(
        backend == BackendChoice::Fd ? cfg.tol_fd : cfg.tol_jet);
    const double tol_fd = cfg.tol_fd;

    std::vector<std::array<double, 2>> points;
    if (opt.single_point) {
        points.push_back(*opt.single_point);
    } else {
        points = grid_points(cfg.immersion.domain(), cfg.grid);
    }

    GeometryOptions geo_jet;
    geo_jet.backend = Backend::Jet;
    GeometryOptions geo_fd;
    geo_fd.backend = Backend::Fd;

    std::vector<PointRecord> recs;
    for (const auto& p : points) {
        PointRecord r;
        r.p = p;
        try {
            const GeometryOptions& geo_main =
                backend == BackendChoice::Fd ? geo_fd : geo_jet;
            PointGeometry ctx = point_geometry(cfg.immersion, cfg.metric, p, geo_main);
            r.kind = StructureKind::HalfLightlike;
            r.frame = ctx.fr;
            r.frame_residual = frame_residual(cfg.metric, ctx.fr);
            r.pk = induced_package(ctx);
            r.identities = identity_residuals(ctx, r.pk);
            r.deg = section_jet(ctx, SectionKind::Degenerate);
            r.nondeg = section_jet(ctx, SectionKind::NonDegenerate);
            r.crit_deg = planarity_criterion_residual(ctx, SectionKind::Degenerate);
            r.crit_nondeg = planarity_criterion_residual(ctx, SectionKind::NonDegenerate);
            r.geo_deg = geodesic_criterion_residual(ctx, SectionKind::Degenerate);
            r.geo_nondeg = geodesic_criterion_residual(ctx, SectionKind::NonDegenerate);
            r.energy_deg = section_energy(ctx, SectionKind::Degenerate);
            r.energy_nondeg = section_energy(ctx, SectionKind::NonDegenerate);
            r.null_curv = null_sectional_curvature(r.pk);
            if (backend == BackendChoice::Both) {
                PointGeometry cfd = point_geometry(cfg.immersion, cfg.metric, p, geo_fd);
                r.has_fd = true;
                r.fd_frame_residual = frame_residual(cfg.metric, cfd.fr);
                r.fd_package_delta = package_delta(r.pk, induced_package(cfd));
            }
            r.ok = true;
        } catch (const Error& e) {
            r.error = e.what();
        }
        recs.push_back(std::move(r));
    }

    int n_ok = 0;
    for (const auto& r : recs) n_ok += r.ok;

    auto add_check = [&rep](const std::string& name, bool pass, const std::string& detail) {
        rep.checks.push_back({name, pass, detail});
    };

    if (n_ok == 0) {
        rep.all_pass = false;
        rep.exit_code = 1;
        std::string first = recs.empty() ? "no sample points" : recs.front().error;
        rep.text = "error: every sample point failed: " + first + "\n";
        Json j;
        j.begin_object();
        j.field("schema", 1);
        j.field("error", rep.text);
        j.end_object();
        rep.json = j.str();
        return rep;
    }

    if (cfg.checks.frame) {
        double worst = 0.0;
        for (const auto& r : recs)
            if (r.ok) worst = std::max(worst, r.frame_residual);
        add_check("frame_invariants", worst < tol, "max residual " + fmt(worst));
    }
    if (cfg.checks.forms) {
        double worst = 0.0;
        for (const auto& r : recs)
            if (r.ok) worst = std::max(worst, max_residual(r.identities));
        add_check("structural_identities", worst < tol, "max residual " + fmt(worst));
    }
    if (cfg.checks.sections) {
        double worst_deg = 0.0, worst_nondeg = 0.0;
        bool equiv = true;
        for (const auto& r : recs) {
            if (!r.ok) continue;
            worst_deg = std::max(worst_deg, r.deg.planarity_residual);
            worst_nondeg = std::max(worst_nondeg, r.nondeg.planarity_residual);
            if ((r.crit_deg < tol) != (r.deg.planarity_residual < tol)) equiv = false;
            if ((r.crit_nondeg < tol) != (r.nondeg.planarity_residual < tol)) equiv = false;
            if (r.deg.geodesic_arc &&
                (r.geo_deg < tol) != (r.deg.planarity_residual < tol))
                equiv = false;
            if (r.nondeg.geodesic_arc &&
                (r.geo_nondeg < tol) != (r.nondeg.planarity_residual < tol))
                equiv = false;
        }
        add_check("planarity_degenerate", worst_deg < tol, "max residual " + fmt(worst_deg));
        add_check("planarity_nondegenerate", worst_nondeg < tol,
                  "max residual " + fmt(worst_nondeg));
        add_check("criterion_equivalence", equiv,
                  equiv ? "criteria match planarity verdicts" : "criterion/verdict mismatch");
    }
    if (backend == BackendChoice::Both) {
        double worst = 0.0, worst_frame = 0.0;
        for (const auto& r : recs)
            if (r.ok && r.has_fd) {
                worst = std::max(worst, r.fd_package_delta);
                worst_frame = std::max(worst_frame, r.fd_frame_residual);
            }
        add_check("backend_package_agreement", worst < tol_fd, "max delta " + fmt(worst));
        add_check("backend_frame_invariants", worst_frame < tol_fd,
                  "max residual " + fmt(worst_frame));
    }

    // curve-level oracle at the domain center: first derivative in full,
    // second derivative through its transversal components
    std::optional<TracedCurve> traced_deg, traced_nondeg;
    if (cfg.checks.sections && backend == BackendChoice::Both && !opt.single_point) {
        const std::array<double, 2> center{
            0.5 * (cfg.immersion.domain().lo[0] + cfg.immersion.domain().hi[0]),
            0.5 * (cfg.immersion.domain().lo[1] + cfg.immersion.domain().hi[1])};
        try {
            PointGeometry ctx = point_geometry(cfg.immersion, cfg.metric, center, geo_jet);
            double worst_d1 = 0.0, worst_d2t = 0.0;
            for (SectionKind kind : {SectionKind::Degenerate, SectionKind::NonDegenerate}) {
                const TracedCurve tc = trace_curve(cfg.immersion, cfg.metric, center, kind);
                const SectionJet sj = section_jet(ctx, kind);
                const double scale1 = std::max(1.0, norm_euclid(sj.d1));
                worst_d1 = std::max(worst_d1, norm_euclid(tc.d1 - sj.d1) / scale1);
                const auto tj = transversal_components(ctx, sj.d2);
                const auto tt = transversal_components(ctx, tc.d2);
                const double scale2 = std::max(1.0, norm_euclid(sj.d2));
                worst_d2t = std::max(worst_d2t, std::max(std::abs(tj[0] - tt[0]),
                                                         std::abs(tj[1] - tt[1])) /
                                                    scale2);
                if (kind == SectionKind::Degenerate) traced_deg = tc;
                else traced_nondeg = tc;
            }
            add_check("trace_d1_agreement", worst_d1 < tol_fd, "max delta " + fmt(worst_d1));
            add_check("trace_d2_transversal_agreement", worst_d2t < tol_fd,
                      "max delta " + fmt(worst_d2t));
        } catch (const Error& e) {
            add_check("trace_d1_agreement", false, std::string("trace failed: ") + e.what());
        }
    }

    // region-level classification
    PredicateResult geodesic, minim, irrot;
    UmbilicalResult umb;
    ConformalResult conf;
    bool classify_ok = false;
    if (cfg.checks.classify) {
        std::vector<std::array<double, 2>> ok_pts;
        for (const auto& r : recs)
            if (r.ok) ok_pts.push_back(r.p);
        try {
            geodesic = totally_geodesic(cfg.immersion, cfg.metric, ok_pts, geo_jet, tol);
            umb = totally_umbilical(cfg.immersion, cfg.metric, ok_pts, geo_jet, tol);
            minim = minimal(cfg.immersion, cfg.metric, ok_pts, geo_jet, tol);
            irrot = irrotational(cfg.immersion, cfg.metric, ok_pts, geo_jet, tol);
            conf = screen_conformal(cfg.immersion, cfg.metric, ok_pts, geo_jet, tol);
            classify_ok = true;

            bool implications = true;
            std::string which = "all hold";
            if (geodesic.verdict && !umb.verdict) {
                implications = false;
                which = "geodesic but not umbilical";
            }
            if (geodesic.verdict && !minim.verdict) {
                implications = false;
                which = "geodesic but not minimal";
            }
            if (geodesic.verdict) {
                for (const auto& r : recs)
                    if (r.ok && (std::abs(r.deg.dkappa_sq_ds) >= tol ||
                                 std::abs(r.nondeg.dkappa_sq_ds) >= tol)) {
                        implications = false;
                        which = "geodesic but no vertex";
                    }
            }
            if (minim.verdict && conf.state != ConformalState::False) {
                for (const auto& r : recs)
                    if (r.ok && std::abs(r.null_curv) >= tol) {
                        implications = false;
                        which = "minimal + conformal but null curvature nonzero";
                    }
            }
            add_check("classification_implications", implications, which);
        } catch (const Error& e) {
            add_check("classification_implications", false,
                      std::string("classification failed: ") + e.what());
        }
    }

    std::optional<TracedCurve> trace_dump;
    if (opt.trace) {
        const std::array<double, 2> at =
            opt.single_point.value_or(std::array<double, 2>{
                0.5 * (cfg.immersion.domain().lo[0] + cfg.immersion.domain().hi[0]),
                0.5 * (cfg.immersion.domain().lo[1] + cfg.immersion.domain().hi[1])});
        trace_dump = trace_curve(cfg.immersion, cfg.metric, at, *opt.trace);
    }

    rep.all_pass = true;
    for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
    rep.exit_code = rep.all_pass ? 0 : 2;

    // ---- structured document ----
    Json j;
    j.begin_object();
    j.field("schema", 1);
    j.field("source", cfg.name);
    {
        j.begin_object("ambient");
        j.begin_array("signature");
        for (int s : cfg.metric.signs) j.element(static_cast<double>(s));
        j.end_array();
        j.field("index", cfg.metric.index());
        j.end_object();
    }
    j.field("backend", to_string(backend));
    j.field("tol", tol);
    j.field("tol_fd", tol_fd);

    j.begin_array("points");
    for (const auto& r : recs) {
        j.begin_object();
        j.begin_array("p");
        j.element(r.p[0]);
        j.element(r.p[1]);
        j.end_array();
        if (!r.ok) {
            j.field("error", r.error);
            j.end_object();
            continue;
        }
        j.field("structure", to_string(r.kind));
        {
            j.begin_object("frame");
            j.vec("xi", values_of(r.frame.xi));
            j.vec("v", values_of(r.frame.v));
            j.vec("u", values_of(r.frame.u));
            j.vec("n", values_of(r.frame.n));
            j.field("eps", r.frame.eps);
            j.field("eps_v", r.frame.eps_v);
            j.field("invariant_residual", r.frame_residual);
            j.end_object();
        }
        {
            j.begin_object("package");
            j.mat2("D1", r.pk.D1);
            j.mat2("D2", r.pk.D2);
            j.mat2("E1", r.pk.E1);
            j.mat2("A_N", r.pk.A_N);
            j.mat2("A_u", r.pk.A_u);
            j.mat2("A_xi", r.pk.A_xi);
            j.pair2("rho1", r.pk.rho1);
            j.pair2("rho2", r.pk.rho2);
            j.pair2("eps1", r.pk.eps1);
            j.pair2("eps2", r.pk.eps2);
            j.pair2("u1", r.pk.u1);
            j.pair2("eta", r.pk.eta);
            j.end_object();
        }
        {
            j.begin_array("identities");
            for (const auto& nr : r.identities) {
                j.begin_object();
                j.field("name", nr.name);
                j.field("value", nr.value);
                j.end_object();
            }
            j.end_array();
        }
        auto emit_section = [&](const char* key, const SectionJet& s, double crit, double geo,
                                double energy) {
            j.begin_object(key);
            j.vec("d1", s.d1);
            j.vec("d2", s.d2);
            j.vec("d3", s.d3);
            j.field("kappa_sq", s.kappa_sq);
            j.field("dkappa_sq_ds", s.dkappa_sq_ds);
            j.field("planarity_residual", s.planarity_residual);
            j.field("planar", s.planarity_residual < tol);
            j.field("geodesic_arc", s.geodesic_arc);
            j.field("criterion_residual", crit);
            j.field("geodesic_criterion_residual", geo);
            j.field("energy", energy);
            j.end_object();
        };
        emit_section("degenerate", r.deg, r.crit_deg, r.geo_deg, r.energy_deg);
        emit_section("nondegenerate", r.nondeg, r.crit_nondeg, r.geo_nondeg, r.energy_nondeg);
        j.field("null_sectional_curvature", r.null_curv);
        if (r.has_fd) {
            j.begin_object("backend_delta");
            j.field("package", r.fd_package_delta);
            j.field("frame_residual", r.fd_frame_residual);
            j.end_object();
        }
        j.end_object();
    }
    j.end_array();

    if (classify_ok) {
        j.begin_object("classification");
        auto emit_pred = [&](const char* key, const PredicateResult& pr) {
            j.begin_object(key);
            j.field("verdict", pr.verdict);
            j.field("max_residual", pr.max_residual);
            j.end_object();
        };
        emit_pred("totally_geodesic", geodesic);
        {
            j.begin_object("totally_umbilical");
            j.field("verdict", umb.verdict);
            j.field("max_residual", umb.max_residual);
            j.begin_array("factors");
            for (const auto& f : umb.factors) {
                j.begin_array();
                j.element(f[0]);
                j.element(f[1]);
                j.end_array();
            }
            j.end_array();
            j.end_object();
        }
        emit_pred("minimal", minim);
        emit_pred("irrotational", irrot);
        {
            j.begin_object("screen_conformal");
            j.field("state", to_string(conf.state));
            j.field("max_residual", conf.max_residual);
            j.begin_array("phi");
            for (const auto& f : conf.phi) {
                if (f) j.element(*f);
                else j.element("indeterminate");
            }
            j.end_array();
            j.end_object();
        }
        j.end_object();
    }

    auto emit_trace = [&](const char* key, const TracedCurve& tc) {
        j.begin_object(key);
        j.vec("plane_normal", tc.plane_normal);
        j.field("max_constraint_residual", tc.max_constraint_residual);
        j.vec("d1", tc.d1);
        j.vec("d2", tc.d2);
        j.vec("d3", tc.d3);
        j.begin_array("samples");
        for (std::size_t k = 0; k < tc.points.size(); ++k) {
            j.begin_object();
            j.field("s", tc.s[k]);
            j.begin_array("p");
            j.element(tc.params[k][0]);
            j.element(tc.params[k][1]);
            j.end_array();
            j.vec("x", tc.points[k]);
            j.end_object();
        }
        j.end_array();
        j.end_object();
    };
    if (traced_deg) emit_trace("trace_degenerate", *traced_deg);
    if (traced_nondeg) emit_trace("trace_nondegenerate", *traced_nondeg);
    if (trace_dump)
        emit_trace(opt.trace == SectionKind::Degenerate ? "trace_xi" : "trace_v", *trace_dump);

    j.begin_array("checks");
    for (const auto& c : rep.checks) {
        j.begin_object();
        j.field("name", c.name);
        j.field("pass", c.pass);
        j.field("detail", c.detail);
        j.end_object();
    }
    j.end_array();
    j.field("overall", rep.all_pass ? "pass" : "fail");
    j.end_object();
    rep.json = j.str();

    // ---- plain-text summary ----
    std::ostringstream txt;
    txt << "surface: " << cfg.name << "  (index " << cfg.metric.index() << ", backend "
        << to_string(backend) << ", " << n_ok << "/" << recs.size() << " points)\n";
    for (const auto& r : recs)
        if (!r.ok)
            txt << "  point (" << fmt(r.p[0]) << ", " << fmt(r.p[1]) << ") error: " << r.error
                << "\n";
    for (const auto& c : rep.checks) {
        txt << "  " << (c.pass ? "PASS" : "FAIL") << "  ";
        txt.width(36);
        txt.setf(std::ios::left, std::ios::adjustfield);
        txt << c.name;
        txt.width(0);
        txt << " " << c.detail << "\n";
    }
    txt << "overall: " << (rep.all_pass ? "pass" : "fail") << "\n";
    rep.text = txt.str();
    return rep;
}

} // namespace lightlike
