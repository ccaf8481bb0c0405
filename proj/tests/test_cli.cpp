#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "lightlike/report.hpp"

using namespace lightlike;

namespace {

const std::string kBin = LLGEOM_BIN;
const std::string kFixtures = LLGEOM_FIXTURES;

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string out_path = "/tmp/llgeom_cli_out.txt";
    const std::string cmd = kBin + " " + args + " > " + out_path + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream buf;
    buf << in.rdbuf();
    return {WEXITSTATUS(status), buf.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("full run on the pinned log fixture passes") {
    const CliResult r = run_cli("check " + kFixtures + "/r42_log.cfg");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("overall: pass") != std::string::npos);
    CHECK(r.output.find("planarity_degenerate") != std::string::npos);
    CHECK(r.output.find("FAIL") == std::string::npos);
}

TEST_CASE("full run on the circle fixture passes") {
    const CliResult r = run_cli("check " + kFixtures + "/r41_circle.cfg");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("overall: pass") != std::string::npos);
}

TEST_CASE("non-planar counterexample exits with the planarity checks named") {
    const CliResult r = run_cli("check " + kFixtures + "/r42_tube.cfg");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("FAIL  planarity_degenerate") != std::string::npos);
    CHECK(r.output.find("FAIL  planarity_nondegenerate") != std::string::npos);
    // the structure checks still hold on the counterexample
    CHECK(r.output.find("PASS  frame_invariants") != std::string::npos);
    CHECK(r.output.find("PASS  structural_identities") != std::string::npos);
    CHECK(r.output.find("PASS  criterion_equivalence") != std::string::npos);
}

TEST_CASE("usage and domain errors exit with code 1") {
    CHECK(run_cli("check /nonexistent.cfg").exit_code == 1);
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("check " + kFixtures + "/r42_log.cfg --backend maybe").exit_code == 1);
    CHECK(run_cli("check " + kFixtures + "/r42_log.cfg --point nope").exit_code == 1);
    SUBCASE("a surface with no half-lightlike points") {
        const std::string path = "/tmp/llgeom_nondeg.cfg";
        std::ofstream out(path);
        out << "schema = 1\n[ambient]\nsignature = -1 -1 1 1\n[surface]\nform = graph\n"
               "free = x1 x2\nx3 = \"0\"\nx4 = \"0\"\n[domain]\nu1 = -1 1\nu2 = -1 1\n";
        out.close();
        const CliResult r = run_cli("check " + path);
        CHECK(r.exit_code == 1);
        CHECK(r.output.find("every sample point failed") != std::string::npos);
    }
}

TEST_CASE("isolated point failures are recorded without aborting the run") {
    // widen the perturbed fixture's grid: off-line columns are not
    // half-lightlike and must be reported per point, not kill the run
    const std::string path = "/tmp/llgeom_partial.cfg";
    std::ofstream out(path);
    out << "schema = 1\n[ambient]\nsignature = -1 -1 1 1\n[surface]\nform = graph\n"
           "free = x1 x2\nx3 = \"(x1 + x2)/sqrt(2)\"\n"
           "x4 = \"(1/2)*log(1 + (x1 - x2)^2) + 0.1*x1^3\"\n"
           "[domain]\nu1 = -0.8 0.8\nu2 = -0.8 0.8\n[grid]\nn1 = 3\nn2 = 3\n";
    out.close();
    const CliResult r = run_cli("check " + path);
    CHECK(r.exit_code == 0); // the on-line column passes every check
    CHECK(r.output.find("3/9 points") != std::string::npos);
    CHECK(r.output.find("error: ") != std::string::npos);
    CHECK(r.output.find("overall: pass") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
    const std::string rep1 = "/tmp/llgeom_rep1.json";
    const std::string rep2 = "/tmp/llgeom_rep2.json";
    const CliResult r1 =
        run_cli("check " + kFixtures + "/r42_log.cfg --report " + rep1);
    const CliResult r2 =
        run_cli("check " + kFixtures + "/r42_log.cfg --report " + rep2);
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    const std::string a = slurp(rep1);
    const std::string b = slurp(rep2);
    CHECK(!a.empty());
    CHECK(a == b);
    CHECK(r1.output == r2.output);
    CHECK(a.find("\"schema\": 1") != std::string::npos);
    CHECK(a.find("\"overall\": \"pass\"") != std::string::npos);
}

TEST_CASE("single-point deep dive and backend selection") {
    const CliResult r = run_cli("check " + kFixtures + "/r42_log.cfg --point 0.1,0.1 --backend jet");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("1/1 points") != std::string::npos);
}

TEST_CASE("trace emission") {
    const std::string rep = "/tmp/llgeom_trace.json";
    const CliResult r =
        run_cli("check " + kFixtures + "/r41_circle.cfg --trace v --report " + rep);
    CHECK(r.exit_code == 0);
    const std::string doc = slurp(rep);
    CHECK(doc.find("\"trace_v\"") != std::string::npos);
    CHECK(doc.find("\"samples\"") != std::string::npos);
}

TEST_CASE("run() is usable in-process") {
    const SurfaceConfig cfg = load_config(kFixtures + "/null_plane.cfg");
    const Report rep = run(cfg);
    CHECK(rep.exit_code == 0);
    CHECK(rep.all_pass);
    bool saw_frame = false;
    for (const auto& c : rep.checks) saw_frame |= c.name == "frame_invariants";
    CHECK(saw_frame);
    CHECK(rep.json.find("\"classification\"") != std::string::npos);
}
