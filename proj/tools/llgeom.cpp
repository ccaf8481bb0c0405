// Command-line front end: load a surface definition, run the requested
// checks over its sample grid, and emit the structured report.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lightlike/report.hpp"

namespace {

int run_check(const std::string& config_path, const std::string& backend,
              const std::string& point, double tol, const std::string& report_path,
              const std::string& trace) {
    using namespace lightlike;
    RunOptions opt;
    if (!backend.empty()) {
        if (backend == "jet") opt.backend_override = BackendChoice::Jet;
        else if (backend == "fd") opt.backend_override = BackendChoice::Fd;
        else if (backend == "both") opt.backend_override = BackendChoice::Both;
        else {
            std::cerr << "error: backend must be jet, fd, or both\n";
            return 1;
        }
    }
    if (!point.empty()) {
        const std::size_t comma = point.find(',');
        if (comma == std::string::npos) {
            std::cerr << "error: --point expects u1,u2\n";
            return 1;
        }
        try {
            opt.single_point = {{std::stod(point.substr(0, comma)),
                                 std::stod(point.substr(comma + 1))}};
        } catch (const std::exception&) {
            std::cerr << "error: --point expects numbers u1,u2\n";
            return 1;
        }
    }
    if (tol > 0.0) opt.tol_override = tol;
    if (!trace.empty()) {
        std::string dir = trace;
        if (dir.rfind("w=", 0) == 0) dir = dir.substr(2);
        if (dir == "xi") opt.trace = SectionKind::Degenerate;
        else if (dir == "v") opt.trace = SectionKind::NonDegenerate;
        else {
            std::cerr << "error: --trace expects xi or v\n";
            return 1;
        }
    }

    try {
        const SurfaceConfig cfg = load_config(config_path);
        const Report rep = run(cfg, opt);
        std::cout << rep.text;
        if (!report_path.empty()) {
            std::ofstream out(report_path);
            if (!out) {
                std::cerr << "error: cannot write report to " << report_path << "\n";
                return 1;
            }
            out << rep.json << "\n";
        }
        return rep.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"half-lightlike surface geometry checker"};
    app.require_subcommand(1);

    std::string config_path, backend, point, report_path, trace;
    double tol = 0.0;

    CLI::App* check = app.add_subcommand("check", "run all configured checks on a surface");
    check->add_option("config", config_path, "surface definition file")->required();
    check->add_option("--backend", backend, "derivative backend: jet, fd, or both");
    check->add_option("--point", point, "single parameter point u1,u2 instead of the grid");
    check->add_option("--tol", tol, "override the verdict tolerance");
    check->add_option("--report", report_path, "write the structured report to this path");
    check->add_option("--trace", trace, "emit traced section samples: xi or v");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    return run_check(config_path, backend, point, tol, report_path, trace);
}
