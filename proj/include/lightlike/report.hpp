#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lightlike/config.hpp"
#include "lightlike/trace.hpp"

namespace lightlike {

struct RunOptions {
    std::optional<std::array<double, 2>> single_point;
    std::optional<SectionKind> trace;
    std::optional<BackendChoice> backend_override;
    std::optional<double> tol_override; // overrides tol_jet
};

struct CheckOutcome {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::string json;
    std::string text;
    std::vector<CheckOutcome> checks;
    bool all_pass = false;
    int exit_code = 1; // 0 pass, 2 check failure, 1 usage/domain error
};

Report run(const SurfaceConfig& cfg, const RunOptions& opt = {});

} // namespace lightlike
