#pragma once

#include <string>

#include "lightlike/classify.hpp"
#include "lightlike/surface.hpp"

namespace lightlike {

enum class BackendChoice { Jet, Fd, Both };

inline const char* to_string(BackendChoice b) {
    switch (b) {
        case BackendChoice::Jet: return "jet";
        case BackendChoice::Fd: return "fd";
        case BackendChoice::Both: return "both";
    }
    return "?";
}

struct CheckSet {
    bool frame = true;
    bool forms = true;
    bool sections = true;
    bool classify = true;
};

struct SurfaceConfig {
    int schema = 1;
    std::string name;
    Metric4 metric;
    Immersion immersion = Immersion::graph(0, 1, Expr::constant(0), Expr::constant(0), Box{});
    GridSpec grid;
    CheckSet checks;
    BackendChoice backend = BackendChoice::Both;
    double tol_jet = 1e-8;
    double tol_fd = 1e-4;
};

// Flat key-value file with [section] headers; expression values quoted.
SurfaceConfig load_config(const std::string& path);
SurfaceConfig parse_config(const std::string& text, const std::string& origin);

} // namespace lightlike
