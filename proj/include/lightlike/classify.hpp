#pragma once

#include <optional>
#include <vector>

#include "lightlike/forms.hpp"

namespace lightlike {

struct GridSpec {
    int n1 = 5, n2 = 5;
};

std::vector<std::array<double, 2>> grid_points(const Box& box, const GridSpec& grid);

// Region-level predicates: a verdict is the max residual over the sample set
// against a tolerance, so loosening the tolerance never flips pass to fail.
struct PredicateResult {
    bool verdict = false;
    double max_residual = 0.0;
};

struct UmbilicalResult {
    bool verdict = false;
    double max_residual = 0.0;
    // fitted normal curvature vector Z' = lambda N + mu u per sample point
    std::vector<std::array<double, 2>> factors;
};

enum class ConformalState { False, True, IndeterminateTrue };

inline const char* to_string(ConformalState s) {
    switch (s) {
        case ConformalState::False: return "false";
        case ConformalState::True: return "true";
        case ConformalState::IndeterminateTrue: return "indeterminate_true";
    }
    return "?";
}

struct ConformalResult {
    ConformalState state = ConformalState::False;
    double max_residual = 0.0;
    std::vector<std::optional<double>> phi; // fitted factor where determinate
};

PredicateResult totally_geodesic(const Immersion& m, const Metric4& g,
                                 const std::vector<std::array<double, 2>>& pts,
                                 const GeometryOptions& geo, double tol);

UmbilicalResult totally_umbilical(const Immersion& m, const Metric4& g,
                                  const std::vector<std::array<double, 2>>& pts,
                                  const GeometryOptions& geo, double tol);

PredicateResult minimal(const Immersion& m, const Metric4& g,
                        const std::vector<std::array<double, 2>>& pts,
                        const GeometryOptions& geo, double tol);

PredicateResult irrotational(const Immersion& m, const Metric4& g,
                             const std::vector<std::array<double, 2>>& pts,
                             const GeometryOptions& geo, double tol);

ConformalResult screen_conformal(const Immersion& m, const Metric4& g,
                                 const std::vector<std::array<double, 2>>& pts,
                                 const GeometryOptions& geo, double tol);

// eps [ D2(v,xi) D2(xi,v) - D2(xi,xi) D2(v,v) ], the curvature of the null
// plane directed by xi.
double null_sectional_curvature(const InducedPackage& pk);

// Flat-ambient residual of the curvature pairing for screen-conformal points;
// throws HypothesisError where the conformal relation fails.
double gauss_identity_residual(const Immersion& m, const Metric4& g, std::array<double, 2> p,
                               const GeometryOptions& geo, double conformal_tol);

} // namespace lightlike
