#include "lightlike/classify.hpp"

#include <cmath>

namespace lightlike {

std::vector<std::array<double, 2>> grid_points(const Box& box, const GridSpec& grid) {
    std::vector<std::array<double, 2>> pts;
    auto line = [](double lo, double hi, int n, int k) {
        if (n <= 1) return 0.5 * (lo + hi);
        if (k == n - 1) return hi; // avoid rounding past the box edge
        return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    };
    for (int i = 0; i < grid.n1; ++i)
        for (int j = 0; j < grid.n2; ++j)
            pts.push_back({line(box.lo[0], box.hi[0], grid.n1, i),
                           line(box.lo[1], box.hi[1], grid.n2, j)});
    return pts;
}

namespace {

double form_norm(const double m[2][2]) {
    return std::max({std::abs(m[0][0]), std::abs(m[0][1]), std::abs(m[1][0]), std::abs(m[1][1])});
}

} // namespace

PredicateResult totally_geodesic(const Immersion& m, const Metric4& g,
                                 const std::vector<std::array<double, 2>>& pts,
                                 const GeometryOptions& geo, double tol) {
    PredicateResult out;
    for (const auto& p : pts) {
        const auto pk = induced_package(point_geometry(m, g, p, geo));
        out.max_residual = std::max(out.max_residual, form_norm(pk.D1) + form_norm(pk.D2));
    }
    out.verdict = out.max_residual < tol;
    return out;
}

UmbilicalResult totally_umbilical(const Immersion& m, const Metric4& g,
                                  const std::vector<std::array<double, 2>>& pts,
                                  const GeometryOptions& geo, double tol) {
    UmbilicalResult out;
    for (const auto& p : pts) {
        const auto pk = induced_package(point_geometry(m, g, p, geo));
        // least squares of h = Z' g over the slots (xi,xi), (xi,v), (v,v);
        // g vanishes on the first two, so those slots are pure residual.
        const double lambda = pk.eps_v * pk.D1[1][1];
        const double mu = pk.eps_v * pk.D2[1][1];
        const double scale = std::max({1.0, form_norm(pk.D1), form_norm(pk.D2)});
        const double res = (std::abs(pk.D1[0][0]) + std::abs(pk.D2[0][0]) +
                            std::abs(pk.D1[0][1]) + std::abs(pk.D2[0][1])) /
                           scale;
        out.factors.push_back({lambda, mu});
        out.max_residual = std::max(out.max_residual, res);
    }
    out.verdict = out.max_residual < tol;
    return out;
}

PredicateResult minimal(const Immersion& m, const Metric4& g,
                        const std::vector<std::array<double, 2>>& pts,
                        const GeometryOptions& geo, double tol) {
    PredicateResult out;
    for (const auto& p : pts) {
        const auto pk = induced_package(point_geometry(m, g, p, geo));
        const double trace_part = std::abs(pk.D1[1][1]) + std::abs(pk.D2[1][1]);
        const double eps1_part = std::max(std::abs(pk.eps1[0]), std::abs(pk.eps1[1]));
        out.max_residual = std::max(out.max_residual, trace_part + eps1_part);
    }
    out.verdict = out.max_residual < tol;
    return out;
}

PredicateResult irrotational(const Immersion& m, const Metric4& g,
                             const std::vector<std::array<double, 2>>& pts,
                             const GeometryOptions& geo, double tol) {
    PredicateResult out;
    for (const auto& p : pts) {
        const auto pk = induced_package(point_geometry(m, g, p, geo));
        const double res = std::max({std::abs(pk.D2[0][0]), std::abs(pk.D2[1][0]),
                                     std::abs(pk.eps1[0]), std::abs(pk.eps1[1])});
        out.max_residual = std::max(out.max_residual, res);
    }
    out.verdict = out.max_residual < tol;
    return out;
}

ConformalResult screen_conformal(const Immersion& m, const Metric4& g,
                                 const std::vector<std::array<double, 2>>& pts,
                                 const GeometryOptions& geo, double tol) {
    ConformalResult out;
    bool any_fail = false;
    bool any_determinate = false;
    for (const auto& p : pts) {
        const auto pk = induced_package(point_geometry(m, g, p, geo));
        const double an_norm = std::max(form_norm(pk.A_N),
                                        std::max(std::abs(pk.A_N_xi_row[0]), std::abs(pk.A_N_xi_row[1])));
        const double ax_norm = form_norm(pk.A_xi);
        const double denom = pk.eps_v * pk.A_xi[1][1]; // <A*_xi v, v>
        if (std::abs(denom) > tol) {
            any_determinate = true;
            const double phi = (pk.eps_v * pk.A_N[1][1]) / denom;
            double res = 0.0;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    res = std::max(res, std::abs(pk.A_N[i][j] - phi * pk.A_xi[i][j]));
            res /= std::max(1.0, std::abs(phi) * ax_norm + an_norm);
            out.phi.push_back(phi);
            out.max_residual = std::max(out.max_residual, res);
            if (res >= tol) any_fail = true;
        } else if (an_norm < tol && ax_norm < tol) {
            out.phi.push_back(std::nullopt); // any factor works
            out.max_residual = std::max(out.max_residual, std::max(an_norm, ax_norm));
        } else {
            out.phi.push_back(std::nullopt);
            out.max_residual = std::max(out.max_residual, an_norm);
            any_fail = true; // A*_xi vanishes but A_N does not
        }
    }
    out.state = any_fail              ? ConformalState::False
                : any_determinate     ? ConformalState::True
                                      : ConformalState::IndeterminateTrue;
    return out;
}

double null_sectional_curvature(const InducedPackage& pk) {
    return pk.eps * (pk.D2[1][0] * pk.D2[0][1] - pk.D2[0][0] * pk.D2[1][1]);
}

double gauss_identity_residual(const Immersion& m, const Metric4& g, std::array<double, 2> p,
                               const GeometryOptions& geo, double conformal_tol) {
    const auto pk = induced_package(point_geometry(m, g, p, geo));
    const double denom = pk.eps_v * pk.A_xi[1][1];
    const double an_norm = form_norm(pk.A_N);
    const double ax_norm = form_norm(pk.A_xi);
    double phi = 0.0;
    if (std::abs(denom) > conformal_tol) {
        phi = (pk.eps_v * pk.A_N[1][1]) / denom;
        double res = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                res = std::max(res, std::abs(pk.A_N[i][j] - phi * pk.A_xi[i][j]));
        if (res >= conformal_tol * std::max(1.0, an_norm + ax_norm))
            throw HypothesisError("point is not screen conformal");
    } else if (!(an_norm < conformal_tol && ax_norm < conformal_tol)) {
        throw HypothesisError("point is not screen conformal");
    }

    // flat ambient: the curvature pairing reduces to the form brackets
    double worst = 0.0;
    const double scale = 1.0 + std::max(form_norm(pk.D1), form_norm(pk.D2));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) {
                const int w = 1; // PW ranges over the screen only
                const double bracket1 =
                    pk.D1[x][z] * pk.D1[y][w] - pk.D1[y][z] * pk.D1[x][w];
                const double bracket2 =
                    pk.D2[x][z] * pk.D2[y][w] - pk.D2[y][z] * pk.D2[x][w];
                worst = std::max(worst, std::abs(phi * bracket1 + pk.eps * bracket2));
            }
    return worst / (scale * scale);
}

} // namespace lightlike
