#include "lightlike/forms.hpp"

#include <cmath>

namespace lightlike {

std::vector<NamedResidual> identity_residuals(const PointGeometry& ctx, const InducedPackage& pk) {
    std::vector<NamedResidual> out;
    auto push = [&](std::string name, double v) { out.push_back({std::move(name), v}); };

    double form_scale = 1.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            form_scale = std::max({form_scale, std::abs(pk.D1[i][j]), std::abs(pk.D2[i][j]),
                                   std::abs(pk.E1[i][j]), std::abs(pk.A_N[i][j]),
                                   std::abs(pk.A_u[i][j]), std::abs(pk.A_xi[i][j])});

    push("D1 radical slot", std::max(std::abs(pk.D1[0][0]), std::abs(pk.D1[1][0])) / form_scale);
    push("D1 symmetry", std::abs(pk.D1[0][1] - pk.D1[1][0]) / form_scale);
    push("D2 symmetry", std::abs(pk.D2[0][1] - pk.D2[1][0]) / form_scale);
    push("A_N screen valued",
         std::max(std::abs(pk.A_N_xi_row[0]), std::abs(pk.A_N_xi_row[1])) / form_scale);

    // g(A_u X, Y) = eps D2(X,Y) + eps1(X) eta(Y)
    double au_worst = 0.0;
    for (int x = 0; x < 2; ++x) {
        const double lhs_xi = 0.0; // g(a xi + b v, xi) = 0
        const double rhs_xi = pk.eps * pk.D2[x][0] + pk.eps1[x] * pk.eta[0];
        au_worst = std::max(au_worst, std::abs(lhs_xi - rhs_xi));
        const double lhs_v = pk.A_u[1][x] * pk.eps_v;
        const double rhs_v = pk.eps * pk.D2[x][1] + pk.eps1[x] * pk.eta[1];
        au_worst = std::max(au_worst, std::abs(lhs_v - rhs_v));
    }
    push("A_u pairing", au_worst / form_scale);

    push("eps1 vs D2", std::max(std::abs(pk.eps1[0] + pk.eps * pk.D2[0][0]),
                                std::abs(pk.eps1[1] + pk.eps * pk.D2[1][0])) /
                           form_scale);
    push("E1 vs A_N", std::max(std::abs(pk.E1[0][1] - pk.eps_v * pk.A_N[1][0]),
                               std::abs(pk.E1[1][1] - pk.eps_v * pk.A_N[1][1])) /
                          form_scale);
    push("D1 vs A_xi", std::max(std::abs(pk.D1[0][1] - pk.eps_v * pk.A_xi[1][0]),
                                std::abs(pk.D1[1][1] - pk.eps_v * pk.A_xi[1][1])) /
                           form_scale);
    push("A_xi radical kill", std::abs(pk.A_xi[1][0]) / form_scale);
    push("eps2 vanishes", std::max(std::abs(pk.eps2[0]), std::abs(pk.eps2[1])) / form_scale);
    push("u1 vs rho1", std::max(std::abs(pk.u1[0] + pk.rho1[0]), std::abs(pk.u1[1] + pk.rho1[1])) /
                           form_scale);
    push("eta normalization", std::max(std::abs(pk.eta[0] - 1.0), std::abs(pk.eta[1])));

    // Reassembly of the ambient derivative from tangential + transversal parts.
    double rec_worst = 0.0;
    for (int x = 0; x < 2; ++x) {
        const auto dir = detail::frame_dir(ctx, x);
        for (int y = 0; y < 2; ++y) {
            const auto cov = values_of(dbar(dir, detail::frame_field(ctx, y)));
            const Vec4d rebuilt = values_of(ctx.fr.xi) * pk.nabla[x][y][0] +
                                  values_of(ctx.fr.v) * pk.nabla[x][y][1] +
                                  values_of(ctx.fr.n) * pk.D1[x][y] +
                                  values_of(ctx.fr.u) * pk.D2[x][y];
            rec_worst = std::max(rec_worst,
                                 norm_euclid(cov - rebuilt) / std::max(1.0, norm_euclid(cov)));
        }
    }
    push("gauss reconstruction", rec_worst);

    // X(g(v,v)) = 2 g(nabla*_X v, v)
    double metr_worst = 0.0;
    {
        const Jet gvv = inner(ctx.g, ctx.fr.v, ctx.fr.v);
        for (int x = 0; x < 2; ++x) {
            const double lhs = dbar_scalar(detail::frame_dir(ctx, x), gvv).value();
            const double rhs = 2.0 * pk.nabla[x][1][1] * pk.eps_v;
            metr_worst = std::max(metr_worst, std::abs(lhs - rhs));
        }
    }
    push("screen metric compatibility", metr_worst / form_scale);

    // <h(xi,xi), h(xi,v)> = eps D2(xi,xi) D2(v,xi)
    {
        const Vec4d h_xx =
            values_of(ctx.fr.n) * pk.D1[0][0] + values_of(ctx.fr.u) * pk.D2[0][0];
        const Vec4d h_xv =
            values_of(ctx.fr.n) * pk.D1[0][1] + values_of(ctx.fr.u) * pk.D2[0][1];
        const double lhs = inner(ctx.g, h_xx, h_xv);
        const double rhs = pk.eps * pk.D2[0][0] * pk.D2[1][0];
        push("h inner pairing", std::abs(lhs - rhs) / (form_scale * form_scale));
    }

    return out;
}

} // namespace lightlike
