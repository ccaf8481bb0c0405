#pragma once

#include <array>
#include <optional>
#include <string>

#include "lightlike/ambient.hpp"
#include "lightlike/expr.hpp"

namespace lightlike {

struct Box {
    std::array<double, 2> lo{-1.0, -1.0};
    std::array<double, 2> hi{1.0, 1.0};

    bool contains(std::array<double, 2> p) const {
        return p[0] >= lo[0] && p[0] <= hi[0] && p[1] >= lo[1] && p[1] <= hi[1];
    }
};

// Optional frame overrides, given as ambient 4-vectors of expressions in the
// surface parameters. Directions only; normalization happens downstream.
struct FramePins {
    std::optional<std::array<Expr, 4>> xi;
    std::optional<std::array<Expr, 4>> v;
    std::optional<std::array<Expr, 4>> u;
};

// A parametric surface patch in flat 4-space. Either four coordinate
// expressions of two parameters (u1, u2), or graph form where two ambient
// coordinates are the parameters themselves and the other two are
// expressions of them.
class Immersion {
  public:
    static Immersion parametric(std::array<Expr, 4> coords, Box domain);
    // free_a < free_b are the ambient slots used as parameters; dep1/dep2 are
    // the expressions for the remaining slots in increasing index order.
    static Immersion graph(int free_a, int free_b, Expr dep1, Expr dep2, Box domain);

    static std::array<std::string, 2> parametric_names() { return {"u1", "u2"}; }
    static std::array<std::string, 2> graph_names(int free_a, int free_b) {
        static const char* coord[4] = {"x1", "x2", "x3", "x4"};
        return {coord[free_a], coord[free_b]};
    }

    const std::array<std::string, 2>& param_names() const { return names_; }
    const Box& domain() const { return domain_; }
    const std::array<Expr, 4>& coords() const { return coords_; }
    bool is_graph() const { return graph_; }

    FramePins pins;

    template <class S>
    Vec4<S> eval(const S& a, const S& b) const {
        const std::array<S, 2> params{a, b};
        Vec4<S> out;
        for (int k = 0; k < 4; ++k) out[k] = coords_[k].template eval<S>(params);
        return out;
    }

  private:
    std::array<Expr, 4> coords_;
    std::array<std::string, 2> names_;
    Box domain_;
    bool graph_ = false;
};

// All partial derivatives of the immersion through order 3 at a parameter
// point, with the rank-2 check already passed.
struct ImmersionJet {
    std::array<double, 2> p{};
    Vec4<Jet> x;

    Vec4<Jet> tangent_field(int axis) const {
        return {{x[0].derivative(axis), x[1].derivative(axis), x[2].derivative(axis),
                 x[3].derivative(axis)}};
    }
    Vec4d tangent(int axis) const { return values_of(tangent_field(axis)); }
};

// Exact truncated-Taylor propagation through the expression trees.
ImmersionJet immersion_jet(const Immersion& m, std::array<double, 2> p);

// Independent route: the same table filled by central finite differences with
// Richardson extrapolation of point-wise evaluations.
ImmersionJet immersion_jet_fd(const Immersion& m, std::array<double, 2> p, double step = 5e-3);

// Central-stencil partial with one Richardson halving step (O(h^4)).
double fd_partial(const Expr& e, std::array<double, 2> p, int i, int j, double step);

} // namespace lightlike
