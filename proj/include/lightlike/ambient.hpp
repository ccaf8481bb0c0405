#pragma once

#include <array>
#include <cmath>
#include <ostream>

#include "lightlike/errors.hpp"
#include "lightlike/jet.hpp"

namespace lightlike {

// Diagonal semi-Euclidean inner product on four coordinates. The index q is
// the count of -1 entries; fixtures use q in {1, 2}.
struct Metric4 {
    std::array<int, 4> signs{1, 1, 1, 1};

    static Metric4 from_signs(std::array<int, 4> s) {
        for (int v : s)
            if (v != 1 && v != -1) throw ConfigError("metric entries must be +1 or -1");
        return Metric4{s};
    }
    // Signature listed negative-first: R4_2 = diag(-1,-1,+1,+1), R4_1 = diag(-1,+1,+1,+1).
    static Metric4 r42() { return Metric4{{-1, -1, 1, 1}}; }
    static Metric4 r41() { return Metric4{{-1, 1, 1, 1}}; }

    int index() const {
        int q = 0;
        for (int v : signs) q += v < 0;
        return q;
    }
};

template <class S>
struct Vec4 {
    std::array<S, 4> c{};

    S& operator[](int i) { return c[i]; }
    const S& operator[](int i) const { return c[i]; }

    friend Vec4 operator+(const Vec4& a, const Vec4& b) {
        return {{a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]}};
    }
    friend Vec4 operator-(const Vec4& a, const Vec4& b) {
        return {{a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]}};
    }
    friend Vec4 operator-(const Vec4& a) {
        return {{-a.c[0], -a.c[1], -a.c[2], -a.c[3]}};
    }
    friend Vec4 operator*(const Vec4& a, const S& s) {
        return {{a.c[0] * s, a.c[1] * s, a.c[2] * s, a.c[3] * s}};
    }
    friend Vec4 operator*(const S& s, const Vec4& a) { return a * s; }
    friend Vec4 operator/(const Vec4& a, const S& s) {
        return {{a.c[0] / s, a.c[1] / s, a.c[2] / s, a.c[3] / s}};
    }
    Vec4& operator+=(const Vec4& b) { return *this = *this + b; }
    Vec4& operator-=(const Vec4& b) { return *this = *this - b; }
};

using Vec4d = Vec4<double>;

inline Vec4d values_of(const Vec4<Jet>& v) {
    return {{v[0].value(), v[1].value(), v[2].value(), v[3].value()}};
}
inline Vec4d values_of(const Vec4d& v) { return v; }

template <class S>
Vec4<S> vec_cast(const Vec4d& v) {
    return {{scalar_of<S>(v[0]), scalar_of<S>(v[1]), scalar_of<S>(v[2]), scalar_of<S>(v[3])}};
}

template <class S>
S inner(const Metric4& g, const Vec4<S>& x, const Vec4<S>& y) {
    S acc = x[0] * y[0] * scalar_of<S>(g.signs[0]);
    for (int k = 1; k < 4; ++k) acc += x[k] * y[k] * scalar_of<S>(g.signs[k]);
    return acc;
}

// Euclidean auxiliaries; indefinite norms vanish on null vectors, so all
// zero tests and normalizations of the wedge machinery run through these.
template <class S>
S dot_euclid(const Vec4<S>& x, const Vec4<S>& y) {
    return x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
}
inline double norm_euclid(const Vec4d& x) { return std::sqrt(dot_euclid(x, x)); }

enum class CausalCharacter { Spacelike, Timelike, Null, Zero };

inline const char* to_string(CausalCharacter c) {
    switch (c) {
        case CausalCharacter::Spacelike: return "spacelike";
        case CausalCharacter::Timelike: return "timelike";
        case CausalCharacter::Null: return "null";
        case CausalCharacter::Zero: return "zero";
    }
    return "?";
}

inline CausalCharacter causal_character(const Metric4& g, const Vec4d& x, double tol) {
    const double en = norm_euclid(x);
    if (en < tol) return CausalCharacter::Zero;
    const double q = inner(g, x, x);
    if (std::abs(q) < tol * en * en) return CausalCharacter::Null;
    return q > 0.0 ? CausalCharacter::Spacelike : CausalCharacter::Timelike;
}

// Hodge-dual components of a^b^c: the four signed 3x3 minors of the 3x4
// matrix [a;b;c]. Zero exactly when {a,b,c} are linearly dependent, and
// dot_euclid(d, triple_wedge(a,b,c)) = det[d;a;b;c].
template <class S>
Vec4<S> triple_wedge(const Vec4<S>& a, const Vec4<S>& b, const Vec4<S>& c) {
    auto minor3 = [&](int i, int j, int k) {
        return a[i] * (b[j] * c[k] - b[k] * c[j]) - a[j] * (b[i] * c[k] - b[k] * c[i]) +
               a[k] * (b[i] * c[j] - b[j] * c[i]);
    };
    Vec4<S> w;
    w[0] = minor3(1, 2, 3);
    w[1] = -minor3(0, 2, 3);
    w[2] = minor3(0, 1, 3);
    w[3] = -minor3(0, 1, 2);
    return w;
}

// The six components of a^b (plane slots 01,02,03,12,13,23).
template <class S>
std::array<S, 6> pair_wedge(const Vec4<S>& a, const Vec4<S>& b) {
    return {a[0] * b[1] - a[1] * b[0], a[0] * b[2] - a[2] * b[0], a[0] * b[3] - a[3] * b[0],
            a[1] * b[2] - a[2] * b[1], a[1] * b[3] - a[3] * b[1], a[2] * b[3] - a[3] * b[2]};
}

// Underflow guard only; never decides a verdict.
inline constexpr double kWedgeFloor = 1e-300;

// Arguments whose norm sits at rounding level relative to the largest member
// are zero vectors in exact arithmetic; flooring their norms keeps the
// residual from amplifying pure noise into an O(1) verdict.
inline constexpr double kNoiseFloor = 1e-10;

inline double relative_wedge_residual(const Vec4d& a, const Vec4d& b, const Vec4d& c,
                                      double context_scale = 0.0,
                                      double noise_floor = kNoiseFloor) {
    const double na = norm_euclid(a), nb = norm_euclid(b), nc = norm_euclid(c);
    const double s = std::max({na, nb, nc, context_scale});
    if (s == 0.0) return 0.0;
    const double floor_norm = noise_floor * s;
    const double num = norm_euclid(triple_wedge(a, b, c));
    return num / (std::max(na, floor_norm) * std::max(nb, floor_norm) *
                      std::max(nc, floor_norm) +
                  kWedgeFloor);
}

inline double relative_pair_residual(const Vec4d& a, const Vec4d& b,
                                     double context_scale = 0.0,
                                     double noise_floor = kNoiseFloor) {
    const double na = norm_euclid(a), nb = norm_euclid(b);
    const double s = std::max({na, nb, context_scale});
    if (s == 0.0) return 0.0;
    const double floor_norm = noise_floor * s;
    const auto w = pair_wedge(a, b);
    double q = 0.0;
    for (double v : w) q += v * v;
    return std::sqrt(q) / (std::max(na, floor_norm) * std::max(nb, floor_norm) + kWedgeFloor);
}

} // namespace lightlike
