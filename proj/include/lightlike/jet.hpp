#pragma once

#include <array>
#include <cmath>
#include <ostream>

#include "lightlike/errors.hpp"

namespace lightlike {

// Truncated bivariate Taylor scalar of order <= 3 in two parameters.
//
// Storage holds partial-derivative values (not Taylor coefficients), indexed
// by (i, j) = (#derivatives in u1, #derivatives in u2), i + j <= 3:
//
//   [0]        (0,0)
//   [1] [2]    (1,0) (0,1)
//   [3]..[5]   (2,0) (1,1) (0,2)
//   [6]..[9]   (3,0) (2,1) (1,2) (0,3)
//
// `order` marks how many derivative layers are valid; slots above it stay
// zero. Differentiating shifts the table down one layer, so each derivative
// costs one order. Arithmetic truncates to the smaller operand order.
class Jet {
  public:
    static constexpr int kMaxOrder = 3;
    static constexpr int kSlots = 10;

    Jet() = default;
    explicit Jet(double c, int ord = kMaxOrder) : order_(ord) { d_[0] = c; }

    static Jet variable(double v, int axis, int ord = kMaxOrder) {
        Jet j(v, ord);
        if (ord >= 1) j.d_[axis == 0 ? 1 : 2] = 1.0;
        return j;
    }

    int order() const { return order_; }
    double value() const { return d_[0]; }

    static int index(int i, int j) {
        static constexpr int base[4] = {0, 1, 3, 6};
        return base[i + j] + j;
    }

    double d(int i, int j) const {
        if (i + j > order_) throw JetOrderError("jet partial beyond truncation order");
        return d_[index(i, j)];
    }
    void set(int i, int j, double v) { d_[index(i, j)] = v; }

    // Directional shift: partials of df/du_axis. Drops one order.
    Jet derivative(int axis) const {
        if (order_ == 0) throw JetOrderError("jet order exhausted");
        Jet out(0.0, order_ - 1);
        for (int i = 0; i + 0 <= out.order_; ++i)
            for (int j = 0; i + j <= out.order_; ++j)
                out.d_[index(i, j)] = axis == 0 ? d_[index(i + 1, j)] : d_[index(i, j + 1)];
        return out;
    }

    friend Jet operator+(const Jet& a) { return a; }
    friend Jet operator-(const Jet& a) {
        Jet out = a;
        for (auto& v : out.d_) v = -v;
        return out;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet out = a;
        out.order_ = std::min(a.order_, b.order_);
        for (int k = 0; k < kSlots; ++k) out.d_[k] += b.d_[k];
        out.zero_above();
        return out;
    }
    friend Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet out(0.0, std::min(a.order_, b.order_));
        for (int p = 0; p <= out.order_; ++p)
            for (int q = 0; p + q <= out.order_; ++q) {
                double acc = 0.0;
                for (int i = 0; i <= p; ++i)
                    for (int j = 0; j <= q; ++j)
                        acc += binom(p, i) * binom(q, j) * a.d_[index(i, j)] *
                               b.d_[index(p - i, q - j)];
                out.d_[index(p, q)] = acc;
            }
        return out;
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        if (b.value() == 0.0) throw EvalError("division by zero");
        const double w = b.value();
        return a * compose(b, {1.0 / w, -1.0 / (w * w), 2.0 / (w * w * w),
                               -6.0 / (w * w * w * w)});
    }

    friend Jet operator+(const Jet& a, double s) { Jet o = a; o.d_[0] += s; return o; }
    friend Jet operator+(double s, const Jet& a) { return a + s; }
    friend Jet operator-(const Jet& a, double s) { return a + (-s); }
    friend Jet operator-(double s, const Jet& a) { return -a + s; }
    friend Jet operator*(const Jet& a, double s) {
        Jet o = a;
        for (auto& v : o.d_) v *= s;
        return o;
    }
    friend Jet operator*(double s, const Jet& a) { return a * s; }
    friend Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }
    friend Jet operator/(double s, const Jet& a) { return Jet(s, a.order()) / a; }

    Jet& operator+=(const Jet& b) { return *this = *this + b; }
    Jet& operator-=(const Jet& b) { return *this = *this - b; }
    Jet& operator*=(const Jet& b) { return *this = *this * b; }

    // phi(f) for a scalar map with derivative values phi_k at f.value().
    // The perturbation f - f0 is nilpotent under truncation, so the cubic
    // Taylor polynomial of phi composed with jet products is exact.
    static Jet compose(const Jet& f, const std::array<double, 4>& phi) {
        Jet t = f;
        t.d_[0] = 0.0;
        Jet acc(phi[0], f.order_);
        Jet pw = t;
        acc += pw * phi[1];
        pw = pw * t;
        acc += pw * (phi[2] / 2.0);
        pw = pw * t;
        acc += pw * (phi[3] / 6.0);
        return acc;
    }

    friend Jet sqrt(const Jet& f) {
        const double w = f.value();
        if (w < 0.0) throw EvalError("sqrt of negative value");
        if (w == 0.0) {
            if (f.is_constant()) return Jet(0.0, f.order());
            throw EvalError("sqrt at zero with nonvanishing derivatives");
        }
        const double r = std::sqrt(w);
        return compose(f, {r, 0.5 / r, -0.25 / (w * r), 0.375 / (w * w * r)});
    }

    friend Jet log(const Jet& f) {
        const double w = f.value();
        if (w <= 0.0) throw EvalError("log of non-positive value");
        return compose(f, {std::log(w), 1.0 / w, -1.0 / (w * w), 2.0 / (w * w * w)});
    }

    friend Jet exp(const Jet& f) {
        const double e = std::exp(f.value());
        return compose(f, {e, e, e, e});
    }

    friend Jet sin(const Jet& f) {
        const double s = std::sin(f.value()), c = std::cos(f.value());
        return compose(f, {s, c, -s, -c});
    }

    friend Jet cos(const Jet& f) {
        const double s = std::sin(f.value()), c = std::cos(f.value());
        return compose(f, {c, -s, -c, s});
    }

    friend Jet pow(const Jet& base, const Jet& expo) {
        if (expo.is_constant()) return pow(base, expo.value());
        if (base.value() <= 0.0) throw EvalError("pow with non-constant exponent needs positive base");
        return exp(expo * log(base));
    }

    friend Jet pow(const Jet& base, double k) {
        const double r = std::round(k);
        if (std::abs(k - r) < 1e-12 && std::abs(r) <= 64.0) return ipow(base, static_cast<long>(r));
        const double w = base.value();
        if (w <= 0.0) throw EvalError("pow with fractional exponent needs positive base");
        const double p = std::pow(w, k);
        return compose(base, {p, k * p / w, k * (k - 1.0) * p / (w * w),
                              k * (k - 1.0) * (k - 2.0) * p / (w * w * w)});
    }

    bool is_constant() const {
        for (int k = 1; k < kSlots; ++k)
            if (d_[k] != 0.0) return false;
        return true;
    }

    friend std::ostream& operator<<(std::ostream& os, const Jet& j) {
        os << "jet(" << j.d_[0];
        if (j.order_ >= 1) os << "; " << j.d_[1] << "," << j.d_[2];
        os << ")";
        return os;
    }

  private:
    static double binom(int n, int k) {
        static constexpr double table[4][4] = {
            {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
        return table[n][k];
    }

    static Jet ipow(const Jet& b, long k) {
        if (k == 0) return Jet(1.0, b.order());
        if (k < 0) return Jet(1.0, b.order()) / ipow(b, -k);
        Jet acc(1.0, b.order());
        Jet p = b;
        long n = k;
        while (n > 0) {
            if (n & 1) acc *= p;
            n >>= 1;
            if (n) p *= p;
        }
        return acc;
    }

    void zero_above() {
        for (int i = 0; i <= kMaxOrder; ++i)
            for (int j = 0; i + j <= kMaxOrder; ++j)
                if (i + j > order_) d_[index(i, j)] = 0.0;
    }

    std::array<double, kSlots> d_{};
    int order_ = kMaxOrder;
};

// Scalar abstraction: geometry templates run on double (point values) and on
// Jet (fields over the parameter chart).
inline double value_of(double s) { return s; }
inline double value_of(const Jet& s) { return s.value(); }

template <class S> S scalar_of(double c);
template <> inline double scalar_of<double>(double c) { return c; }
template <> inline Jet scalar_of<Jet>(double c) { return Jet(c); }

} // namespace lightlike
