#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "burgers/errors.hpp"

namespace burgers {

/// Divisors whose value coefficient is at or below this floor are rejected.
/// The solver pipeline keeps phi > 0 and |u + v| bounded away from zero on
/// valid inputs, so the floor only trips on genuine degeneracies.
inline constexpr double kDivisorFloor = 1e-12;

enum class Axis : int { X = 0, Y = 1, T = 2 };

/// Truncation order of a jet: total degree of retained mixed partials
/// in (x, y, t). Runtime-valued because recurrence depth is user-chosen.
struct JetOrder {
    int max_order = 2;

    constexpr explicit JetOrder(int n) : max_order(n) {}

    /// Number of multi-indices (i, j, k) with i + j + k <= max_order.
    constexpr int coeff_count() const {
        const int n = max_order;
        return (n + 1) * (n + 2) * (n + 3) / 6;
    }
};

/// Truncated multivariate Taylor expansion in (x, y, t).
///
/// Coefficient at multi-index (i, j, k) stores d^i_x d^j_y d^k_t f / (i! j! k!)
/// at the expansion point. Storage is dense graded-lex: all indices of total
/// degree d precede degree d + 1, so truncation to a lower order is a prefix.
/// Jets are treated as immutable values once built; all operations are pure.
class Jet {
public:
    explicit Jet(JetOrder order) : order_(order), c_(order.coeff_count(), 0.0) {
        if (order.max_order < 0) throw OrderExceeded("jet order must be non-negative");
    }

    static Jet constant(double value, JetOrder order) {
        Jet j(order);
        j.c_[0] = value;
        return j;
    }

    /// Taylor jet of one of the coordinate functions x, y, t at `value`.
    static Jet variable(Axis which, double value, JetOrder order) {
        Jet j(order);
        j.c_[0] = value;
        if (order.max_order >= 1) {
            switch (which) {
                case Axis::X: j.c_[index(1, 0, 0)] = 1.0; break;
                case Axis::Y: j.c_[index(0, 1, 0)] = 1.0; break;
                case Axis::T: j.c_[index(0, 0, 1)] = 1.0; break;
            }
        }
        return j;
    }

    JetOrder order() const { return order_; }
    double value() const { return c_[0]; }

    double coeff(int i, int j, int k) const {
        check_index(i, j, k);
        return c_[index(i, j, k)];
    }

    /// Mixed partial derivative value: i! j! k! times the stored coefficient.
    double partial(int i, int j, int k) const {
        check_index(i, j, k);
        return c_[index(i, j, k)] * factorial(i) * factorial(j) * factorial(k);
    }

    /// Jet of the partial derivative along `axis`, one order lower.
    Jet derivative(Axis axis) const {
        if (order_.max_order < 1)
            throw OrderExceeded("cannot differentiate an order-0 jet");
        Jet out(JetOrder(order_.max_order - 1));
        const int n = out.order_.max_order;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j)
                for (int k = 0; i + j + k <= n; ++k) {
                    switch (axis) {
                        case Axis::X:
                            out.c_[index(i, j, k)] = (i + 1) * c_[index(i + 1, j, k)];
                            break;
                        case Axis::Y:
                            out.c_[index(i, j, k)] = (j + 1) * c_[index(i, j + 1, k)];
                            break;
                        case Axis::T:
                            out.c_[index(i, j, k)] = (k + 1) * c_[index(i, j, k + 1)];
                            break;
                    }
                }
        return out;
    }

    /// Drop coefficients above `order`. Graded-lex storage makes this a prefix copy.
    Jet truncate(JetOrder order) const {
        if (order.max_order > order_.max_order)
            throw OrderExceeded("truncate target order exceeds jet order");
        Jet out(order);
        for (int m = 0; m < order.coeff_count(); ++m) out.c_[m] = c_[m];
        return out;
    }

    Jet operator-() const {
        Jet out(order_);
        for (std::size_t m = 0; m < c_.size(); ++m) out.c_[m] = -c_[m];
        return out;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        a.check_same_order(b);
        Jet out(a.order_);
        for (std::size_t m = 0; m < out.c_.size(); ++m) out.c_[m] = a.c_[m] + b.c_[m];
        return out;
    }

    friend Jet operator-(const Jet& a, const Jet& b) {
        a.check_same_order(b);
        Jet out(a.order_);
        for (std::size_t m = 0; m < out.c_.size(); ++m) out.c_[m] = a.c_[m] - b.c_[m];
        return out;
    }

    friend Jet operator+(const Jet& a, double s) {
        Jet out = a;
        out.c_[0] += s;
        return out;
    }
    friend Jet operator+(double s, const Jet& a) { return a + s; }
    friend Jet operator-(const Jet& a, double s) { return a + (-s); }
    friend Jet operator-(double s, const Jet& a) { return (-a) + s; }

    friend Jet operator*(const Jet& a, double s) {
        Jet out(a.order_);
        for (std::size_t m = 0; m < out.c_.size(); ++m) out.c_[m] = a.c_[m] * s;
        return out;
    }
    friend Jet operator*(double s, const Jet& a) { return a * s; }
    friend Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }

    /// Truncated Cauchy product: exact Leibniz convolution on retained indices.
    friend Jet operator*(const Jet& a, const Jet& b) {
        a.check_same_order(b);
        const int n = a.order_.max_order;
        Jet out(a.order_);
        for (int i1 = 0; i1 <= n; ++i1)
            for (int j1 = 0; i1 + j1 <= n; ++j1)
                for (int k1 = 0; i1 + j1 + k1 <= n; ++k1) {
                    const double av = a.c_[index(i1, j1, k1)];
                    if (av == 0.0) continue;
                    const int rem = n - i1 - j1 - k1;
                    for (int i2 = 0; i2 <= rem; ++i2)
                        for (int j2 = 0; i2 + j2 <= rem; ++j2)
                            for (int k2 = 0; i2 + j2 + k2 <= rem; ++k2) {
                                const double bv = b.c_[index(i2, j2, k2)];
                                if (bv == 0.0) continue;
                                out.c_[index(i1 + i2, j1 + j2, k1 + k2)] += av * bv;
                            }
                }
        return out;
    }

    /// Power-series division, solved degree by degree.
    friend Jet operator/(const Jet& a, const Jet& b) {
        a.check_same_order(b);
        if (std::abs(b.c_[0]) <= kDivisorFloor)
            throw DivisorTooSmall("jet division by value coefficient <= divisor floor");
        const int n = a.order_.max_order;
        Jet q(a.order_);
        const double inv_b0 = 1.0 / b.c_[0];
        for (int d = 0; d <= n; ++d)
            for (int i = 0; i <= d; ++i)
                for (int j = 0; i + j <= d; ++j) {
                    const int k = d - i - j;
                    double acc = a.c_[index(i, j, k)];
                    // subtract sum over nonzero gamma <= (i,j,k) of b[gamma] q[alpha-gamma]
                    for (int gi = 0; gi <= i; ++gi)
                        for (int gj = 0; gj <= j; ++gj)
                            for (int gk = 0; gk <= k; ++gk) {
                                if (gi == 0 && gj == 0 && gk == 0) continue;
                                const double bg = b.c_[index(gi, gj, gk)];
                                if (bg == 0.0) continue;
                                acc -= bg * q.c_[index(i - gi, j - gj, k - gk)];
                            }
                    q.c_[index(i, j, k)] = acc * inv_b0;
                }
        return q;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (double v : c_) m = std::max(m, std::abs(v));
        return m;
    }

private:
    friend Jet exp(const Jet&);
    friend Jet log(const Jet&);

    JetOrder order_;
    std::vector<double> c_;

    /// Dense graded-lex position of multi-index (i, j, k).
    static int index(int i, int j, int k) {
        const int d = i + j + k;
        const int block = d * (d + 1) * (d + 2) / 6;
        return block + i * (d + 1) - i * (i - 1) / 2 + j;
    }

    void check_index(int i, int j, int k) const {
        if (i < 0 || j < 0 || k < 0 || i + j + k > order_.max_order)
            throw OrderExceeded("multi-index beyond jet order");
    }

    void check_same_order(const Jet& other) const {
        if (order_.max_order != other.order_.max_order)
            throw OrderExceeded("jet order mismatch in binary operation");
    }

    static double factorial(int n) {
        double f = 1.0;
        for (int m = 2; m <= n; ++m) f *= m;
        return f;
    }
};

/// exp(a) = e^{a0} * sum_m (a - a0)^m / m!; the sum is finite because
/// (a - a0) has no constant term, so degree m terms start at order m.
inline Jet exp(const Jet& a) {
    const int n = a.order().max_order;
    const double a0 = a.value();
    Jet x = a - a0;
    Jet acc = Jet::constant(1.0, a.order());
    Jet term = Jet::constant(1.0, a.order());
    for (int m = 1; m <= n; ++m) {
        term = term * x * (1.0 / m);
        acc = acc + term;
    }
    return acc * std::exp(a0);
}

/// log(a) = log(a0) + sum_m (-1)^{m+1} z^m / m with z = (a - a0) / a0.
inline Jet log(const Jet& a) {
    const double a0 = a.value();
    if (std::abs(a0) <= kDivisorFloor)
        throw DivisorTooSmall("jet log of value coefficient <= divisor floor");
    if (a0 < 0.0) throw PhiNonPositive("jet log of negative value coefficient");
    const int n = a.order().max_order;
    Jet z = (a - a0) / a0;
    Jet acc = Jet::constant(std::log(a0), a.order());
    Jet term = Jet::constant(1.0, a.order());
    double sign = 1.0;
    for (int m = 1; m <= n; ++m) {
        term = term * z;
        acc = acc + term * (sign / m);
        sign = -sign;
    }
    return acc;
}

}  // namespace burgers
