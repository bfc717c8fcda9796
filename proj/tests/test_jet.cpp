#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <map>
#include <random>

#include "burgers/jet.hpp"
#include "burgers/rng.hpp"

using burgers::Axis;
using burgers::Jet;
using burgers::JetOrder;

namespace {

// --------------------------------------------------------------------------
// Test-only oracle: trivariate polynomials as coefficient maps. Multiplied
// by brute-force convolution and evaluated by direct powers; shares nothing
// with the jet implementation.
// --------------------------------------------------------------------------
struct Poly {
    std::map<std::array<int, 3>, double> c;

    static Poly random_dyadic(std::mt19937_64& eng, int degree) {
        Poly p;
        for (int i = 0; i <= degree; ++i)
            for (int j = 0; i + j <= degree; ++j)
                for (int k = 0; i + j + k <= degree; ++k) {
                    const int numer = static_cast<int>(eng() % 17) - 8;  // -8..8
                    p.c[{i, j, k}] = numer / 4.0;
                }
        return p;
    }

    Poly mul(const Poly& other) const {
        Poly out;
        for (const auto& [ia, va] : c)
            for (const auto& [ib, vb] : other.c) {
                const std::array<int, 3> key{ia[0] + ib[0], ia[1] + ib[1], ia[2] + ib[2]};
                out.c[key] += va * vb;
            }
        return out;
    }

    double eval(double x, double y, double t) const {
        double acc = 0.0;
        for (const auto& [idx, v] : c)
            acc += v * std::pow(x, idx[0]) * std::pow(y, idx[1]) * std::pow(t, idx[2]);
        return acc;
    }

    /// Jet at an arbitrary point, built only through jet arithmetic. At the
    /// origin the Taylor coefficients are the monomial coefficients.
    Jet to_jet(double x0, double y0, double t0, JetOrder order) const {
        Jet acc(order);
        const Jet x = Jet::variable(Axis::X, x0, order);
        const Jet y = Jet::variable(Axis::Y, y0, order);
        const Jet t = Jet::variable(Axis::T, t0, order);
        for (const auto& [idx, v] : c) {
            Jet term = Jet::constant(v, order);
            for (int n = 0; n < idx[0]; ++n) term = term * x;
            for (int n = 0; n < idx[1]; ++n) term = term * y;
            for (int n = 0; n < idx[2]; ++n) term = term * t;
            acc = acc + term;
        }
        return acc;
    }
};

Jet random_jet(std::mt19937_64& eng, JetOrder order, double value_coeff) {
    // built from variables and constants so construction goes through the API
    Jet acc = Jet::constant(value_coeff, order);
    const Jet x = Jet::variable(Axis::X, 0.0, order);
    const Jet y = Jet::variable(Axis::Y, 0.0, order);
    const Jet t = Jet::variable(Axis::T, 0.0, order);
    Jet lin = x * burgers::uniform(eng, -1.0, 1.0) + y * burgers::uniform(eng, -1.0, 1.0) +
              t * burgers::uniform(eng, -1.0, 1.0);
    Jet pw = lin;
    for (int d = 2; d <= order.max_order; ++d) {
        pw = pw * lin;
        acc = acc + pw * burgers::uniform(eng, -0.5, 0.5);
    }
    return acc + lin;
}

double max_coeff_diff(const Jet& a, const Jet& b) {
    const int n = a.order().max_order;
    double worst = 0.0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n; ++j)
            for (int k = 0; i + j + k <= n; ++k)
                worst = std::max(worst, std::abs(a.coeff(i, j, k) - b.coeff(i, j, k)));
    return worst;
}

}  // namespace

TEST_CASE("coordinate jets carry the point value and a unit linear coefficient") {
    const Jet jx = Jet::variable(Axis::X, 2.0, JetOrder(2));
    CHECK(jx.coeff(0, 0, 0) == 2.0);
    CHECK(jx.coeff(1, 0, 0) == 1.0);
    CHECK(jx.coeff(0, 1, 0) == 0.0);
    CHECK(jx.coeff(0, 0, 1) == 0.0);
    CHECK(jx.coeff(2, 0, 0) == 0.0);
    CHECK(jx.coeff(1, 1, 0) == 0.0);

    const Jet jt = Jet::variable(Axis::T, 0.0, JetOrder(1));
    CHECK(jt.coeff(0, 0, 0) == 0.0);
    CHECK(jt.coeff(0, 0, 1) == 1.0);
    CHECK(jt.coeff(1, 0, 0) == 0.0);

    const Jet jy = Jet::variable(Axis::Y, -1.5, JetOrder(3));
    CHECK(jy.coeff(0, 0, 0) == -1.5);
    CHECK(jy.coeff(0, 1, 0) == 1.0);
    CHECK(jy.coeff(0, 2, 0) == 0.0);
}

TEST_CASE("division of a jet by itself gives the constant one") {
    std::mt19937_64 eng(7);
    for (int rep = 0; rep < 20; ++rep) {
        const Jet j = random_jet(eng, JetOrder(4), burgers::uniform(eng, 0.5, 3.0));
        const Jet q = j / j;
        CHECK(q.value() == Catch::Approx(1.0).epsilon(1e-14));
        CHECK(max_coeff_diff(q, Jet::constant(1.0, JetOrder(4))) < 1e-13);
    }
}

TEST_CASE("exp of the coordinate jet reproduces the Taylor series of e^x") {
    const Jet e = exp(Jet::variable(Axis::X, 0.0, JetOrder(2)));
    CHECK(e.coeff(0, 0, 0) == Catch::Approx(1.0));
    CHECK(e.coeff(1, 0, 0) == Catch::Approx(1.0));
    CHECK(e.coeff(2, 0, 0) == Catch::Approx(0.5));
}

TEST_CASE("multiplication matches brute-force polynomial convolution exactly") {
    // dyadic coefficients keep every product and sum exact in binary floating
    // point, so the match must be bit-for-bit
    std::mt19937_64 eng(11);
    for (int rep = 0; rep < 10; ++rep) {
        const Poly p = Poly::random_dyadic(eng, 3);
        const Poly q = Poly::random_dyadic(eng, 3);
        const Poly pq = p.mul(q);

        const JetOrder order(6);
        const Jet jet_product = p.to_jet(0, 0, 0, order) * q.to_jet(0, 0, 0, order);
        for (int i = 0; i <= 6; ++i)
            for (int j = 0; i + j <= 6; ++j)
                for (int k = 0; i + j + k <= 6; ++k) {
                    const auto it = pq.c.find({i, j, k});
                    const double expected = it == pq.c.end() ? 0.0 : it->second;
                    CHECK(jet_product.coeff(i, j, k) == expected);
                }
    }
}

TEST_CASE("extract_partial returns true mixed partial derivatives") {
    const Jet e = exp(Jet::variable(Axis::X, 0.0, JetOrder(2)));
    CHECK(e.partial(2, 0, 0) == Catch::Approx(1.0));  // d2/dx2 e^x at 0

    const Jet j5 = Jet::variable(Axis::X, 5.0, JetOrder(1));
    CHECK(j5.partial(0, 0, 0) == 5.0);

    CHECK_THROWS_AS(e.partial(3, 0, 0), burgers::OrderExceeded);
}

TEST_CASE("jet partials of a random polynomial match central finite differences") {
    std::mt19937_64 eng(13);
    const double h = 1e-4;
    for (int rep = 0; rep < 5; ++rep) {
        const Poly p = Poly::random_dyadic(eng, 3);
        const double x = burgers::uniform(eng, -1.0, 1.0);
        const double y = burgers::uniform(eng, -1.0, 1.0);
        const double t = burgers::uniform(eng, -1.0, 1.0);
        const Jet j = p.to_jet(x, y, t, JetOrder(2));

        auto f = [&](double dx, double dy, double dt) { return p.eval(x + dx, y + dy, t + dt); };
        const double fd_x = (f(h, 0, 0) - f(-h, 0, 0)) / (2 * h);
        const double fd_y = (f(0, h, 0) - f(0, -h, 0)) / (2 * h);
        const double fd_t = (f(0, 0, h) - f(0, 0, -h)) / (2 * h);
        const double fd_xx = (f(h, 0, 0) - 2 * f(0, 0, 0) + f(-h, 0, 0)) / (h * h);
        const double fd_yy = (f(0, h, 0) - 2 * f(0, 0, 0) + f(0, -h, 0)) / (h * h);
        const double fd_tt = (f(0, 0, h) - 2 * f(0, 0, 0) + f(0, 0, -h)) / (h * h);
        const double fd_xy =
            (f(h, h, 0) - f(h, -h, 0) - f(-h, h, 0) + f(-h, -h, 0)) / (4 * h * h);
        const double fd_xt =
            (f(h, 0, h) - f(h, 0, -h) - f(-h, 0, h) + f(-h, 0, -h)) / (4 * h * h);
        const double fd_yt =
            (f(0, h, h) - f(0, h, -h) - f(0, -h, h) + f(0, -h, -h)) / (4 * h * h);

        CHECK(j.partial(0, 0, 0) == Catch::Approx(f(0, 0, 0)).margin(1e-12));
        CHECK(j.partial(1, 0, 0) == Catch::Approx(fd_x).margin(1e-6));
        CHECK(j.partial(0, 1, 0) == Catch::Approx(fd_y).margin(1e-6));
        CHECK(j.partial(0, 0, 1) == Catch::Approx(fd_t).margin(1e-6));
        CHECK(j.partial(2, 0, 0) == Catch::Approx(fd_xx).margin(1e-6));
        CHECK(j.partial(0, 2, 0) == Catch::Approx(fd_yy).margin(1e-6));
        CHECK(j.partial(0, 0, 2) == Catch::Approx(fd_tt).margin(1e-6));
        CHECK(j.partial(1, 1, 0) == Catch::Approx(fd_xy).margin(1e-6));
        CHECK(j.partial(1, 0, 1) == Catch::Approx(fd_xt).margin(1e-6));
        CHECK(j.partial(0, 1, 1) == Catch::Approx(fd_yt).margin(1e-6));
    }
}

TEST_CASE("add and mul are commutative and associative on retained coefficients") {
    std::mt19937_64 eng(17);
    for (int rep = 0; rep < 20; ++rep) {
        const JetOrder order(4);
        const Jet a = random_jet(eng, order, burgers::uniform(eng, -2.0, 2.0));
        const Jet b = random_jet(eng, order, burgers::uniform(eng, -2.0, 2.0));
        const Jet c = random_jet(eng, order, burgers::uniform(eng, -2.0, 2.0));

        const double scale = std::max({1.0, a.max_abs_coeff(), b.max_abs_coeff(),
                                       c.max_abs_coeff()});
        CHECK(max_coeff_diff(a + b, b + a) == 0.0);
        CHECK(max_coeff_diff(a * b, b * a) < 1e-13 * scale);
        CHECK(max_coeff_diff((a + b) + c, a + (b + c)) < 1e-13 * scale);
        CHECK(max_coeff_diff((a * b) * c, a * (b * c)) < 1e-13 * scale * scale * scale);
    }
}

TEST_CASE("division inverts multiplication") {
    std::mt19937_64 eng(19);
    for (int rep = 0; rep < 30; ++rep) {
        const JetOrder order(4);
        const Jet a = random_jet(eng, order, burgers::uniform(eng, -2.0, 2.0));
        // b scales with its value coefficient so the division is well posed
        // down to small magnitudes
        const double b0 = std::pow(10.0, burgers::uniform(eng, -5.0, 0.5));
        const Jet b = random_jet(eng, order, 1.0) * b0;
        const Jet back = (a * b) / b;
        const double scale = std::max(1.0, a.max_abs_coeff());
        CHECK(max_coeff_diff(back, a) < 1e-12 * scale);
    }
}

TEST_CASE("exp is a homomorphism from addition to multiplication") {
    std::mt19937_64 eng(23);
    for (int rep = 0; rep < 20; ++rep) {
        const JetOrder order(5);
        const Jet a = random_jet(eng, order, burgers::uniform(eng, -1.0, 1.0));
        const Jet b = random_jet(eng, order, burgers::uniform(eng, -1.0, 1.0));
        const Jet lhs = exp(a + b);
        const Jet rhs = exp(a) * exp(b);
        CHECK(max_coeff_diff(lhs, rhs) < 1e-12 * std::max(1.0, lhs.max_abs_coeff()));
    }
}

TEST_CASE("log inverts exp") {
    std::mt19937_64 eng(29);
    for (int rep = 0; rep < 10; ++rep) {
        const JetOrder order(5);
        const Jet a = random_jet(eng, order, burgers::uniform(eng, -1.0, 1.0));
        const Jet back = log(exp(a));
        CHECK(max_coeff_diff(back, a) < 1e-12 * std::max(1.0, a.max_abs_coeff()));
    }
}

TEST_CASE("derivative shifts coefficients with the right combinatorial factor") {
    // f = x^2 t: df/dx = 2 x t, d2f/dx2 = 2 t
    const JetOrder order(3);
    const Jet x = Jet::variable(Axis::X, 0.5, order);
    const Jet t = Jet::variable(Axis::T, 2.0, order);
    const Jet f = x * x * t;
    const Jet fx = f.derivative(Axis::X);
    CHECK(fx.value() == Catch::Approx(2.0 * 0.5 * 2.0));
    const Jet fxx = fx.derivative(Axis::X);
    CHECK(fxx.value() == Catch::Approx(2.0 * 2.0));
    CHECK(fxx.order().max_order == 1);
}

TEST_CASE("division guards against tiny value coefficients") {
    const JetOrder order(2);
    const Jet ok = Jet::constant(1.0, order);
    const Jet tiny = Jet::constant(1e-13, order);
    CHECK_THROWS_AS(ok / tiny, burgers::DivisorTooSmall);
    const Jet zero = Jet::variable(Axis::X, 0.0, order);
    CHECK_THROWS_AS(ok / zero, burgers::DivisorTooSmall);
}

TEST_CASE("log guards its domain") {
    const JetOrder order(2);
    CHECK_THROWS_AS(log(Jet::constant(-1.0, order)), burgers::PhiNonPositive);
    CHECK_THROWS_AS(log(Jet::constant(0.0, order)), burgers::DivisorTooSmall);
}

TEST_CASE("mismatched orders are rejected") {
    const Jet a = Jet::constant(1.0, JetOrder(2));
    const Jet b = Jet::constant(1.0, JetOrder(3));
    CHECK_THROWS_AS(a + b, burgers::OrderExceeded);
    CHECK_THROWS_AS(a * b, burgers::OrderExceeded);
    CHECK_NOTHROW(b.truncate(JetOrder(2)) + a);
}

TEST_CASE("truncate keeps the leading coefficients") {
    std::mt19937_64 eng(31);
    const Jet a = random_jet(eng, JetOrder(5), 1.3);
    const Jet t = a.truncate(JetOrder(2));
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; i + j <= 2; ++j)
            for (int k = 0; i + j + k <= 2; ++k)
                CHECK(t.coeff(i, j, k) == a.coeff(i, j, k));
    CHECK_THROWS_AS(t.truncate(JetOrder(4)), burgers::OrderExceeded);
}
