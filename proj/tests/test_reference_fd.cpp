#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "burgers/reference_fd.hpp"

using namespace burgers;

namespace {

DomainBox make_box(int n, double L = 16.0) {
    DomainBox box;
    box.Lx = box.Ly = L;
    box.nx = box.ny = n;
    box.t0 = 0.0;
    return box;
}

double front_u(double x, double y, double t) {
    const double theta = x + y + 2.0 * t;
    if (theta > 0.0) return 1.0 / (1.0 + std::exp(-theta));
    const double e = std::exp(theta);
    return e / (1.0 + e);
}

FDState front_state(int n) {
    const DomainBox box = make_box(n);
    return make_fd_state(
        ScalarField2D::sample(box, 0.0, [](double x, double y) { return front_u(x, y, 0.0); }),
        ScalarField2D::sample(box, 0.0, [](double x, double y) { return front_u(x, y, 0.0); }));
}

double front_error_interior(const FDState& state, double t) {
    const ScalarField2D exact = ScalarField2D::sample(
        state.u.box, t, [&](double x, double y) { return front_u(x, y, t); });
    return std::max(max_abs_diff_interior(state.u, exact),
                    max_abs_diff_interior(state.v, exact));
}

bool fields_identical(const ScalarField2D& a, const ScalarField2D& b) {
    if (a.values.size() != b.values.size()) return false;
    for (std::size_t n = 0; n < a.values.size(); ++n)
        if (a.values[n] != b.values[n]) return false;
    return true;
}

}  // namespace

TEST_CASE("zero and constant states are fixed points of the step") {
    const DomainBox box = make_box(16);
    const FDState zero = make_fd_state(ScalarField2D(box, 0.0), ScalarField2D(box, 0.0));
    const FDState z1 = fd_step(zero);
    CHECK(fields_identical(z1.u, zero.u));
    CHECK(fields_identical(z1.v, zero.v));

    const FDState cst = make_fd_state(
        ScalarField2D::sample(box, 0.0, [](double, double) { return 1.7; }),
        ScalarField2D::sample(box, 0.0, [](double, double) { return -0.9; }));
    const FDState c1 = fd_step(cst);
    for (double w : c1.u.values) CHECK(w == 1.7);
    for (double w : c1.v.values) CHECK(w == -0.9);
}

TEST_CASE("oversized steps violate the stability bounds") {
    const FDState state = front_state(32);
    CHECK_THROWS_AS(fd_step(state, 10.0 * diffusive_dt_limit(state.u.box)), CFLViolation);
}

TEST_CASE("non-finite values are detected after a step") {
    const DomainBox box = make_box(16);
    ScalarField2D u = ScalarField2D::sample(box, 0.0, [](double, double) { return 0.1; });
    u.at(3, 3) = std::numeric_limits<double>::quiet_NaN();
    const ScalarField2D v = ScalarField2D::sample(box, 0.0, [](double, double) { return 0.0; });
    FDState state{u, v, 1e-4};
    CHECK_THROWS_AS(fd_step(state), NonFiniteState);
}

TEST_CASE("integration lands exactly on the requested time") {
    FDState state = front_state(32);
    const FDState same = fd_integrate(state, 0.0);
    CHECK(fields_identical(same.u, state.u));
    CHECK(same.time() == 0.0);

    const FDState out = fd_integrate(state, 0.05);
    CHECK(out.time() == Catch::Approx(0.05).margin(1e-15));
}

TEST_CASE("two half runs equal one full run bit for bit") {
    // dyadic horizon and step keep every time value exact, so the two
    // trajectories execute identical step sequences
    FDState state = front_state(32);
    state.dt = 1.0 / 256.0;
    const double t_mid = 0.0625, t_end = 0.125;

    const FDState full = fd_integrate(state, t_end);
    const FDState half = fd_integrate(fd_integrate(state, t_mid), t_end);
    CHECK(fields_identical(full.u, half.u));
    CHECK(fields_identical(full.v, half.v));
}

TEST_CASE("determinism: same input, same trajectory") {
    const FDState a = fd_integrate(front_state(32), 0.05);
    const FDState b = fd_integrate(front_state(32), 0.05);
    CHECK(fields_identical(a.u, b.u));
    CHECK(fields_identical(a.v, b.v));
}

TEST_CASE("error against the exact front shrinks at second order") {
    const double tau = 0.1;
    const double e64 = front_error_interior(fd_integrate(front_state(64), tau), tau);
    const double e128 = front_error_interior(fd_integrate(front_state(128), tau), tau);
    const double ratio = e64 / e128;
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
}

TEST_CASE("discrete curl stays small on compatible data") {
    // gradient data of 0.3 cos(2 pi x / L) cos(2 pi y / L): periodic,
    // compatible, and asymmetric enough that u != v
    const DomainBox box = make_box(128);
    const double c = 2.0 * M_PI / box.Lx;
    auto s = [&](double x, double y) { return -0.3 * c * std::sin(c * x) * std::cos(c * y); };
    auto k = [&](double x, double y) { return -0.3 * c * std::cos(c * x) * std::sin(c * y); };
    FDState state = make_fd_state(ScalarField2D::sample(box, 0.0, s),
                                  ScalarField2D::sample(box, 0.0, k));
    CHECK(discrete_curl_max(state) < 1e-4);
    state = fd_integrate(state, 0.1);
    CHECK(discrete_curl_max(state) < 1e-4);
}
