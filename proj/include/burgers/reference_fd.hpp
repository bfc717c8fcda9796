#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "burgers/errors.hpp"
#include "burgers/grid.hpp"

namespace burgers {

/// Floor for the velocity magnitude in the advective step bound.
inline constexpr double kVelocityFloor = 1e-8;
inline constexpr double kDiffusiveSafety = 0.9;

/// Paired (u, v) fields at a common time plus the step size used by the
/// explicit scheme. Snapshots are immutable; stepping returns a new state.
struct FDState {
    ScalarField2D u;
    ScalarField2D v;
    double dt = 0.0;

    double time() const { return u.time; }
};

/// Diffusive stability bound 0.9 * min(hx^2, hy^2) / 4 (unit diffusion,
/// forward Euler, both dimensions).
inline double diffusive_dt_limit(const DomainBox& box) {
    const double h2 = std::min(box.hx() * box.hx(), box.hy() * box.hy());
    return kDiffusiveSafety * h2 / 4.0;
}

/// Advective bound 0.5 * min(hx, hy) / max(|u|, |v|, floor); the advection
/// coefficients of the system are 2u and 2v.
inline double advective_dt_limit(const ScalarField2D& u, const ScalarField2D& v) {
    const double speed = std::max({u.max_abs(), v.max_abs(), kVelocityFloor});
    return 0.5 * std::min(u.box.hx(), u.box.hy()) / speed;
}

inline double stable_dt(const ScalarField2D& u, const ScalarField2D& v) {
    return std::min(diffusive_dt_limit(u.box), advective_dt_limit(u, v));
}

inline FDState make_fd_state(ScalarField2D u, ScalarField2D v) {
    if (!u.box.same_grid(v.box) || u.time != v.time)
        throw ConfigInvalid("u and v must share grid and time");
    const double dt = stable_dt(u, v);
    return {std::move(u), std::move(v), dt};
}

/// One forward-Euler step of size `dt` with second-order centered
/// differences and periodic wrap, both equations advanced from the same
/// time level.
inline FDState fd_step(const FDState& state, double dt) {
    const DomainBox& box = state.u.box;
    const int nx = box.nx, ny = box.ny;
    const double hx = box.hx(), hy = box.hy();

    if (dt > diffusive_dt_limit(box) || dt > advective_dt_limit(state.u, state.v))
        throw CFLViolation("step size " + std::to_string(dt) + " violates the stability bounds");

    FDState next{ScalarField2D(box, state.time() + dt), ScalarField2D(box, state.time() + dt),
                 state.dt};
    for (int i = 0; i < nx; ++i) {
        const int im = (i + nx - 1) % nx, ip = (i + 1) % nx;
        for (int j = 0; j < ny; ++j) {
            const int jm = (j + ny - 1) % ny, jp = (j + 1) % ny;

            const double u = state.u.at(i, j), v = state.v.at(i, j);
            const double ux = (state.u.at(ip, j) - state.u.at(im, j)) / (2.0 * hx);
            const double uy = (state.u.at(i, jp) - state.u.at(i, jm)) / (2.0 * hy);
            const double vx = (state.v.at(ip, j) - state.v.at(im, j)) / (2.0 * hx);
            const double vy = (state.v.at(i, jp) - state.v.at(i, jm)) / (2.0 * hy);
            const double uxx =
                (state.u.at(ip, j) - 2.0 * u + state.u.at(im, j)) / (hx * hx);
            const double uyy =
                (state.u.at(i, jp) - 2.0 * u + state.u.at(i, jm)) / (hy * hy);
            const double vxx =
                (state.v.at(ip, j) - 2.0 * v + state.v.at(im, j)) / (hx * hx);
            const double vyy =
                (state.v.at(i, jp) - 2.0 * v + state.v.at(i, jm)) / (hy * hy);

            next.u.at(i, j) = u + dt * (uxx + uyy + 2.0 * u * ux + 2.0 * v * uy);
            next.v.at(i, j) = v + dt * (vxx + vyy + 2.0 * u * vx + 2.0 * v * vy);
        }
    }
    if (!next.u.all_finite() || !next.v.all_finite())
        throw NonFiniteState("finite-difference state became non-finite");
    return next;
}

inline FDState fd_step(const FDState& state) { return fd_step(state, state.dt); }

/// Repeated stepping with the state's dt; the final partial step is shrunk
/// to land exactly on t_end. Purely deterministic: identical inputs give a
/// bit-identical trajectory.
inline FDState fd_integrate(FDState state, double t_end) {
    if (t_end < state.time()) throw ConfigInvalid("t_end precedes current state time");
    while (state.time() < t_end) {
        const double remaining = t_end - state.time();
        const double dt = std::min(state.dt, remaining);
        state = fd_step(state, dt);
        if (dt == remaining) break;  // landed exactly; avoid roundoff spin
    }
    return state;
}

/// Largest centered-difference curl |du/dy - dv/dx| over the grid,
/// the discrete form of the cross-derivative condition.
inline double discrete_curl_max(const FDState& state) {
    const DomainBox& box = state.u.box;
    const int nx = box.nx, ny = box.ny;
    double worst = 0.0;
    for (int i = 0; i < nx; ++i) {
        const int im = (i + nx - 1) % nx, ip = (i + 1) % nx;
        for (int j = 0; j < ny; ++j) {
            const int jm = (j + ny - 1) % ny, jp = (j + 1) % ny;
            const double uy = (state.u.at(i, jp) - state.u.at(i, jm)) / (2.0 * box.hy());
            const double vx = (state.v.at(ip, j) - state.v.at(im, j)) / (2.0 * box.hx());
            worst = std::max(worst, std::abs(uy - vx));
        }
    }
    return worst;
}

}  // namespace burgers
