#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "burgers/errors.hpp"
#include "burgers/exact.hpp"
#include "burgers/fft.hpp"
#include "burgers/grid.hpp"
#include "burgers/quadrature.hpp"

namespace burgers {

/// Initial fields of the nonlinear problem: u|_{t0} = s, v|_{t0} = k,
/// together with the integration base point and the constant background
/// used by the transformation.
struct InitialData {
    std::function<double(double, double)> s;
    std::function<double(double, double)> k;
    double x0 = 0.0;
    double y0 = 0.0;
    ConstantPair background;
};

namespace detail {

/// Line integral of the shifted data from the base point to (x, y) along
/// the path (x0,y0) -> (x,y0) -> (x,y).
inline double data_line_integral(const InitialData& d, double x, double y, double rel_tol,
                                 int max_doublings) {
    const double u0 = d.background.u0, v0 = d.background.v0;
    const double ix = integrate_adaptive([&](double xi) { return d.s(xi, d.y0) - u0; }, d.x0, x,
                                         rel_tol, max_doublings);
    const double iy = integrate_adaptive([&](double eta) { return d.k(x, eta) - v0; }, d.y0, y,
                                         rel_tol, max_doublings);
    return ix + iy;
}

}  // namespace detail

/// Transformed initial datum
///   f(x, y) = exp( int_{x0}^{x} s1(xi, y0) dxi + int_{y0}^{y} k1(x, eta) deta ),
/// s1 = s - u0, k1 = k - v0, sampled on the grid. The multiplicative constant
/// tied to the base point cancels later in phi_x / phi.
///
/// The cross-derivative condition ds/dy = dk/dx is checked first on the grid
/// with centered differences (step 1e-4; the grid spacing itself would leak
/// O(h^2) truncation into the check).
inline ScalarField2D build_initial_data(const InitialData& data, const DomainBox& box,
                                        double compat_tol = 1e-6) {
    box.validate();
    const double h = 1e-4;
    double worst = 0.0;
    for (int i = 0; i < box.nx; ++i)
        for (int j = 0; j < box.ny; ++j) {
            const double x = box.x(i), y = box.y(j);
            const double dsdy = (data.s(x, y + h) - data.s(x, y - h)) / (2.0 * h);
            const double dkdx = (data.k(x + h, y) - data.k(x - h, y)) / (2.0 * h);
            worst = std::max(worst, std::abs(dsdy - dkdx));
        }
    if (worst > compat_tol)
        throw CompatibilityViolated("ds/dy - dk/dx = " + std::to_string(worst) +
                                    " exceeds tolerance");

    ScalarField2D f(box, box.t0);
    const double u0 = data.background.u0;
    // x-leg prefix: one integral per grid column, all along y = y0
    std::vector<double> ix(box.nx);
    for (int i = 0; i < box.nx; ++i)
        ix[i] = integrate_adaptive([&](double xi) { return data.s(xi, data.y0) - u0; }, data.x0,
                                   box.x(i), 1e-10);
    const double v0 = data.background.v0;
    for (int i = 0; i < box.nx; ++i) {
        const double x = box.x(i);
        for (int j = 0; j < box.ny; ++j) {
            const double iy = integrate_adaptive(
                [&](double eta) { return data.k(x, eta) - v0; }, data.y0, box.y(j), 1e-10);
            f.at(i, j) = std::exp(ix[i] + iy);
        }
    }
    if (!f.all_finite()) throw Error("initial datum overflowed; shrink the domain box");
    return f;
}

/// |I_path1 - I_path2| for the two elementary paths from the base point to
/// the probe: right-then-up versus up-then-right. Zero (to quadrature
/// accuracy) exactly when the data satisfy ds/dy = dk/dx.
inline double path_independence_check(const InitialData& data, double px, double py) {
    const double u0 = data.background.u0, v0 = data.background.v0;
    const double tol = 1e-12;
    const double i1 = detail::data_line_integral(data, px, py, tol, 16);
    const double i2_y = integrate_adaptive([&](double eta) { return data.k(data.x0, eta) - v0; },
                                           data.y0, py, tol, 16);
    const double i2_x = integrate_adaptive([&](double xi) { return data.s(xi, py) - u0; }, data.x0,
                                           px, tol, 16);
    return std::abs(i1 - (i2_x + i2_y));
}

/// Per-mode evolution factor exp((-(c1^2 + c2^2) + 2i u0 c1 + 2i v0 c2) tau)
/// for the FFT bin (i, j). Nyquist modes take the real part of their drift
/// phase (the representable projection), so real fields stay real.
inline std::complex<double> heat_multiplier(int i, int j, const DomainBox& box,
                                            const ConstantPair& bg, double tau) {
    const double c1 = Spectrum2D::wavenumber(i, box.nx, box.Lx);
    const double c2 = Spectrum2D::wavenumber(j, box.ny, box.Ly);
    const double decay = std::exp(-(c1 * c1 + c2 * c2) * tau);
    double real_drift = 1.0;
    double angle = 0.0;
    if (i == box.nx / 2)
        real_drift *= std::cos(2.0 * bg.u0 * c1 * tau);
    else
        angle += 2.0 * bg.u0 * c1 * tau;
    if (j == box.ny / 2)
        real_drift *= std::cos(2.0 * bg.v0 * c2 * tau);
    else
        angle += 2.0 * bg.v0 * c2 * tau;
    // real_drift may be negative; std::polar requires a non-negative modulus
    return std::polar(decay, angle) * real_drift;
}

/// Evolve phi from the box's t0 to t with the exact per-mode multiplier
///   exp( ( -(c1^2 + c2^2) + 2 i u0 c1 + 2 i v0 c2 ) (t - t0) ).
inline ScalarField2D solve_heat_spectral(const ScalarField2D& f, const ConstantPair& bg,
                                         double t) {
    const double tau = t - f.time;
    if (tau < 0.0) throw ConfigInvalid("target time precedes the field's time");
    if (f.min() <= 0.0) throw ConfigInvalid("spectral solve requires strictly positive input");

    Spectrum2D spec = dft2(f);
    for (int i = 0; i < f.box.nx; ++i)
        for (int j = 0; j < f.box.ny; ++j) spec.at(i, j) *= heat_multiplier(i, j, f.box, bg, tau);
    ScalarField2D phi = idft2_real(spec, t);
    if (phi.min() <= 0.0)
        throw NonPositiveResult("evolved phi lost positivity; domain truncation too aggressive");
    return phi;
}

/// Independent solution path for the same problem: direct quadrature against
/// the free-space kernel
///   phi(x,y,t) = 1/(4 pi tau) Iint f(z1,z2)
///       exp( -((x + 2 u0 tau - z1)^2 + (y + 2 v0 tau - z2)^2) / (4 tau) ) dz,
/// with the kernel summed over periodic images until the mass left outside
/// is below 1e-12. Inverting the multiplier fixes the drift as +2 u0 tau
/// (positive sign, scaled by tau, purely real); the translation property
/// test pins this form.
///
/// Shares no transform code with solve_heat_spectral: plain real-space sums.
/// The grid must resolve the kernel width sqrt(2 tau); the trapezoid sums
/// carry an aliasing error of order exp(-4 pi^2 tau / h^2) otherwise.
inline ScalarField2D kernel_convolve_oracle(const ScalarField2D& f, const ConstantPair& bg,
                                            double t) {
    const double tau = t - f.time;
    if (tau <= 0.0) throw ConfigInvalid("kernel oracle requires t > t0 (kernel singular at t0)");

    const int nx = f.box.nx, ny = f.box.ny;
    const double root = std::sqrt(4.0 * M_PI * tau);

    // 1D periodized kernel matrix: K[a][b] ~ h/sqrt(4 pi tau) *
    //   sum_m exp(-(x_a - x_b + drift + m L)^2 / (4 tau))
    auto kernel_1d = [&](int n, double L, double h, double drift) {
        // images until the uncovered tail mass erfc(R / (2 sqrt(tau))) < 1e-12
        int shells = 1;
        const int max_shells = 4096;
        while (true) {
            const double reach = shells * L - 0.5 * L - std::abs(drift);
            if (reach > 0.0 && std::erfc(reach / (2.0 * std::sqrt(tau))) < 1e-12) break;
            if (++shells > max_shells)
                throw KernelTruncationError("image sum cannot meet the 1e-12 tail bound");
        }
        std::vector<double> K(static_cast<std::size_t>(n) * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                const double d = (a - b) * h + drift;
                double acc = 0.0;
                for (int m = -shells; m <= shells; ++m) {
                    const double z = d + m * L;
                    acc += std::exp(-z * z / (4.0 * tau));
                }
                K[static_cast<std::size_t>(a) * n + b] = acc * h / root;
            }
        return K;
    };

    const std::vector<double> kx = kernel_1d(nx, f.box.Lx, f.box.hx(), 2.0 * bg.u0 * tau);
    const std::vector<double> ky = kernel_1d(ny, f.box.Ly, f.box.hy(), 2.0 * bg.v0 * tau);

    // separable convolution: out = Kx * f * Ky^T
    std::vector<double> tmp(static_cast<std::size_t>(nx) * ny, 0.0);
    for (int a = 0; a < nx; ++a)
        for (int p = 0; p < nx; ++p) {
            const double w = kx[static_cast<std::size_t>(a) * nx + p];
            if (w == 0.0) continue;
            const double* row = &f.values[static_cast<std::size_t>(p) * ny];
            double* out = &tmp[static_cast<std::size_t>(a) * ny];
            for (int q = 0; q < ny; ++q) out[q] += w * row[q];
        }
    ScalarField2D phi(f.box, t);
    for (int a = 0; a < nx; ++a)
        for (int b = 0; b < ny; ++b) {
            const double* row = &tmp[static_cast<std::size_t>(a) * ny];
            const double* kyb = &ky[static_cast<std::size_t>(b) * ny];
            double acc = 0.0;
            for (int q = 0; q < ny; ++q) acc += kyb[q] * row[q];
            phi.at(a, b) = acc;
        }
    return phi;
}

/// Recover the nonlinear fields from the evolved linear one:
///   u = phi_x / phi + u0,  v = phi_y / phi + v0,
/// derivatives by spectral differentiation.
inline std::pair<ScalarField2D, ScalarField2D> recover_burgers(const ScalarField2D& phi,
                                                               const ConstantPair& bg) {
    if (phi.min() <= kDivisorFloor)
        throw PhiNonPositive("phi must be strictly positive to recover u, v");
    const ScalarField2D px = spectral_derivative(phi, Axis2D::X);
    const ScalarField2D py = spectral_derivative(phi, Axis2D::Y);
    ScalarField2D u(phi.box, phi.time), v(phi.box, phi.time);
    for (std::size_t n = 0; n < phi.values.size(); ++n) {
        u.values[n] = px.values[n] / phi.values[n] + bg.u0;
        v.values[n] = py.values[n] / phi.values[n] + bg.v0;
    }
    return {u, v};
}

}  // namespace burgers
