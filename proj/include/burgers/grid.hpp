#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "burgers/errors.hpp"

namespace burgers {

/// Periodic rectangle [-Lx/2, Lx/2) x [-Ly/2, Ly/2) sampled on an
/// nx-by-ny uniform grid, with the initial time of the problem.
struct DomainBox {
    double Lx = 16.0;
    double Ly = 16.0;
    int nx = 128;
    int ny = 128;
    double t0 = 0.0;

    double hx() const { return Lx / nx; }
    double hy() const { return Ly / ny; }
    double x(int i) const { return -0.5 * Lx + i * hx(); }
    double y(int j) const { return -0.5 * Ly + j * hy(); }

    void validate() const {
        auto power_of_two = [](int n) { return n >= 8 && (n & (n - 1)) == 0; };
        if (Lx <= 0.0 || Ly <= 0.0) throw ConfigInvalid("domain lengths must be positive");
        if (!power_of_two(nx) || !power_of_two(ny))
            throw ConfigInvalid("grid sizes must be powers of two, at least 8");
    }

    bool same_grid(const DomainBox& o) const {
        return Lx == o.Lx && Ly == o.Ly && nx == o.nx && ny == o.ny;
    }
};

/// Real scalar field sampled on the grid at one time. Row-major: index
/// i * ny + j for grid point (x_i, y_j).
struct ScalarField2D {
    DomainBox box;
    double time = 0.0;
    std::vector<double> values;

    ScalarField2D() = default;
    ScalarField2D(const DomainBox& b, double t)
        : box(b), time(t), values(static_cast<std::size_t>(b.nx) * b.ny, 0.0) {}

    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * box.ny + j]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * box.ny + j]; }

    double min() const { return *std::min_element(values.begin(), values.end()); }
    double max() const { return *std::max_element(values.begin(), values.end()); }

    double max_abs() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::abs(v));
        return m;
    }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }

    /// Fill from a function of (x, y).
    template <typename F>
    static ScalarField2D sample(const DomainBox& b, double t, F&& fn) {
        ScalarField2D f(b, t);
        for (int i = 0; i < b.nx; ++i)
            for (int j = 0; j < b.ny; ++j) f.at(i, j) = fn(b.x(i), b.y(j));
        return f;
    }
};

/// Max-norm of the difference between two fields on the same grid.
inline double max_abs_diff(const ScalarField2D& a, const ScalarField2D& b) {
    if (!a.box.same_grid(b.box)) throw ConfigInvalid("field grids differ");
    double m = 0.0;
    for (std::size_t n = 0; n < a.values.size(); ++n)
        m = std::max(m, std::abs(a.values[n] - b.values[n]));
    return m;
}

/// Max-norm restricted to the centered interior half of the box
/// (|x| <= Lx/4, |y| <= Ly/4), where periodic wrap effects are negligible.
inline double max_abs_diff_interior(const ScalarField2D& a, const ScalarField2D& b) {
    if (!a.box.same_grid(b.box)) throw ConfigInvalid("field grids differ");
    const DomainBox& box = a.box;
    double m = 0.0;
    for (int i = 0; i < box.nx; ++i) {
        if (std::abs(box.x(i)) > 0.25 * box.Lx) continue;
        for (int j = 0; j < box.ny; ++j) {
            if (std::abs(box.y(j)) > 0.25 * box.Ly) continue;
            m = std::max(m, std::abs(a.at(i, j) - b.at(i, j)));
        }
    }
    return m;
}

/// Discrete Fourier coefficients of a field, complex, FFT index order:
/// index m holds integer mode m for m <= n/2, m - n above.
struct Spectrum2D {
    DomainBox box;
    std::vector<std::complex<double>> coeffs;

    std::complex<double>& at(int i, int j) {
        return coeffs[static_cast<std::size_t>(i) * box.ny + j];
    }
    std::complex<double> at(int i, int j) const {
        return coeffs[static_cast<std::size_t>(i) * box.ny + j];
    }

    /// Signed integer mode for an FFT index.
    static int mode(int index, int n) { return index <= n / 2 ? index : index - n; }

    /// Continuous wavenumber 2*pi*m/L for an FFT index.
    static double wavenumber(int index, int n, double L) {
        return 2.0 * M_PI * mode(index, n) / L;
    }

    /// Largest Hermitian-symmetry violation max |c(-m,-n) - conj(c(m,n))|,
    /// zero (to roundoff) for spectra of real fields.
    double hermitian_defect() const {
        double m = 0.0;
        for (int i = 0; i < box.nx; ++i)
            for (int j = 0; j < box.ny; ++j) {
                const int in = (box.nx - i) % box.nx;
                const int jn = (box.ny - j) % box.ny;
                m = std::max(m, std::abs(at(in, jn) - std::conj(at(i, j))));
            }
        return m;
    }
};

}  // namespace burgers
