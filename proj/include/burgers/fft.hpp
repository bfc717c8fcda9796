#pragma once

#include <fftw3.h>

#include <complex>
#include <vector>

#include "burgers/errors.hpp"
#include "burgers/grid.hpp"

namespace burgers {

namespace detail {

/// Full complex 2D transform. FFTW_ESTIMATE keeps plan selection
/// deterministic, which the reproducibility contract relies on.
inline void fft2_inplace(std::vector<std::complex<double>>& data, int nx, int ny, int sign) {
    fftw_complex* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan = fftw_plan_dft_2d(nx, ny, ptr, ptr, sign, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

}  // namespace detail

/// Forward DFT of a real field; unnormalized (inverse carries 1/(nx*ny)).
inline Spectrum2D dft2(const ScalarField2D& f) {
    Spectrum2D spec;
    spec.box = f.box;
    spec.coeffs.assign(f.values.begin(), f.values.end());
    detail::fft2_inplace(spec.coeffs, f.box.nx, f.box.ny, FFTW_FORWARD);
    return spec;
}

/// Inverse DFT expected to produce a real field. Throws if the imaginary
/// residue exceeds `imag_tol` relative to the real part's magnitude.
inline ScalarField2D idft2_real(const Spectrum2D& spec, double time, double imag_tol = 1e-10) {
    std::vector<std::complex<double>> work = spec.coeffs;
    detail::fft2_inplace(work, spec.box.nx, spec.box.ny, FFTW_BACKWARD);
    const double scale = 1.0 / (static_cast<double>(spec.box.nx) * spec.box.ny);

    ScalarField2D out(spec.box, time);
    double max_im = 0.0, max_re = 0.0;
    for (std::size_t n = 0; n < work.size(); ++n) {
        const std::complex<double> z = work[n] * scale;
        out.values[n] = z.real();
        max_im = std::max(max_im, std::abs(z.imag()));
        max_re = std::max(max_re, std::abs(z.real()));
    }
    if (max_im > imag_tol * std::max(1.0, max_re))
        throw Error("inverse transform produced a non-real field");
    return out;
}

enum class Axis2D : int { X = 0, Y = 1 };

/// Spectral partial derivative: multiply by i*c along the axis, with the
/// Nyquist-mode derivative coefficient zeroed to preserve realness.
inline ScalarField2D spectral_derivative(const ScalarField2D& f, Axis2D axis) {
    Spectrum2D spec = dft2(f);
    const int nx = f.box.nx, ny = f.box.ny;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            double c;
            if (axis == Axis2D::X) {
                c = (i == nx / 2) ? 0.0 : Spectrum2D::wavenumber(i, nx, f.box.Lx);
            } else {
                c = (j == ny / 2) ? 0.0 : Spectrum2D::wavenumber(j, ny, f.box.Ly);
            }
            spec.at(i, j) *= std::complex<double>(0.0, c);
        }
    }
    return idft2_real(spec, f.time);
}

}  // namespace burgers
