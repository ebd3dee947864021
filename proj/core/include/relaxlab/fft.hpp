#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "relaxlab/grid.hpp"

namespace relaxlab {

using Complex = std::complex<double>;
using Spectrum = std::vector<Complex>;

namespace fft {

/// Normalized Fourier coefficients c_k = M^{-N} sum_j f_j exp(-2 pi i k.x_j / L),
/// so that f(x) = sum_k c_k exp(2 pi i k.x / L).
Spectrum forward(const PeriodicGrid& grid, std::span<const double> values);
Spectrum forward(const PeriodicGrid& grid, std::span<const Complex> values);

/// Real part of the synthesis sum_k c_k exp(2 pi i k.x / L) on the grid.
std::vector<double> inverse_real(const PeriodicGrid& grid, std::span<const Complex> coefficients);
std::vector<Complex> inverse(const PeriodicGrid& grid, std::span<const Complex> coefficients);

std::string backend_version();

}  // namespace fft
}  // namespace relaxlab
