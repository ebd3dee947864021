#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "relaxlab/fft.hpp"
#include "relaxlab/grid.hpp"

namespace relaxlab {

/// Real grid function with its Fourier coefficients.
///
/// Immutable: the spectrum is computed once at construction, so a field can be
/// shared freely between threads.
class ScalarField {
 public:
  ScalarField(PeriodicGrid grid, std::vector<double> values);

  /// Builds a real field from coefficients; the Hermitian part is kept.
  static ScalarField from_spectrum(PeriodicGrid grid, Spectrum coefficients);
  static ScalarField constant(PeriodicGrid grid, double value);
  static ScalarField zero(PeriodicGrid grid) { return constant(std::move(grid), 0.0); }

  const PeriodicGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const Complex> spectrum() const noexcept { return spectrum_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

 private:
  ScalarField(PeriodicGrid grid, std::vector<double> values, Spectrum spectrum);

  PeriodicGrid grid_;
  std::vector<double> values_;
  Spectrum spectrum_;
};

/// N-component field; component j is the x_j direction.
using VectorField = std::vector<ScalarField>;

using Multiindex = std::array<int, kMaxDim>;

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a);
ScalarField operator*(double c, const ScalarField& a);
ScalarField add_constant(const ScalarField& a, double c);

/// Pointwise product of the retained parts, projected back onto the retained
/// band (2/3 rule): exact for every retained output mode.
ScalarField product(const ScalarField& a, const ScalarField& b);

/// Zeroes every coefficient outside the retained band.
ScalarField project(const ScalarField& f);

/// Applies a real multiplier sampled on the lattice.
ScalarField apply_multiplier(const ScalarField& f, std::span<const double> multiplier);

/// Spectral derivative d^alpha f (coefficient times prod (2 pi i xi_j)^alpha_j);
/// odd derivatives vanish on the Nyquist plane.
ScalarField derivative(const ScalarField& f, const Multiindex& alpha);
ScalarField derivative(const ScalarField& f, int axis);
VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& u);

/// Pointwise map of grid values; no projection.
ScalarField map(const ScalarField& f, const std::function<double(double)>& fn);

double l2_norm(const ScalarField& f);
double linf_norm(const ScalarField& f);
double mean(const ScalarField& f);
double integral(const ScalarField& f);
double min_value(const ScalarField& f);
/// sup over grid of the Euclidean norm of the gradient.
double gradient_linf(const ScalarField& f);
/// L2 norm of the part of f outside the retained band.
double unresolved_l2(const ScalarField& f);

/// Multi-indices with |alpha| = order in dim dimensions.
std::vector<Multiindex> multiindices(int dim, int order);

}  // namespace relaxlab
