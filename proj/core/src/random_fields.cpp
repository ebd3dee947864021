#include "relaxlab/random_fields.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace relaxlab {

ScalarField pure_mode(const PeriodicGrid& grid, const Wavevector& k, double amplitude,
                      double phase) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto x = grid.coordinate(i);
    double arg = phase;
    for (int d = 0; d < grid.dim(); ++d) arg += 2.0 * std::numbers::pi * k[d] * x[d] / grid.period();
    v[i] = amplitude * std::cos(arg);
  }
  return ScalarField(grid, std::move(v));
}

ScalarField random_weighted_field(const PeriodicGrid& grid, Rng& rng,
                                  const std::function<double(std::size_t)>& weight) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Spectrum c(grid.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    const double w = weight(i);
    c[i] = w == 0.0 ? Complex(0.0, 0.0) : w * Complex(re, i == 0 ? 0.0 : im);
  }
  return ScalarField::from_spectrum(grid, std::move(c));
}

ScalarField random_smooth_field(const PeriodicGrid& grid, Rng& rng, double decay, int kmax) {
  // Draws run over the wavevector box, not the lattice, so refining the grid
  // reproduces the same function.
  const int kc = std::min(kmax, grid.retained_max());
  const int dim = grid.dim();
  std::normal_distribution<double> normal(0.0, 1.0);
  Spectrum c(grid.size(), Complex(0.0, 0.0));
  Wavevector k{0, 0, 0};
  const int side = 2 * kc + 1;
  int count = 1;
  for (int d = 0; d < dim; ++d) count *= side;
  for (int n = 0; n < count; ++n) {
    int rest = n;
    double n2 = 0.0;
    for (int d = dim - 1; d >= 0; --d) {
      k[d] = rest % side - kc;
      rest /= side;
      n2 += double(k[d]) * k[d];
    }
    const double re = normal(rng);
    const double im = normal(rng);
    if (n2 == 0.0) continue;
    c[grid.flat_index(k)] = std::pow(1.0 + std::sqrt(n2), -decay) * Complex(re, im);
  }
  auto f = ScalarField::from_spectrum(grid, std::move(c));
  const double norm = l2_norm(f);
  return norm > 0.0 ? (1.0 / norm) * f : f;
}

}  // namespace relaxlab
