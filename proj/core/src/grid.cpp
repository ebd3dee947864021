#include "relaxlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relaxlab/error.hpp"

namespace relaxlab {

namespace {

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }

int signed_index(int i, int m) { return i < m / 2 ? i : i - m; }

std::size_t flat_index_impl(const Wavevector& k, int dim, int points) {
  std::size_t flat = 0;
  for (int d = 0; d < dim; ++d) {
    const int i = ((k[d] % points) + points) % points;
    flat = flat * points + static_cast<std::size_t>(i);
  }
  return flat;
}

}  // namespace

PeriodicGrid::PeriodicGrid(int dim, int points, double period)
    : dim_(dim), points_(points), period_(period) {
  if (dim < 1 || dim > kMaxDim) {
    throw ConfigError("grid dimension must be in [1, 3], got " + std::to_string(dim));
  }
  if (points < 8 || !is_power_of_two(points)) {
    throw ConfigError("points per axis must be a power of two >= 8, got " +
                      std::to_string(points));
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw ConfigError("period must be positive and finite");
  }

  size_ = 1;
  volume_ = 1.0;
  for (int d = 0; d < dim; ++d) {
    size_ *= static_cast<std::size_t>(points);
    volume_ *= period;
  }

  auto tables = std::make_shared<Tables>();
  tables->k.resize(size_);
  tables->xi_norm.resize(size_);
  tables->retained.resize(size_);
  const int kmax = retained_max();
  for (std::size_t flat = 0; flat < size_; ++flat) {
    Wavevector k{0, 0, 0};
    std::size_t rest = flat;
    for (int d = dim - 1; d >= 0; --d) {
      k[d] = signed_index(static_cast<int>(rest % points), points);
      rest /= points;
    }
    double norm2 = 0.0;
    bool keep = true;
    for (int d = 0; d < dim; ++d) {
      const double xi = k[d] / period;
      norm2 += xi * xi;
      keep = keep && std::abs(k[d]) <= kmax;
    }
    tables->k[flat] = k;
    tables->xi_norm[flat] = std::sqrt(norm2);
    tables->retained[flat] = keep ? 1 : 0;
    if (keep) tables->xi_retained_max = std::max(tables->xi_retained_max, std::sqrt(norm2));
  }
  tables->neg.resize(size_);
  for (std::size_t flat = 0; flat < size_; ++flat) {
    Wavevector minus = tables->k[flat];
    for (int d = 0; d < dim; ++d) minus[d] = -minus[d];
    tables->neg[flat] = flat_index_impl(minus, dim, points);
  }
  tables_ = std::move(tables);
}

std::array<double, kMaxDim> PeriodicGrid::coordinate(std::size_t flat) const noexcept {
  std::array<double, kMaxDim> x{0.0, 0.0, 0.0};
  std::size_t rest = flat;
  for (int d = dim_ - 1; d >= 0; --d) {
    x[d] = static_cast<double>(rest % points_) * spacing();
    rest /= points_;
  }
  return x;
}

std::size_t PeriodicGrid::flat_index(const Wavevector& k) const noexcept {
  return flat_index_impl(k, dim_, points_);
}

}  // namespace relaxlab
