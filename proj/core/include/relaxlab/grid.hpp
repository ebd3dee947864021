#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <numbers>
#include <vector>

namespace relaxlab {

inline constexpr int kMaxDim = 3;

using Wavevector = std::array<int, kMaxDim>;

/// Uniform periodic box [0, L)^N with M points per axis.
///
/// Frequencies use the cycles convention: lattice index k maps to xi = k / L,
/// and a derivative multiplies coefficient k by 2*pi*i*xi. Flat indices are
/// row-major with the last axis fastest, matching FFTW.
///
/// The retained (dealiased) band is |k_j| <= K with K = (M - 1) / 3, so that
/// products of retained fields alias only outside the band.
class PeriodicGrid {
 public:
  PeriodicGrid(int dim, int points, double period = 2.0 * std::numbers::pi);

  int dim() const noexcept { return dim_; }
  int points() const noexcept { return points_; }
  double period() const noexcept { return period_; }
  double spacing() const noexcept { return period_ / points_; }
  double volume() const noexcept { return volume_; }
  std::size_t size() const noexcept { return size_; }

  int retained_max() const noexcept { return (points_ - 1) / 3; }

  Wavevector wavevector(std::size_t flat) const noexcept { return tables_->k[flat]; }
  double frequency(std::size_t flat, int axis) const noexcept {
    return tables_->k[flat][axis] / period_;
  }
  double frequency_norm(std::size_t flat) const noexcept { return tables_->xi_norm[flat]; }
  bool retained(std::size_t flat) const noexcept { return tables_->retained[flat] != 0; }
  /// Flat index of -k (the Nyquist index maps to itself).
  std::size_t negated(std::size_t flat) const noexcept { return tables_->neg[flat]; }

  /// Largest |xi| over retained lattice points.
  double retained_frequency_max() const noexcept { return tables_->xi_retained_max; }
  /// Smallest nonzero |xi| on the lattice.
  double frequency_min() const noexcept { return 1.0 / period_; }

  std::array<double, kMaxDim> coordinate(std::size_t flat) const noexcept;

  /// Flat index of a lattice wavevector (entries taken modulo M).
  std::size_t flat_index(const Wavevector& k) const noexcept;

  friend bool operator==(const PeriodicGrid& a, const PeriodicGrid& b) noexcept {
    return a.dim_ == b.dim_ && a.points_ == b.points_ && a.period_ == b.period_;
  }

 private:
  struct Tables {
    std::vector<Wavevector> k;
    std::vector<double> xi_norm;
    std::vector<unsigned char> retained;
    std::vector<std::size_t> neg;
    double xi_retained_max = 0.0;
  };

  int dim_;
  int points_;
  double period_;
  double volume_;
  std::size_t size_;
  std::shared_ptr<const Tables> tables_;
};

}  // namespace relaxlab
