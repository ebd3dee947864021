#pragma once

#include <string>
#include <vector>

#include "relaxlab/field.hpp"

namespace relaxlab {

struct TrajectoryMeta {
  double tau = 1.0;
  double gamma = 1.0;
  double rho_bar = 1.0;
  std::vector<std::string> labels;
};

/// Snapshots of a multi-component field at strictly increasing times.
class Trajectory {
 public:
  Trajectory() = default;
  explicit Trajectory(TrajectoryMeta meta) : meta_(std::move(meta)) {}

  void append(double time, std::vector<ScalarField> frame);

  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }
  std::size_t components() const noexcept { return frames_.empty() ? 0 : frames_.front().size(); }
  const std::vector<double>& times() const noexcept { return times_; }
  const std::vector<ScalarField>& frame(std::size_t k) const { return frames_.at(k); }
  const PeriodicGrid& grid() const;
  const TrajectoryMeta& meta() const noexcept { return meta_; }
  TrajectoryMeta& meta() noexcept { return meta_; }

  /// Time series of a single component.
  std::vector<ScalarField> component(std::size_t c) const;
  /// Index of a labelled component.
  std::size_t component_index(const std::string& label) const;

  /// New trajectory with times scaled by factor (factor > 0).
  Trajectory rescaled_time(double factor) const;

 private:
  TrajectoryMeta meta_;
  std::vector<double> times_;
  std::vector<std::vector<ScalarField>> frames_;
};

/// Builds a single-component trajectory from a time series.
Trajectory make_trajectory(const std::vector<double>& times, const std::vector<ScalarField>& fields,
                           TrajectoryMeta meta = {});

}  // namespace relaxlab
