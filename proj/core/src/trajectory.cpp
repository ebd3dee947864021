#include "relaxlab/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "relaxlab/error.hpp"

namespace relaxlab {

void Trajectory::append(double time, std::vector<ScalarField> frame) {
  if (!std::isfinite(time)) throw ConfigError("snapshot time must be finite");
  if (frame.empty()) throw ConfigError("snapshot must carry at least one component");
  if (!times_.empty()) {
    if (!(time > times_.back())) throw ConfigError("snapshot times must be strictly increasing");
    if (frame.size() != frames_.front().size()) {
      throw ConfigError("snapshot component count changed");
    }
  }
  for (const auto& f : frame) {
    if (!(f.grid() == frame.front().grid()) ||
        (!frames_.empty() && !(f.grid() == frames_.front().front().grid()))) {
      throw ConfigError("snapshots must share one grid");
    }
  }
  times_.push_back(time);
  frames_.push_back(std::move(frame));
}

const PeriodicGrid& Trajectory::grid() const {
  if (frames_.empty()) throw ConfigError("empty trajectory has no grid");
  return frames_.front().front().grid();
}

std::vector<ScalarField> Trajectory::component(std::size_t c) const {
  std::vector<ScalarField> out;
  out.reserve(frames_.size());
  for (const auto& fr : frames_) out.push_back(fr.at(c));
  return out;
}

std::size_t Trajectory::component_index(const std::string& label) const {
  const auto it = std::find(meta_.labels.begin(), meta_.labels.end(), label);
  if (it == meta_.labels.end()) throw ConfigError("trajectory has no component '" + label + "'");
  return static_cast<std::size_t>(it - meta_.labels.begin());
}

Trajectory Trajectory::rescaled_time(double factor) const {
  if (!(factor > 0.0)) throw ConfigError("time scale factor must be positive");
  Trajectory out(meta_);
  for (std::size_t k = 0; k < size(); ++k) out.append(times_[k] * factor, frames_[k]);
  return out;
}

Trajectory make_trajectory(const std::vector<double>& times, const std::vector<ScalarField>& fields,
                           TrajectoryMeta meta) {
  if (times.size() != fields.size()) throw ConfigError("times and fields differ in length");
  Trajectory t(std::move(meta));
  for (std::size_t k = 0; k < times.size(); ++k) t.append(times[k], {fields[k]});
  return t;
}

}  // namespace relaxlab
