#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relaxlab/dyadic.hpp"
#include "relaxlab/symmetry.hpp"
#include "relaxlab/trajectory.hpp"

namespace relaxlab {

struct PMEConfig {
  PeriodicGrid grid{1, 256};
  PressureLaw law{2.0};
  double rho_bar = 1.0;
  double s_end = 1.0;
  std::vector<double> snapshot_times;
  /// Largest step of the integrator.
  double max_step = 1e-3;

  void validate() const;
};

struct PMEResult {
  Trajectory trajectory;
  std::optional<std::string> failure;
  double failure_time = 0.0;
  std::size_t steps = 0;
  /// Largest per-step increase of int (N - rho_bar)^2 (negative when strictly dissipative).
  double max_energy_increase = 0.0;
};

/// d_s N = Lap p(N). The perturbation n = N - rho_bar evolves by second-order
/// exponential time differencing: Lap p'(rho_bar) n exactly per mode, the
/// remainder Lap(p(N) - p(rho_bar) - p'(rho_bar) n) explicitly and dealiased.
PMEResult solve_pme(const PMEConfig& cfg, const ScalarField& N0);

/// One step of the scheme from N with size ds.
ScalarField pme_step(const ScalarField& N, double ds, const PressureLaw& law, double rho_bar);

/// exp(-p'(rho_bar) |2 pi xi|^2 s).
double linear_decay(const PressureLaw& law, double rho_bar, double xi, double s);

/// Amplitude of the real mode pair +-k: 2 |c_k| (|c_0| for k = 0).
double mode_amplitude(const ScalarField& f, const Wavevector& k);

struct PMEBoundReport {
  double sup_norm = 0.0;
  double initial_norm = 0.0;
  double ratio = 0.0;
  /// Set when the initial norm vanishes; ratio is then reported as 1.
  bool degenerate = false;
};

/// sup_s ||N(s) - rho_bar||_{B^sigma_{2,r}} against the initial norm.
PMEBoundReport pme_besov_bound(const DyadicPartition& P, const Trajectory& traj, double sigma,
                               double r, double rho_bar);

}  // namespace relaxlab
