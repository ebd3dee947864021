#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relaxlab/dyadic.hpp"
#include "relaxlab/symmetry.hpp"
#include "relaxlab/trajectory.hpp"

namespace relaxlab {

enum class DataKind { equilibrium, single_mode, multi_mode };

/// How the initial velocity is chosen: v0 = 0 (ill), u0 = -grad p(rho0)
/// (well, compatible with the limit), or v0 = a grad chi (gradient).
enum class Preparation { ill, well, gradient };

struct InitialData {
  DataKind kind = DataKind::single_mode;
  double amplitude = 1e-3;
  int modes = 3;
  std::uint64_t seed = 1;
  Preparation preparation = Preparation::ill;
};

struct SolverConfig {
  PeriodicGrid grid{1, 256};
  PressureLaw law{2.0};
  double tau = 1.0;
  double rho_bar = 1.0;
  double s_end = 1.0;
  double cfl = 0.5;
  std::vector<double> snapshot_times;
  InitialData data;
  /// Upper bound on the step, 0 for none.
  double max_step = 0.0;
  /// Diagnostics are recorded every this many steps (and at the end).
  int diagnostics_every = 1;

  void validate() const;
};

/// Slow-time state: density and scaled momentum u = rho v / tau.
struct EulerState {
  ScalarField rho;
  VectorField u;
  double s = 0.0;
};

/// Density profile rho0 / rho_bar - 1 divided by the amplitude.
ScalarField initial_profile(const PeriodicGrid& grid, const InitialData& data);

EulerState initialize(const SolverConfig& cfg);

/// Exact flow of d_s u = -(u + grad p(rho)) / tau^2 with rho frozen.
EulerState relax(const EulerState& st, double ds, const PressureLaw& law, double tau);
/// One RK4 step of d_s rho = -div u, d_s u = -div(u (x) u / rho).
EulerState transport(const EulerState& st, double ds);
/// Strang step: half relaxation, transport, half relaxation.
EulerState step(const EulerState& st, double ds, const SolverConfig& cfg);

struct StepCaps {
  double transport = kInf;
  double acoustic = kInf;
};

StepCaps step_caps(const EulerState& st, const SolverConfig& cfg);

struct DiagnosticsRecord {
  double s = 0.0;
  double mass = 0.0;
  double rel_entropy = 0.0;
  double dissipation = 0.0;
  double balance_residual = 0.0;
  double sup_W = 0.0;
  double sup_gradW = 0.0;
  double blowup_integral = 0.0;
};

struct EulerResult {
  Trajectory trajectory;
  std::vector<DiagnosticsRecord> diagnostics;
  std::optional<std::string> failure;
  double failure_time = 0.0;
  std::size_t steps = 0;
  StepCaps min_caps;
  double max_step_used = 0.0;
};

/// Trajectory components: rho, u_0..u_{N-1}, W1, W2_0..W2_{N-1}; W uses m = tau u.
EulerResult solve(const SolverConfig& cfg);

/// Mass, relative entropy and dissipation rate int |u|^2 / rho of a state.
double relative_entropy_integral(const EulerState& st, const PressureLaw& law, double rho_bar,
                                 double tau);
double dissipation_rate(const EulerState& st);

/// ||(rho0 - rho_bar, m0)||_{B^sigma_{2,r}} with m0 = tau u0.
double initial_data_norm(const DyadicPartition& P, const EulerState& st, double rho_bar, double tau,
                         double sigma, double r);

struct EnergyFunctionals {
  double E = 0.0;
  double D = 0.0;
  double S = 0.0;
  double E0 = 0.0;
};

/// E, D_tau, S over a solver trajectory (its own time variable).
EnergyFunctionals energy_functionals(const DyadicPartition& P, const Trajectory& traj, double sigma,
                                     double r, double tau, double W1_bar);

}  // namespace relaxlab
