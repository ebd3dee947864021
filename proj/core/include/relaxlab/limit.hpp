#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relaxlab/euler.hpp"
#include "relaxlab/fit.hpp"
#include "relaxlab/pme.hpp"

namespace relaxlab {

enum class Reference { pme, finest_euler };

struct TauSweepConfig {
  PeriodicGrid grid{1, 256};
  PressureLaw law{2.0};
  double rho_bar = 1.0;
  /// Strictly decreasing, in (0, 1].
  std::vector<double> taus{1.0, 0.5, 0.25, 0.125};
  InitialData data;
  double sigma = 1.5;
  double r = 1.0;
  double delta = 0.5;
  std::vector<double> comparison_times{0.1, 0.5, 1.0};
  double s_end = 1.0;
  double snapshot_spacing = 0.01;
  double cfl = 0.5;
  Reference reference = Reference::pme;
  /// tau of the Euler reference run (finest_euler) or of the cross-check run; 0 disables the cross-check.
  double reference_tau = 0.0;
  double pme_max_step = 1e-3;
  int threads = 1;

  void validate() const;
  SolverConfig member(double tau) const;
  PMEConfig pme() const;
  std::vector<double> snapshot_times() const;
};

struct TauRun {
  double tau = 0.0;
  EulerResult euler;
  /// e_tau at each comparison time; NaN where the run failed first.
  std::vector<double> errors;
  /// Errors against the cross-check reference, when enabled.
  std::vector<double> cross_errors;
};

struct OrderFit {
  double s = 0.0;
  LinearFit fit;
  bool valid = false;
};

struct TauSweepResult {
  TauSweepConfig config;
  std::vector<TauRun> runs;
  PMEResult pme;
  std::optional<EulerResult> reference_run;
  std::vector<OrderFit> orders;
  std::vector<OrderFit> cross_orders;
};

TauSweepResult run_sweep(const TauSweepConfig& cfg);

/// ||rho^tau(s) - reference(s)||_{B^{sigma - delta}_{2,r}} at the comparison times.
std::vector<double> comparison_errors(const DyadicPartition& P, const Trajectory& run,
                                      const Trajectory& reference, const TauSweepConfig& cfg);

struct AuditRow {
  double tau = 0.0;
  /// Fast-time horizon S_end / tau.
  double T_end = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  EnergyFunctionals functionals;
  /// (E + D) / (E(0) + E^(1/2) D + E D).
  double nonlinear_ratio = 0.0;
  /// (E + D) / E(0).
  double linear_ratio = 0.0;
};

struct AuditReport {
  std::vector<AuditRow> rows;
  bool degenerate = false;
  double mu0 = 1.0;
  double C0 = 0.0;
  double C0_tau = 0.0;
  /// max ratio / min ratio across tau.
  double spread = 0.0;
  double nonlinear_C = 0.0;
  double linear_C = 0.0;
  /// max_tau E / E at tau = 1 (first run).
  double E_growth = 0.0;
  PMEBoundReport pme;
  bool pme_within_C0 = false;
};

/// Audit of ||(rho - rho_bar, m)|| + mu0 (||m / sqrt tau|| + ||sqrt tau (grad rho, grad m)||)
/// <= C0 ||(rho0 - rho_bar, m0)|| in fast time t = s / tau, m = tau u.
AuditReport energy_inequality_audit(const TauSweepResult& result, double sigma, double r,
                                    double mu0 = 1.0);

/// CSV rows "tau,s,error" and a JSON summary of the fitted orders.
std::string convergence_csv(const TauSweepResult& result);
std::string convergence_json(const TauSweepResult& result);

}  // namespace relaxlab
