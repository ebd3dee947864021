#include "relaxlab/pme.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "relaxlab/error.hpp"

namespace relaxlab {

namespace {

double phi1(double z) {
  if (std::abs(z) < 1e-5) return 1.0 + z / 2.0 + z * z / 6.0;
  return std::expm1(z) / z;
}

double phi2(double z) {
  if (std::abs(z) < 1e-3) return 0.5 + z / 6.0 + z * z / 24.0 + z * z * z / 120.0;
  return (std::expm1(z) - z) / (z * z);
}

double symbol(const PeriodicGrid& grid, std::size_t i) {
  const double w = 2.0 * std::numbers::pi * grid.frequency_norm(i);
  return w * w;
}

/// Spectrum of Lap(p(rho_bar + n) - p(rho_bar) - p'(rho_bar) n).
Spectrum nonlinear(const ScalarField& n, const PressureLaw& law, double rho_bar) {
  const double p0 = law.p(rho_bar);
  const double c = law.dp(rho_bar);
  const ScalarField r =
      project(map(n, [&](double x) { return law.p(rho_bar + x) - p0 - c * x; }));
  Spectrum s(r.spectrum().begin(), r.spectrum().end());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] *= -symbol(n.grid(), i);
  return s;
}

void check_density(const ScalarField& N, double s) {
  for (double v : N.values()) {
    if (!std::isfinite(v)) throw SolverFailure("non-finite density", s);
  }
  const double lo = min_value(N);
  if (!(lo > kVacuumGuard)) {
    std::ostringstream os;
    os << "density fell to " << lo << ", at or below the vacuum guard";
    throw SolverFailure(os.str(), s);
  }
}

double perturbation_energy(const ScalarField& N, double rho_bar) {
  return std::pow(l2_norm(add_constant(N, -rho_bar)), 2);
}

}  // namespace

void PMEConfig::validate() const {
  if (!(s_end > 0.0) || !std::isfinite(s_end)) throw ConfigError("s_end must be positive");
  if (!(rho_bar > 0.0)) throw ConfigError("rho_bar must be positive");
  if (!(max_step > 0.0)) throw ConfigError("max_step must be positive");
  for (double t : snapshot_times) {
    if (!(t >= 0.0 && t <= s_end)) throw ConfigError("snapshot times must lie in [0, s_end]");
  }
}

ScalarField pme_step(const ScalarField& N, double ds, const PressureLaw& law, double rho_bar) {
  const auto& grid = N.grid();
  const double c = law.dp(rho_bar);
  const ScalarField n = project(add_constant(N, -rho_bar));
  const Spectrum Nn = nonlinear(n, law, rho_bar);
  Spectrum a(n.spectrum().begin(), n.spectrum().end());
  std::vector<double> e(grid.size()), f1(grid.size()), f2(grid.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double z = -c * symbol(grid, i) * ds;
    e[i] = std::exp(z);
    f1[i] = phi1(z);
    f2[i] = phi2(z);
    a[i] = e[i] * a[i] + ds * f1[i] * Nn[i];
  }
  const ScalarField af = ScalarField::from_spectrum(grid, a);
  const Spectrum Na = nonlinear(af, law, rho_bar);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += ds * f2[i] * (Na[i] - Nn[i]);
  a[0] += rho_bar;
  return ScalarField::from_spectrum(grid, std::move(a));
}

PMEResult solve_pme(const PMEConfig& cfg, const ScalarField& N0) {
  cfg.validate();
  if (!(N0.grid() == cfg.grid)) throw ConfigError("initial density lives on a different grid");
  if (!(min_value(N0) > kVacuumGuard)) throw ConfigError("initial density must be positive");

  PMEResult res;
  res.trajectory = Trajectory(TrajectoryMeta{0.0, cfg.law.gamma(), cfg.rho_bar, {"N"}});
  std::vector<double> targets;
  for (double t : cfg.snapshot_times) {
    if (t > 0.0) targets.push_back(t);
  }
  targets.push_back(cfg.s_end);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  ScalarField N = project(N0);
  double s = 0.0;
  res.trajectory.append(0.0, {N});
  double energy = perturbation_energy(N, cfg.rho_bar);
  res.max_energy_increase = -kInf;
  try {
    for (double target : targets) {
      const double span = target - s;
      const int n = std::max(1, static_cast<int>(std::ceil(span / cfg.max_step - 1e-9)));
      const double h = span / n;
      for (int j = 0; j < n; ++j) {
        N = pme_step(N, h, cfg.law, cfg.rho_bar);
        s = j + 1 == n ? target : s + h;
        ++res.steps;
        check_density(N, s);
        const double e = perturbation_energy(N, cfg.rho_bar);
        res.max_energy_increase = std::max(res.max_energy_increase, e - energy);
        energy = e;
      }
      res.trajectory.append(target, {N});
    }
  } catch (const SolverFailure& e) {
    res.failure = e.what();
    res.failure_time = e.time();
  }
  return res;
}

double linear_decay(const PressureLaw& law, double rho_bar, double xi, double s) {
  const double w = 2.0 * std::numbers::pi * xi;
  return std::exp(-law.dp(rho_bar) * w * w * s);
}

double mode_amplitude(const ScalarField& f, const Wavevector& k) {
  const auto i = f.grid().flat_index(k);
  const double c = std::abs(f.spectrum()[i]);
  return i == 0 ? c : 2.0 * c;
}

PMEBoundReport pme_besov_bound(const DyadicPartition& P, const Trajectory& traj, double sigma,
                               double r, double rho_bar) {
  if (traj.empty()) throw ConfigError("empty trajectory");
  PMEBoundReport out;
  const auto series = traj.component(0);
  out.initial_norm = besov_norm(P, add_constant(series.front(), -rho_bar), sigma, 2.0, r, false).value;
  for (const auto& N : series) {
    out.sup_norm =
        std::max(out.sup_norm, besov_norm(P, add_constant(N, -rho_bar), sigma, 2.0, r, false).value);
  }
  if (out.initial_norm == 0.0) {
    out.degenerate = true;
    out.ratio = 1.0;
  } else {
    out.ratio = out.sup_norm / out.initial_norm;
  }
  return out;
}

}  // namespace relaxlab
