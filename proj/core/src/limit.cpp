#include "relaxlab/limit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "relaxlab/error.hpp"
#include "relaxlab/io.hpp"
#include "relaxlab/parallel.hpp"

namespace relaxlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::optional<std::size_t> find_time(const Trajectory& t, double s) {
  const auto& ts = t.times();
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (std::abs(ts[k] - s) <= 1e-12 * std::max(1.0, std::abs(s))) return k;
  }
  return std::nullopt;
}

std::vector<OrderFit> fit_orders(const TauSweepConfig& cfg, const std::vector<TauRun>& runs,
                                 bool cross, double exclude_tau) {
  std::vector<OrderFit> out;
  for (std::size_t j = 0; j < cfg.comparison_times.size(); ++j) {
    OrderFit of;
    of.s = cfg.comparison_times[j];
    std::vector<double> x, y;
    for (const auto& run : runs) {
      const auto& errs = cross ? run.cross_errors : run.errors;
      if (j >= errs.size() || run.tau == exclude_tau) continue;
      if (std::isfinite(errs[j]) && errs[j] > 0.0) {
        x.push_back(run.tau);
        y.push_back(errs[j]);
      }
    }
    if (x.size() >= 2) {
      of.fit = power_law_fit(x, y);
      of.valid = true;
    }
    out.push_back(of);
  }
  return out;
}

std::vector<ScalarField> scaled(const std::vector<ScalarField>& series, double c) {
  std::vector<ScalarField> out;
  out.reserve(series.size());
  for (const auto& f : series) out.push_back(c * f);
  return out;
}

std::vector<ScalarField> derivatives(const std::vector<ScalarField>& series, int axis) {
  std::vector<ScalarField> out;
  out.reserve(series.size());
  for (const auto& f : series) out.push_back(derivative(f, axis));
  return out;
}

}  // namespace

void TauSweepConfig::validate() const {
  if (taus.empty()) throw ConfigError("tau list is empty");
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!(taus[i] > 0.0 && taus[i] <= 1.0)) throw ConfigError("tau values must lie in (0, 1]");
    if (i > 0 && !(taus[i] < taus[i - 1])) throw ConfigError("tau list must be strictly decreasing");
  }
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
  if (!(r >= 1.0)) throw ConfigError("r must lie in [1, inf]");
  if (!(s_end > 0.0)) throw ConfigError("s_end must be positive");
  if (!(snapshot_spacing > 0.0)) throw ConfigError("snapshot spacing must be positive");
  for (double s : comparison_times) {
    if (!(s > 0.0 && s <= s_end)) throw ConfigError("comparison times must lie in (0, s_end]");
  }
  if (reference_tau < 0.0 || reference_tau > 1.0) throw ConfigError("reference tau must lie in [0, 1]");
  if (reference == Reference::finest_euler && !(reference_tau > 0.0)) {
    throw ConfigError("an Euler reference needs reference_tau > 0");
  }
  if (reference_tau > 0.0 && !(reference_tau < taus.back())) {
    throw ConfigError("reference tau must be smaller than every swept tau");
  }
}

std::vector<double> TauSweepConfig::snapshot_times() const {
  std::vector<double> ts;
  const long n = std::lround(std::floor(s_end / snapshot_spacing + 1e-9));
  for (long k = 1; k <= n; ++k) ts.push_back(static_cast<double>(k) * snapshot_spacing);
  for (double c : comparison_times) {
    auto it = std::find_if(ts.begin(), ts.end(), [&](double t) { return std::abs(t - c) <= 1e-12; });
    if (it != ts.end()) *it = c; else ts.push_back(c);
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::remove_if(ts.begin(), ts.end(), [&](double t) { return t > s_end; }), ts.end());
  return ts;
}

SolverConfig TauSweepConfig::member(double tau) const {
  SolverConfig c;
  c.grid = grid;
  c.law = law;
  c.tau = tau;
  c.rho_bar = rho_bar;
  c.s_end = s_end;
  c.cfl = cfl;
  c.snapshot_times = snapshot_times();
  c.data = data;
  c.diagnostics_every = 1 << 30;
  return c;
}

PMEConfig TauSweepConfig::pme() const {
  PMEConfig c;
  c.grid = grid;
  c.law = law;
  c.rho_bar = rho_bar;
  c.s_end = s_end;
  c.snapshot_times = snapshot_times();
  c.max_step = pme_max_step;
  return c;
}

std::vector<double> comparison_errors(const DyadicPartition& P, const Trajectory& run,
                                      const Trajectory& reference, const TauSweepConfig& cfg) {
  std::vector<double> out;
  for (double s : cfg.comparison_times) {
    const auto i = find_time(run, s);
    const auto j = find_time(reference, s);
    if (!i || !j) {
      out.push_back(kNaN);
      continue;
    }
    const ScalarField diff = run.frame(*i).front() - reference.frame(*j).front();
    out.push_back(besov_norm(P, diff, cfg.sigma - cfg.delta, 2.0, cfg.r, false).value);
  }
  return out;
}

TauSweepResult run_sweep(const TauSweepConfig& cfg) {
  cfg.validate();
  const DyadicPartition P(cfg.grid);
  TauSweepResult res;
  res.config = cfg;

  std::vector<double> taus = cfg.taus;
  if (cfg.reference_tau > 0.0) taus.push_back(cfg.reference_tau);
  auto results = parallel_map(taus.size(), cfg.threads,
                              [&](std::size_t i) { return solve(cfg.member(taus[i])); });
  if (cfg.reference_tau > 0.0) {
    res.reference_run = std::move(results.back());
    results.pop_back();
  }
  const ScalarField N0 = initialize(cfg.member(cfg.taus.front())).rho;
  res.pme = solve_pme(cfg.pme(), N0);

  const Trajectory* primary = &res.pme.trajectory;
  const Trajectory* secondary = nullptr;
  if (res.reference_run) {
    if (cfg.reference == Reference::finest_euler) {
      primary = &res.reference_run->trajectory;
      secondary = &res.pme.trajectory;
    } else {
      secondary = &res.reference_run->trajectory;
    }
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    TauRun run;
    run.tau = cfg.taus[i];
    run.euler = std::move(results[i]);
    run.errors = comparison_errors(P, run.euler.trajectory, *primary, cfg);
    if (secondary) run.cross_errors = comparison_errors(P, run.euler.trajectory, *secondary, cfg);
    res.runs.push_back(std::move(run));
  }
  res.orders = fit_orders(cfg, res.runs, false, -1.0);
  if (secondary) res.cross_orders = fit_orders(cfg, res.runs, true, -1.0);
  return res;
}

AuditReport energy_inequality_audit(const TauSweepResult& result, double sigma, double r,
                                    double mu0) {
  const auto& cfg = result.config;
  const DyadicPartition P(cfg.grid);
  const int N = cfg.grid.dim();
  AuditReport rep;
  rep.mu0 = mu0;
  double min_ratio = kInf;
  double E_first = -1.0;
  double E_max = 0.0;
  for (const auto& run : result.runs) {
    if (run.euler.failure) continue;
    const double tau = run.tau;
    const Trajectory fast = run.euler.trajectory.rescaled_time(1.0 / tau);
    const auto& t = fast.times();
    const auto rho = fast.component(0);
    std::vector<ScalarField> drho;
    for (const auto& f : rho) drho.push_back(add_constant(f, -cfg.rho_bar));
    std::vector<std::vector<ScalarField>> m;
    for (int d = 0; d < N; ++d) m.push_back(scaled(fast.component(1 + d), tau));

    AuditRow row;
    row.tau = tau;
    row.T_end = cfg.s_end / tau;
    double energy = chemin_lerner_norm(P, t, drho, kInf, sigma, 2.0, r, false).value;
    double damp = 0.0;
    double grad = 0.0;
    for (int j = 0; j < N; ++j) {
      grad += chemin_lerner_norm(P, t, derivatives(drho, j), 2.0, sigma - 1.0, 2.0, r, false).value;
    }
    for (int d = 0; d < N; ++d) {
      energy += chemin_lerner_norm(P, t, m[d], kInf, sigma, 2.0, r, false).value;
      damp += chemin_lerner_norm(P, t, m[d], 2.0, sigma, 2.0, r, false).value;
      for (int j = 0; j < N; ++j) {
        grad += chemin_lerner_norm(P, t, derivatives(m[d], j), 2.0, sigma - 1.0, 2.0, r, false).value;
      }
    }
    row.lhs = energy + mu0 * (damp / std::sqrt(tau) + std::sqrt(tau) * grad);
    row.rhs = besov_norm(P, drho.front(), sigma, 2.0, r, false).value;
    for (int d = 0; d < N; ++d) row.rhs += besov_norm(P, m[d].front(), sigma, 2.0, r, false).value;
    row.functionals = energy_functionals(P, fast, sigma, r, tau, cfg.law.h_prime(cfg.rho_bar));
    const auto& fn = row.functionals;
    if (row.rhs == 0.0 || fn.E0 == 0.0) {
      rep.degenerate = true;
      rep.rows.push_back(row);
      continue;
    }
    row.ratio = row.lhs / row.rhs;
    row.nonlinear_ratio = (fn.E + fn.D) / (fn.E0 + std::sqrt(fn.E) * fn.D + fn.E * fn.D);
    row.linear_ratio = (fn.E + fn.D) / fn.E0;
    if (row.ratio > rep.C0) {
      rep.C0 = row.ratio;
      rep.C0_tau = tau;
    }
    min_ratio = std::min(min_ratio, row.ratio);
    rep.nonlinear_C = std::max(rep.nonlinear_C, row.nonlinear_ratio);
    rep.linear_C = std::max(rep.linear_C, row.linear_ratio);
    if (E_first < 0.0) E_first = fn.E;
    E_max = std::max(E_max, fn.E);
    rep.rows.push_back(row);
  }
  rep.spread = min_ratio > 0.0 && std::isfinite(min_ratio) ? rep.C0 / min_ratio : 0.0;
  rep.E_growth = E_first > 0.0 ? E_max / E_first : 0.0;
  rep.pme = pme_besov_bound(P, result.pme.trajectory, sigma, r, cfg.rho_bar);
  rep.pme_within_C0 = !rep.degenerate && rep.pme.ratio <= rep.C0;
  return rep;
}

std::string convergence_csv(const TauSweepResult& result) {
  std::ostringstream os;
  os << "tau,s,error\n";
  char buf[96];
  for (const auto& run : result.runs) {
    for (std::size_t j = 0; j < result.config.comparison_times.size(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", run.tau,
                    result.config.comparison_times[j], run.errors[j]);
      os << buf;
    }
  }
  return os.str();
}

std::string convergence_json(const TauSweepResult& result) {
  auto orders = [](const std::vector<OrderFit>& fits) {
    io::Json arr = io::Json::array();
    for (const auto& o : fits) {
      io::Json j{{"s", o.s}, {"valid", o.valid}};
      if (o.valid) {
        j["order"] = o.fit.slope;
        j["n"] = o.fit.n;
        j["r_squared"] = o.fit.r_squared;
        if (std::isfinite(o.fit.ci_low)) j["ci95"] = {o.fit.ci_low, o.fit.ci_high};
      }
      arr.push_back(j);
    }
    return arr;
  };
  io::Json runs = io::Json::array();
  for (const auto& run : result.runs) {
    io::Json j{{"tau", run.tau}, {"steps", run.euler.steps}};
    if (run.euler.failure) {
      j["failure"] = *run.euler.failure;
      j["failure_time"] = run.euler.failure_time;
    }
    runs.push_back(j);
  }
  io::Json doc{{"reference", result.config.reference == Reference::pme ? "pme" : "finest_euler"},
               {"sigma", result.config.sigma},
               {"r", result.config.r},
               {"delta", result.config.delta},
               {"orders", orders(result.orders)},
               {"runs", runs}};
  if (!result.cross_orders.empty()) doc["cross_orders"] = orders(result.cross_orders);
  return doc.dump(2) + "\n";
}

}  // namespace relaxlab
