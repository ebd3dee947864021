#include "relaxlab/euler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "relaxlab/error.hpp"

namespace relaxlab {

namespace {

std::string axis_label(const char* base, int d) { return std::string(base) + "_" + std::to_string(d); }

ScalarField axpy(const ScalarField& y, double a, const ScalarField& x) {
  Spectrum s(y.spectrum().begin(), y.spectrum().end());
  const auto c = x.spectrum();
  for (std::size_t i = 0; i < s.size(); ++i) s[i] += a * c[i];
  return ScalarField::from_spectrum(y.grid(), std::move(s));
}

struct Rate {
  ScalarField rho;
  VectorField u;
};

Rate transport_rate(const ScalarField& rho, const VectorField& u) {
  const auto& grid = rho.grid();
  const int N = grid.dim();
  Rate out{-divergence(u), {}};
  for (int i = 0; i < N; ++i) {
    VectorField flux;
    for (int j = 0; j < N; ++j) {
      std::vector<double> v(grid.size());
      for (std::size_t k = 0; k < v.size(); ++k) v[k] = u[i][k] * u[j][k] / rho[k];
      flux.push_back(project(ScalarField(grid, std::move(v))));
    }
    out.u.push_back(-divergence(flux));
  }
  return out;
}

EulerState advance(const EulerState& st, double h, const Rate& k) {
  EulerState out{axpy(st.rho, h, k.rho), {}, st.s};
  for (std::size_t d = 0; d < st.u.size(); ++d) out.u.push_back(axpy(st.u[d], h, k.u[d]));
  return out;
}

/// W = (h'(rho) - |m|^2 / (2 rho^2), m / rho) with m = tau u.
std::vector<ScalarField> entropy_variables(const EulerState& st, const PressureLaw& law, double tau) {
  const auto& grid = st.rho.grid();
  const int N = grid.dim();
  std::vector<std::vector<double>> w(N + 1, std::vector<double>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double rho = st.rho[i];
    if (!(rho > kVacuumGuard)) {
      std::ostringstream os;
      os << "density " << rho << " at or below the vacuum guard at grid point " << i;
      throw SolverFailure(os.str(), st.s);
    }
    double m2 = 0.0;
    for (int d = 0; d < N; ++d) {
      const double m = tau * st.u[d][i];
      w[d + 1][i] = m / rho;
      m2 += m * m;
    }
    w[0][i] = law.h_prime(rho) - m2 / (2.0 * rho * rho);
  }
  std::vector<ScalarField> out;
  for (auto& v : w) out.emplace_back(grid, std::move(v));
  return out;
}

double sup_euclidean(const std::vector<ScalarField>& comps, const std::vector<double>& shift) {
  double best = 0.0;
  const std::size_t n = comps.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t a = 0; a < comps.size(); ++a) {
      const double v = comps[a][i] - shift[a];
      s += v * v;
    }
    best = std::max(best, s);
  }
  return std::sqrt(best);
}

double sup_gradient(const std::vector<ScalarField>& comps) {
  std::vector<ScalarField> grads;
  for (const auto& c : comps) {
    for (auto& g : gradient(c)) grads.push_back(std::move(g));
  }
  return sup_euclidean(grads, std::vector<double>(grads.size(), 0.0));
}

void check_state(const EulerState& st) {
  for (double v : st.rho.values()) {
    if (!std::isfinite(v)) throw SolverFailure("non-finite density", st.s);
  }
  for (const auto& c : st.u) {
    for (double v : c.values()) {
      if (!std::isfinite(v)) throw SolverFailure("non-finite momentum", st.s);
    }
  }
  const double lo = min_value(st.rho);
  if (!(lo > kVacuumGuard)) {
    std::ostringstream os;
    os << "density fell to " << lo << ", at or below the vacuum guard";
    throw SolverFailure(os.str(), st.s);
  }
}

}  // namespace

void SolverConfig::validate() const {
  if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError("tau must lie in (0, 1]");
  if (!(s_end > 0.0) || !std::isfinite(s_end)) throw ConfigError("s_end must be positive");
  if (!(cfl > 0.0 && cfl < 1.0)) throw ConfigError("cfl must lie in (0, 1)");
  if (!(rho_bar > 0.0)) throw ConfigError("rho_bar must be positive");
  if (max_step < 0.0) throw ConfigError("max_step must be nonnegative");
  if (diagnostics_every < 1) throw ConfigError("diagnostics_every must be at least 1");
  if (grid.dim() > 2) throw ConfigError("the solver runs in one or two dimensions");
  for (double t : snapshot_times) {
    if (!(t >= 0.0 && t <= s_end)) throw ConfigError("snapshot times must lie in [0, s_end]");
  }
  if (data.modes < 1) throw ConfigError("initial data needs at least one mode");
}

ScalarField initial_profile(const PeriodicGrid& grid, const InitialData& data) {
  const double k0 = 2.0 * std::numbers::pi / grid.period();
  std::vector<double> v(grid.size(), 0.0);
  switch (data.kind) {
    case DataKind::equilibrium:
      break;
    case DataKind::single_mode:
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(k0 * grid.coordinate(i)[0]);
      break;
    case DataKind::multi_mode: {
      std::mt19937_64 rng(data.seed);
      std::uniform_real_distribution<double> amp(0.5, 1.0);
      std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
      for (int d = 0; d < grid.dim(); ++d) {
        for (int k = 1; k <= data.modes; ++k) {
          const double c = amp(rng) / k;
          const double ph = phase(rng);
          for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] += c * std::sin(k0 * k * grid.coordinate(i)[d] + ph);
          }
        }
      }
      break;
    }
  }
  return ScalarField(grid, std::move(v));
}

EulerState initialize(const SolverConfig& cfg) {
  cfg.validate();
  const auto& grid = cfg.grid;
  const ScalarField chi = initial_profile(grid, cfg.data);
  const ScalarField rho =
      project(add_constant(cfg.rho_bar * cfg.data.amplitude * chi, cfg.rho_bar));
  const double lo = min_value(rho);
  if (!(lo > kVacuumGuard)) {
    std::ostringstream os;
    os << "initial density reaches " << lo << "; it must stay positive";
    throw ConfigError(os.str());
  }
  EulerState st{rho, {}, 0.0};
  switch (cfg.data.preparation) {
    case Preparation::ill:
      for (int d = 0; d < grid.dim(); ++d) st.u.push_back(ScalarField::zero(grid));
      break;
    case Preparation::well:
      for (auto& g : gradient(project(map(rho, [&](double r) { return cfg.law.p(r); })))) {
        st.u.push_back(-g);
      }
      break;
    case Preparation::gradient:
      for (auto& g : gradient(chi)) {
        st.u.push_back((cfg.data.amplitude / cfg.tau) * product(rho, g));
      }
      break;
  }
  return st;
}

EulerState relax(const EulerState& st, double ds, const PressureLaw& law, double tau) {
  const VectorField g = gradient(project(map(st.rho, [&](double r) { return law.p(r); })));
  const double e = std::exp(-ds / (tau * tau));
  EulerState out{st.rho, {}, st.s};
  for (std::size_t d = 0; d < st.u.size(); ++d) {
    Spectrum s(st.u[d].spectrum().begin(), st.u[d].spectrum().end());
    const auto gc = g[d].spectrum();
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = e * (s[i] + gc[i]) - gc[i];
    out.u.push_back(ScalarField::from_spectrum(st.rho.grid(), std::move(s)));
  }
  return out;
}

EulerState transport(const EulerState& st, double ds) {
  const Rate k1 = transport_rate(st.rho, st.u);
  const EulerState s2 = advance(st, 0.5 * ds, k1);
  const Rate k2 = transport_rate(s2.rho, s2.u);
  const EulerState s3 = advance(st, 0.5 * ds, k2);
  const Rate k3 = transport_rate(s3.rho, s3.u);
  const EulerState s4 = advance(st, ds, k3);
  const Rate k4 = transport_rate(s4.rho, s4.u);

  Spectrum r(st.rho.spectrum().begin(), st.rho.spectrum().end());
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] += ds / 6.0 *
            (k1.rho.spectrum()[i] + 2.0 * k2.rho.spectrum()[i] + 2.0 * k3.rho.spectrum()[i] +
             k4.rho.spectrum()[i]);
  }
  EulerState out{ScalarField::from_spectrum(st.rho.grid(), std::move(r)), {}, st.s + ds};
  for (std::size_t d = 0; d < st.u.size(); ++d) {
    Spectrum s(st.u[d].spectrum().begin(), st.u[d].spectrum().end());
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] += ds / 6.0 *
              (k1.u[d].spectrum()[i] + 2.0 * k2.u[d].spectrum()[i] + 2.0 * k3.u[d].spectrum()[i] +
               k4.u[d].spectrum()[i]);
    }
    out.u.push_back(ScalarField::from_spectrum(st.rho.grid(), std::move(s)));
  }
  return out;
}

EulerState step(const EulerState& st, double ds, const SolverConfig& cfg) {
  if (!(ds > 0.0)) throw ConfigError("step size must be positive");
  EulerState a = relax(st, 0.5 * ds, cfg.law, cfg.tau);
  check_state(a);
  EulerState b = transport(a, ds);
  check_state(b);
  EulerState c = relax(b, 0.5 * ds, cfg.law, cfg.tau);
  check_state(c);
  return c;
}

StepCaps step_caps(const EulerState& st, const SolverConfig& cfg) {
  const auto& grid = st.rho.grid();
  double vmax = 0.0;
  double cmax = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double u2 = 0.0;
    for (const auto& c : st.u) u2 += c[i] * c[i];
    vmax = std::max(vmax, std::sqrt(u2) / st.rho[i]);
    cmax = std::max(cmax, cfg.law.dp(st.rho[i]));
  }
  StepCaps caps;
  const double dx = grid.spacing();
  if (vmax > 0.0) caps.transport = cfg.cfl * dx / vmax;
  if (cmax > 0.0) caps.acoustic = cfg.cfl * cfg.tau * dx / std::sqrt(cmax);
  return caps;
}

double relative_entropy_integral(const EulerState& st, const PressureLaw& law, double rho_bar,
                                 double tau) {
  const auto& grid = st.rho.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double m2 = 0.0;
    for (const auto& c : st.u) m2 += tau * tau * c[i] * c[i];
    sum += m2 / (2.0 * st.rho[i]) + law.h_bregman(st.rho[i], rho_bar);
  }
  return sum * grid.volume() / static_cast<double>(grid.size());
}

double dissipation_rate(const EulerState& st) {
  const auto& grid = st.rho.grid();
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double u2 = 0.0;
    for (const auto& c : st.u) u2 += c[i] * c[i];
    sum += u2 / st.rho[i];
  }
  return sum * grid.volume() / static_cast<double>(grid.size());
}

EulerResult solve(const SolverConfig& cfg) {
  cfg.validate();
  const int N = cfg.grid.dim();
  TrajectoryMeta meta{cfg.tau, cfg.law.gamma(), cfg.rho_bar, {"rho"}};
  for (int d = 0; d < N; ++d) meta.labels.push_back(axis_label("u", d));
  meta.labels.push_back("W1");
  for (int d = 0; d < N; ++d) meta.labels.push_back(axis_label("W2", d));

  EulerResult res;
  res.trajectory = Trajectory(meta);

  std::vector<double> targets;
  for (double t : cfg.snapshot_times) {
    if (t > 0.0) targets.push_back(t);
  }
  targets.push_back(cfg.s_end);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  std::vector<double> wbar(N + 1, 0.0);
  wbar[0] = cfg.law.h_prime(cfg.rho_bar);

  EulerState st = initialize(cfg);
  auto W = entropy_variables(st, cfg.law, cfg.tau);
  const double eta0 = relative_entropy_integral(st, cfg.law, cfg.rho_bar, cfg.tau);
  double rate = dissipation_rate(st);
  double grad_sup = sup_gradient(W);
  DiagnosticsRecord diag{0.0, integral(st.rho), eta0, 0.0, 0.0, sup_euclidean(W, wbar), grad_sup, 0.0};
  res.diagnostics.push_back(diag);

  auto snapshot = [&](const EulerState& s, std::vector<ScalarField> w) {
    std::vector<ScalarField> frame{s.rho};
    frame.insert(frame.end(), s.u.begin(), s.u.end());
    frame.insert(frame.end(), std::make_move_iterator(w.begin()), std::make_move_iterator(w.end()));
    res.trajectory.append(s.s, std::move(frame));
  };
  snapshot(st, W);

  try {
    std::size_t since_record = 0;
    for (double target : targets) {
      while (st.s < target) {
        const StepCaps caps = step_caps(st, cfg);
        res.min_caps.transport = std::min(res.min_caps.transport, caps.transport);
        res.min_caps.acoustic = std::min(res.min_caps.acoustic, caps.acoustic);
        double h = std::min(caps.transport, caps.acoustic);
        if (cfg.max_step > 0.0) h = std::min(h, cfg.max_step);
        const double remaining = target - st.s;
        if (h >= remaining || remaining - h < 1e-6 * h) h = remaining;
        EulerState next = step(st, h, cfg);
        if (h == remaining) next.s = target;
        st = std::move(next);
        ++res.steps;
        res.max_step_used = std::max(res.max_step_used, h);

        W = entropy_variables(st, cfg.law, cfg.tau);
        const double rate_new = dissipation_rate(st);
        const double grad_new = sup_gradient(W);
        diag.dissipation += 0.5 * h * (rate + rate_new);
        diag.blowup_integral += 0.5 * h * (grad_sup + grad_new);
        rate = rate_new;
        grad_sup = grad_new;
        ++since_record;
        const bool at_target = st.s == target;
        if (since_record >= static_cast<std::size_t>(cfg.diagnostics_every) ||
            (at_target && target == targets.back())) {
          diag.s = st.s;
          diag.mass = integral(st.rho);
          diag.rel_entropy = relative_entropy_integral(st, cfg.law, cfg.rho_bar, cfg.tau);
          diag.balance_residual = diag.rel_entropy - eta0 + diag.dissipation;
          diag.sup_W = sup_euclidean(W, wbar);
          diag.sup_gradW = grad_sup;
          res.diagnostics.push_back(diag);
          since_record = 0;
        }
      }
      snapshot(st, W);
    }
  } catch (const SolverFailure& e) {
    res.failure = e.what();
    res.failure_time = e.time();
  } catch (const DomainError& e) {
    res.failure = e.what();
    res.failure_time = st.s;
  }
  return res;
}

double initial_data_norm(const DyadicPartition& P, const EulerState& st, double rho_bar, double tau,
                         double sigma, double r) {
  double n = besov_norm(P, add_constant(st.rho, -rho_bar), sigma, 2.0, r, false).value;
  for (const auto& c : st.u) n += besov_norm(P, tau * c, sigma, 2.0, r, false).value;
  return n;
}

EnergyFunctionals energy_functionals(const DyadicPartition& P, const Trajectory& traj, double sigma,
                                     double r, double tau, double W1_bar) {
  if (traj.empty()) throw ConfigError("energy functionals need a nonempty trajectory");
  const int N = traj.grid().dim();
  std::vector<std::vector<ScalarField>> W;
  W.push_back(traj.component(traj.component_index("W1")));
  for (int d = 0; d < N; ++d) W.push_back(traj.component(traj.component_index(axis_label("W2", d))));
  const auto& times = traj.times();

  EnergyFunctionals out;
  std::vector<ScalarField> shifted;
  for (const auto& f : W[0]) shifted.push_back(add_constant(f, -W1_bar));
  out.E = chemin_lerner_norm(P, times, shifted, kInf, sigma, 2.0, r, false).value;
  out.E0 = besov_norm(P, shifted.front(), sigma, 2.0, r, false).value;
  for (int d = 1; d <= N; ++d) {
    out.E += chemin_lerner_norm(P, times, W[d], kInf, sigma, 2.0, r, false).value;
    out.E0 += besov_norm(P, W[d].front(), sigma, 2.0, r, false).value;
  }

  if (traj.size() >= 2) {
    double w2 = 0.0;
    for (int d = 1; d <= N; ++d) w2 += chemin_lerner_norm(P, times, W[d], 2.0, sigma, 2.0, r, false).value;
    double gw = 0.0;
    for (const auto& comp : W) {
      for (int j = 0; j < N; ++j) {
        std::vector<ScalarField> dj;
        for (const auto& f : comp) dj.push_back(derivative(f, j));
        gw += chemin_lerner_norm(P, times, dj, 2.0, sigma - 1.0, 2.0, r, false).value;
      }
    }
    out.D = w2 / std::sqrt(tau) + std::sqrt(tau) * gw;
  }

  std::vector<double> zero(N + 1, 0.0);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    std::vector<ScalarField> frame;
    for (const auto& comp : W) frame.push_back(comp[k]);
    out.S = std::max(out.S, sup_euclidean(frame, zero) + sup_gradient(frame));
  }
  return out;
}

}  // namespace relaxlab
