#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "relaxlab/bony.hpp"
#include "relaxlab/error.hpp"
#include "relaxlab/limit.hpp"
#include "relaxlab/parallel.hpp"
#include "relaxlab/random_fields.hpp"

namespace relaxlab::cli {

void Logger::info(const std::string& msg) const {
  if (verbosity_ >= 1) std::cerr << "[info] " << msg << "\n";
}

void Logger::debug(const std::string& msg) const {
  if (verbosity_ >= 2) std::cerr << "[debug] " << msg << "\n";
}

namespace {

using io::Json;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Json json_number(double x) { return std::isfinite(x) ? Json(x) : Json(std::isnan(x) ? "nan" : "inf"); }

Json grid_json(const PeriodicGrid& g) {
  return {{"dim", g.dim()}, {"points", g.points()}, {"period", g.period()}};
}

ScalarField reconstruction(const DyadicPartition& P, const ScalarField& f, bool homogeneous) {
  ScalarField sum = homogeneous ? ScalarField::constant(P.grid(), mean(f)) : ScalarField::zero(P.grid());
  for (int q : block_range(P, homogeneous)) sum = sum + block(P, f, q, homogeneous);
  return sum;
}

Runner lp_verify(Reader& r, const Options& opt) {
  std::vector<PeriodicGrid> grids;
  for (auto& g : r.objects("grids")) grids.push_back(read_grid(g, PeriodicGrid(1, 64)));
  if (!r.has("grids")) grids = {PeriodicGrid(1, 64), PeriodicGrid(1, 256), PeriodicGrid(2, 128)};
  const int fields = r.integer("fields", 5);
  const double partition_tol = r.number("partition_tolerance", 1e-12);
  const double reconstruction_tol = r.number("reconstruction_tolerance", 1e-10);
  std::vector<DyadicPartition> parts;
  for (const auto& g : grids) parts.emplace_back(g);
  return [=](OutputDir& out, const Logger& log) {
    Json rows = Json::array();
    bool ok = true;
    for (const auto& P : parts) {
      const auto res = partition_residual(P);
      Rng rng(opt.seed);
      double rec_h = 0.0, rec_i = 0.0;
      for (int i = 0; i < fields; ++i) {
        const ScalarField f = project(add_constant(random_smooth_field(P.grid(), rng), 0.5));
        const double n = l2_norm(f);
        rec_h = std::max(rec_h, l2_norm(reconstruction(P, f, true) - f) / n);
        rec_i = std::max(rec_i, l2_norm(reconstruction(P, f, false) - f) / n);
      }
      const bool pass = res.homogeneous <= partition_tol && res.inhomogeneous <= partition_tol &&
                        rec_h <= reconstruction_tol && rec_i <= reconstruction_tol;
      ok = ok && pass;
      log.info("grid M=" + std::to_string(P.grid().points()) + " N=" + std::to_string(P.grid().dim()) +
               (pass ? " pass" : " FAIL"));
      rows.push_back({{"grid", grid_json(P.grid())},
                      {"q_min", P.q_min()},
                      {"q_max", P.q_max()},
                      {"partition_homogeneous", res.homogeneous},
                      {"partition_inhomogeneous", res.inhomogeneous},
                      {"scaling", res.scaling},
                      {"reconstruction_homogeneous", rec_h},
                      {"reconstruction_inhomogeneous", rec_i},
                      {"pass", pass}});
    }
    out.write_json("lp_verify.json", {{"partition_tolerance", partition_tol},
                                      {"reconstruction_tolerance", reconstruction_tol},
                                      {"grids", rows},
                                      {"pass", ok}});
    return ok ? kExitOk : kExitThreshold;
  };
}

ScalarField read_field_source(Reader f, const PeriodicGrid& grid, std::uint64_t seed) {
  const auto type = f.string("type", "random");
  if (type == "mode") {
    const auto k = f.integers("k", {1});
    Wavevector kv{0, 0, 0};
    if (static_cast<int>(k.size()) != grid.dim()) throw ConfigError(f.field("k") + ": needs one entry per dimension");
    for (std::size_t i = 0; i < k.size(); ++i) kv[i] = k[i];
    const double a = f.number("amplitude", 1.0);
    const double phase = f.number("phase", 0.0);
    f.finish();
    return pure_mode(grid, kv, a, phase);
  }
  if (type == "random") {
    const double decay = f.number("decay", 3.0);
    const int kmax = f.integer("kmax", 16);
    f.finish();
    Rng rng(seed);
    return random_smooth_field(grid, rng, decay, kmax);
  }
  if (type == "file") {
    const auto path = f.string("path", "");
    const int component = f.integer("component", 0);
    f.finish();
    const auto fields = io::read_fields(path);
    if (component < 0 || component >= static_cast<int>(fields.size())) {
      throw ConfigError(f.field("component") + ": out of range");
    }
    return fields[component];
  }
  throw ConfigError(f.field("type") + ": expected mode, random or file");
}

Runner norm(Reader& r, const Options& opt) {
  const PeriodicGrid grid = read_grid(r, "grid", PeriodicGrid(1, 256));
  const ScalarField f = read_field_source(r.object("field"), grid, opt.seed);
  const auto kind = r.string("kind", "besov");
  if (kind != "besov" && kind != "sobolev") throw ConfigError(r.field("kind") + ": expected besov or sobolev");
  const double s = r.number("s", 1.5);
  const double p = r.number("p", 2.0);
  const double rr = r.number("r", 1.0);
  const bool homogeneous = r.boolean("homogeneous", false);
  if (p != 2.0 && p != kInf) throw ConfigError(r.field("p") + ": supported values are 2 and \"inf\"");
  const DyadicPartition P(f.grid());
  return [=](OutputDir& out, const Logger&) {
    Json params{{"s", s}, {"grid", grid_json(f.grid())}};
    Json doc;
    if (kind == "sobolev") {
      doc = {{"op", "sobolev_norm"}, {"params", params}, {"value", sobolev_norm(f, s)}};
    } else {
      params["p"] = json_number(p);
      params["r"] = json_number(rr);
      params["homogeneous"] = homogeneous;
      doc = io::norm_record("besov_norm", params, besov_norm(P, f, s, p, rr, homogeneous));
    }
    out.write_json("norm.json", doc);
    return kExitOk;
  };
}

CommutatorSuiteConfig suite_config(Reader& r, const Options& opt) {
  CommutatorSuiteConfig c = read_commutator_config(r);
  c.seed = opt.seed;
  c.threads = opt.threads;
  return c;
}

Runner bony_verify(Reader& r, const Options& opt) {
  const PeriodicGrid grid = read_grid(r, "grid", PeriodicGrid(1, 512, 1.0));
  CommutatorSuiteConfig c = suite_config(r, opt);
  const double tol = r.number("tolerance", 1e-10);
  const DyadicPartition P(grid);
  const auto qs = r.integers("term_blocks", block_range(P, true));
  for (int q : qs) {
    if (q < P.q_min() || q > P.q_max()) throw ConfigError(r.field("term_blocks") + ": block " + std::to_string(q) + " outside the partition");
  }
  return [=](OutputDir& out, const Logger& log) {
    struct PairRow {
      double bony;
      std::vector<double> terms;
    };
    const auto rows = parallel_map(static_cast<std::size_t>(c.pairs), c.threads, [&](std::size_t i) {
      const auto [f, g] = suite_pair(grid, c, static_cast<int>(i));
      PairRow row{bony_split(P, f, g).residual, {}};
      for (int q : qs) row.terms.push_back(term_decomposition(P, f, g, q).residual);
      return row;
    });
    double max_bony = 0.0, max_terms = 0.0;
    Json pairs = Json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      double t = 0.0;
      for (double x : rows[i].terms) t = std::max(t, x);
      max_bony = std::max(max_bony, rows[i].bony);
      max_terms = std::max(max_terms, t);
      pairs.push_back({{"pair", i}, {"bony_residual", rows[i].bony}, {"term_residual", t}});
    }
    const bool ok = max_bony <= tol && max_terms <= tol;
    log.info("bony residual " + fmt(max_bony) + ", term residual " + fmt(max_terms));
    out.write_json("bony_verify.json", {{"grid", grid_json(grid)},
                                        {"tolerance", tol},
                                        {"term_blocks", qs},
                                        {"max_bony_residual", max_bony},
                                        {"max_term_residual", max_terms},
                                        {"pairs", pairs},
                                        {"pass", ok}});
    return ok ? kExitOk : kExitThreshold;
  };
}

Runner commutator_suite(Reader& r, const Options& opt) {
  const PeriodicGrid grid = read_grid(r, "grid", PeriodicGrid(1, 512, 1.0));
  CommutatorSuiteConfig c = suite_config(r, opt);
  const double tol = r.number("tolerance", 1e-10);
  if (c.s <= -1.0 || c.p != 2.0) throw ConfigError(r.field("s") + ": the suite needs s > -1 and p = 2");
  const DyadicPartition P(grid);
  return [=](OutputDir& out, const Logger& log) {
    const auto res = commutator_estimate_suite(P, c);
    std::ostringstream csv;
    csv << "pair,q,comm_norm,bound_rhs,ratio\n";
    Json pairs = Json::array();
    for (const auto& pr : res.pairs) {
      for (const auto& rep : pr.reports) {
        csv << pr.pair << "," << rep.q << "," << fmt(rep.comm_norm) << "," << fmt(rep.bound_rhs) << ","
            << fmt(rep.ratio) << "\n";
      }
      pairs.push_back({{"pair", pr.pair}, {"ratio_lr", pr.ratio_lr}, {"term_residual", pr.max_term_residual}});
    }
    const bool ok = std::isfinite(res.sup_ratio_lr) && (!c.with_terms || res.max_term_residual <= tol);
    log.info("sup l^r ratio " + fmt(res.sup_ratio_lr));
    out.write("commutator_ratios.csv", csv.str());
    out.write_json("commutator_suite.json", {{"grid", grid_json(grid)},
                                             {"s", c.s},
                                             {"r", json_number(c.r)},
                                             {"homogeneous", c.homogeneous},
                                             {"sup_ratio_lr", json_number(res.sup_ratio_lr)},
                                             {"sup_ratio", json_number(res.sup_ratio)},
                                             {"max_term_residual", res.max_term_residual},
                                             {"tolerance", tol},
                                             {"pairs", pairs},
                                             {"pass", ok}});
    return ok ? kExitOk : kExitThreshold;
  };
}

Runner sk_verify(Reader& r, const Options& opt) {
  const auto dims = r.integers("dims", {1, 2, 3});
  const auto gammas = r.numbers("gammas", {1.0, 1.4, 2.0});
  const double rho_bar = r.number("rho_bar", 1.0);
  const int directions = r.integer("directions", 200);
  const double tol = r.number("tolerance", 1e-13);
  for (int N : dims) {
    if (N < 1 || N > kMaxDim) throw ConfigError(r.field("dims") + ": dimensions must lie in 1..3");
  }
  if (!(rho_bar > 0.0)) throw ConfigError(r.field("rho_bar") + ": must be positive");
  if (directions < 1) throw ConfigError(r.field("directions") + ": must be positive");
  std::vector<PressureLaw> laws;
  for (double g : gammas) {
    try {
      laws.emplace_back(g);
    } catch (const Error& e) {
      throw ConfigError(r.field("gammas") + ": " + e.what());
    }
  }
  return [=](OutputDir& out, const Logger& log) {
    Json cases = Json::array();
    double max_skew = 0.0, max_sk = 0.0;
    for (int N : dims) {
      for (const auto& law : laws) {
        const auto sw = sk_sweep(N, law, rho_bar, directions, opt.seed);
        max_skew = std::max(max_skew, sw.max_skew);
        max_sk = std::max(max_sk, sw.max_sk);
        cases.push_back({{"N", N}, {"gamma", law.gamma()}, {"skew_residual", sw.max_skew}, {"sk_residual", sw.max_sk}});
        log.debug("N=" + std::to_string(N) + " gamma=" + fmt(law.gamma()) + " sk " + fmt(sw.max_sk));
      }
    }
    const PressureLaw law2(2.0);
    Vec xi(1);
    xi << 1.0;
    const Mat KA1 = compensating_matrix(xi, law2, 1.0) * matrices_at_density(1.0, Vec::Zero(1), law2, 1.0).A[0];
    Mat expected(2, 2);
    expected << 1.0, 0.0, 0.0, -2.0;
    const double hand = (KA1 - expected).cwiseAbs().maxCoeff();
    const bool ok = max_skew < tol && max_sk < tol && hand == 0.0;
    out.write_json("sk_verify.json", {{"rho_bar", rho_bar},
                                      {"directions", directions},
                                      {"tolerance", tol},
                                      {"cases", cases},
                                      {"max_skew_residual", max_skew},
                                      {"max_sk_residual", max_sk},
                                      {"KA1_N1_gamma2", {{KA1(0, 0), KA1(0, 1)}, {KA1(1, 0), KA1(1, 1)}}},
                                      {"KA1_deviation", hand},
                                      {"pass", ok}});
    return ok ? kExitOk : kExitThreshold;
  };
}

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& diags) {
  std::ostringstream os;
  os << "s,mass,rel_entropy,dissipation,balance_residual,sup_W,sup_gradW,blowup_integral\n";
  for (const auto& d : diags) {
    os << fmt(d.s) << "," << fmt(d.mass) << "," << fmt(d.rel_entropy) << "," << fmt(d.dissipation) << ","
       << fmt(d.balance_residual) << "," << fmt(d.sup_W) << "," << fmt(d.sup_gradW) << ","
       << fmt(d.blowup_integral) << "\n";
  }
  return os.str();
}

/// All frames of a trajectory, frame-major.
std::vector<ScalarField> flatten(const Trajectory& t) {
  std::vector<ScalarField> out;
  for (std::size_t k = 0; k < t.size(); ++k) {
    for (const auto& f : t.frame(k)) out.push_back(f);
  }
  return out;
}

Json trajectory_json(const Trajectory& t) {
  return {{"file", "trajectory.rlx"},
          {"layout", "frame-major"},
          {"labels", t.meta().labels},
          {"times", t.times()}};
}

Runner solve_euler(Reader& r, const Options& opt) {
  SolverConfig cfg = read_solver_config(r);
  cfg.data.seed = opt.seed;
  const double sigma = r.number("sigma", 1.5);
  const double rr = r.number("r", 1.0);
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("solver config: ") + e.what());
  }
  return [=](OutputDir& out, const Logger& log) {
    const auto res = solve(cfg);
    const DyadicPartition P(cfg.grid);
    const double n0 = initial_data_norm(P, initialize(cfg), cfg.rho_bar, cfg.tau, sigma, rr);
    Json summary{{"tau", cfg.tau},
                 {"gamma", cfg.law.gamma()},
                 {"steps", res.steps},
                 {"max_step_used", res.max_step_used},
                 {"min_transport_cap", json_number(res.min_caps.transport)},
                 {"min_acoustic_cap", json_number(res.min_caps.acoustic)},
                 {"initial_norm", n0},
                 {"trajectory", trajectory_json(res.trajectory)}};
    if (!res.diagnostics.empty()) {
      const auto& d0 = res.diagnostics.front();
      const auto& d1 = res.diagnostics.back();
      summary["mass_drift"] = std::abs(d1.mass - d0.mass) / d0.mass;
      const double scale = std::max(d0.rel_entropy, d1.dissipation);
      summary["balance_relative"] = scale > 0.0 ? std::abs(d1.balance_residual) / scale : 0.0;
    }
    if (res.failure) {
      summary["failure"] = *res.failure;
      summary["failure_time"] = res.failure_time;
    }
    log.info("steps " + std::to_string(res.steps) + (res.failure ? ", failed: " + *res.failure : ""));
    out.write_fields("trajectory.rlx", flatten(res.trajectory));
    out.write("diagnostics.csv", diagnostics_csv(res.diagnostics));
    out.write_json("summary.json", summary);
    return res.failure ? kExitThreshold : kExitOk;
  };
}

Runner solve_pme_cmd(Reader& r, const Options& opt) {
  PMEConfig cfg = read_pme_config(r);
  InitialData data = read_initial_data(r, "initial_data", InitialData{});
  data.seed = opt.seed;
  const auto modes = r.integers("check_modes", {1, 2, 3});
  const double mode_tol = r.number("mode_tolerance", 0.02);
  const double sigma = r.number("sigma", 1.5);
  const double rr = r.number("r", 1.0);
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("pme config: ") + e.what());
  }
  return [=](OutputDir& out, const Logger& log) {
    SolverConfig sc;
    sc.grid = cfg.grid;
    sc.law = cfg.law;
    sc.rho_bar = cfg.rho_bar;
    sc.data = data;
    const ScalarField N0 = initialize(sc).rho;
    const auto res = solve_pme(cfg, N0);
    const DyadicPartition P(cfg.grid);
    const auto bound = pme_besov_bound(P, res.trajectory, sigma, rr, cfg.rho_bar);
    Json checks = Json::array();
    bool ok = !res.failure;
    const auto& t = res.trajectory;
    const double floor = 1e-8 * linf_norm(add_constant(t.frame(0).front(), -cfg.rho_bar));
    for (int k : modes) {
      Wavevector kv{k, 0, 0};
      const double a0 = mode_amplitude(t.frame(0).front(), kv);
      if (!(a0 > floor)) continue;
      double worst = 0.0;
      for (std::size_t j = 1; j < t.size(); ++j) {
        const double xi = k / cfg.grid.period();
        const double pred = a0 * linear_decay(cfg.law, cfg.rho_bar, xi, t.times()[j]);
        worst = std::max(worst, std::abs(mode_amplitude(t.frame(j).front(), kv) / pred - 1.0));
      }
      ok = ok && worst <= mode_tol;
      checks.push_back({{"k", k}, {"initial_amplitude", a0}, {"max_relative_deviation", worst}});
    }
    Json summary{{"steps", res.steps},
                 {"max_energy_increase", res.max_energy_increase},
                 {"mode_tolerance", mode_tol},
                 {"mode_checks", checks},
                 {"besov_bound", {{"sup_norm", bound.sup_norm}, {"initial_norm", bound.initial_norm},
                                  {"ratio", bound.ratio}, {"degenerate", bound.degenerate}}},
                 {"trajectory", trajectory_json(t)},
                 {"pass", ok}};
    if (res.failure) {
      summary["failure"] = *res.failure;
      summary["failure_time"] = res.failure_time;
    }
    log.info("pme steps " + std::to_string(res.steps));
    out.write_fields("trajectory.rlx", flatten(t));
    out.write_json("summary.json", summary);
    return ok ? kExitOk : kExitThreshold;
  };
}

TauSweepConfig sweep_config(Reader& r, const Options& opt) {
  TauSweepConfig cfg = read_sweep_config(r);
  cfg.data.seed = opt.seed;
  cfg.threads = opt.threads;
  cfg.validate();
  return cfg;
}

Runner tau_sweep(Reader& r, const Options& opt) {
  const TauSweepConfig cfg = sweep_config(r, opt);
  return [=](OutputDir& out, const Logger& log) {
    log.info("running " + std::to_string(cfg.taus.size()) + " members");
    const auto res = run_sweep(cfg);
    for (const auto& run : res.runs) {
      log.debug("tau " + fmt(run.tau) + " steps " + std::to_string(run.euler.steps));
    }
    out.write("convergence.csv", convergence_csv(res));
    out.write("orders.json", convergence_json(res));
    return kExitOk;
  };
}

Runner audit_energy(Reader& r, const Options& opt) {
  const TauSweepConfig cfg = sweep_config(r, opt);
  const double mu0 = r.number("mu0", 1.0);
  const double max_spread = r.number("max_spread", 1.3);
  if (!(mu0 > 0.0)) throw ConfigError(r.field("mu0") + ": must be positive");
  return [=](OutputDir& out, const Logger& log) {
    const auto res = run_sweep(cfg);
    const auto a = energy_inequality_audit(res, cfg.sigma, cfg.r, mu0);
    Json rows = Json::array();
    for (const auto& row : a.rows) {
      rows.push_back({{"tau", row.tau},
                      {"T_end", row.T_end},
                      {"lhs", row.lhs},
                      {"rhs", row.rhs},
                      {"ratio", row.ratio},
                      {"E", row.functionals.E},
                      {"D", row.functionals.D},
                      {"S", row.functionals.S},
                      {"E0", row.functionals.E0},
                      {"nonlinear_ratio", row.nonlinear_ratio},
                      {"linear_ratio", row.linear_ratio}});
    }
    const bool ok = !a.degenerate && a.spread <= max_spread && a.pme_within_C0;
    log.info("C0 " + fmt(a.C0) + " spread " + fmt(a.spread));
    out.write_json("audit.json", {{"mu0", mu0},
                                  {"sigma", cfg.sigma},
                                  {"r", json_number(cfg.r)},
                                  {"rows", rows},
                                  {"degenerate", a.degenerate},
                                  {"C0", a.C0},
                                  {"C0_tau", a.C0_tau},
                                  {"spread", a.spread},
                                  {"max_spread", max_spread},
                                  {"nonlinear_C", a.nonlinear_C},
                                  {"linear_C", a.linear_C},
                                  {"E_growth", a.E_growth},
                                  {"pme", {{"sup_norm", a.pme.sup_norm}, {"initial_norm", a.pme.initial_norm},
                                           {"ratio", a.pme.ratio}, {"degenerate", a.pme.degenerate}}},
                                  {"pme_within_C0", a.pme_within_C0},
                                  {"pass", ok}});
    return ok ? kExitOk : kExitThreshold;
  };
}

}  // namespace

const std::vector<Command>& commands() {
  static const std::vector<Command> table{
      {"lp-verify", "Check the Littlewood-Paley partition of unity and block reconstruction", lp_verify},
      {"norm", "Evaluate a Besov or Sobolev norm of one field", norm},
      {"bony-verify", "Check the Bony split and the commutator term decomposition", bony_verify},
      {"commutator-suite", "Normalized commutator sequences over a random suite", commutator_suite},
      {"sk-verify", "Shizuta-Kawashima identities over random directions", sk_verify},
      {"solve-euler", "Solve the relaxed Euler system in slow time", solve_euler},
      {"solve-pme", "Solve the porous medium equation", solve_pme_cmd},
      {"tau-sweep", "Relaxation-limit sweep over tau with fitted orders", tau_sweep},
      {"audit-energy", "Uniform energy inequality audit across a tau sweep", audit_energy},
  };
  return table;
}

}  // namespace relaxlab::cli
