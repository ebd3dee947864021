#include "config_reader.hpp"

#include <cmath>

#include "relaxlab/error.hpp"

namespace relaxlab::cli {

namespace {

double json_number(const io::Json& v, const std::string& where) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "infinity") return kInf;
  }
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + ": expected a finite number");
  return x;
}

}  // namespace

Reader::Reader(const io::Json& j, std::string path) : j_(j), path_(std::move(path)) {
  if (!j_.is_object()) throw ConfigError((path_.empty() ? std::string("config") : path_) + ": expected an object");
}

std::string Reader::field(const std::string& key) const {
  return "field '" + (path_.empty() ? key : path_ + "." + key) + "'";
}

std::string Reader::self() const { return "field '" + (path_.empty() ? std::string("config") : path_) + "'"; }

bool Reader::has(const std::string& key) const { return j_.contains(key); }

const io::Json* Reader::find(const std::string& key) {
  auto it = j_.find(key);
  if (it == j_.end() || it->is_null()) return nullptr;
  used_.insert(key);
  return &*it;
}

double Reader::number(const std::string& key, double fallback) {
  const auto* v = find(key);
  return v ? json_number(*v, field(key)) : fallback;
}

int Reader::integer(const std::string& key, int fallback) {
  const auto* v = find(key);
  if (!v) return fallback;
  if (!v->is_number_integer()) throw ConfigError(field(key) + ": expected an integer");
  return v->get<int>();
}

std::uint64_t Reader::unsigned_integer(const std::string& key, std::uint64_t fallback) {
  const auto* v = find(key);
  if (!v) return fallback;
  if (!v->is_number_unsigned()) throw ConfigError(field(key) + ": expected a nonnegative integer");
  return v->get<std::uint64_t>();
}

bool Reader::boolean(const std::string& key, bool fallback) {
  const auto* v = find(key);
  if (!v) return fallback;
  if (!v->is_boolean()) throw ConfigError(field(key) + ": expected true or false");
  return v->get<bool>();
}

std::string Reader::string(const std::string& key, const std::string& fallback) {
  const auto* v = find(key);
  if (!v) return fallback;
  if (!v->is_string()) throw ConfigError(field(key) + ": expected a string");
  return v->get<std::string>();
}

std::vector<double> Reader::numbers(const std::string& key, const std::vector<double>& fallback) {
  const auto* v = find(key);
  if (!v) return fallback;
  if (!v->is_array()) throw ConfigError(field(key) + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v->size(); ++i) {
    out.push_back(json_number((*v)[i], field(key) + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<int> Reader::integers(const std::string& key, const std::vector<int>& fallback) {
  const auto* v = find(key);
  if (!v) return fallback;
  if (!v->is_array()) throw ConfigError(field(key) + ": expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v->size(); ++i) {
    if (!(*v)[i].is_number_integer()) {
      throw ConfigError(field(key) + "[" + std::to_string(i) + "]: expected an integer");
    }
    out.push_back((*v)[i].get<int>());
  }
  return out;
}

Reader Reader::object(const std::string& key) {
  static const io::Json empty = io::Json::object();
  const auto* v = find(key);
  if (v && !v->is_object()) throw ConfigError(field(key) + ": expected an object");
  return Reader(v ? *v : empty, path_.empty() ? key : path_ + "." + key);
}

std::vector<Reader> Reader::objects(const std::string& key) {
  std::vector<Reader> out;
  const auto* v = find(key);
  if (!v) return out;
  if (!v->is_array()) throw ConfigError(field(key) + ": expected an array of objects");
  const std::string base = path_.empty() ? key : path_ + "." + key;
  for (std::size_t i = 0; i < v->size(); ++i) out.emplace_back((*v)[i], base + "[" + std::to_string(i) + "]");
  return out;
}

void Reader::finish() const {
  for (auto it = j_.begin(); it != j_.end(); ++it) {
    if (!used_.count(it.key())) throw ConfigError(field(it.key()) + ": unknown key");
  }
}

PeriodicGrid read_grid(Reader& g, PeriodicGrid fallback) {
  const int dim = g.integer("dim", fallback.dim());
  const int points = g.integer("points", fallback.points());
  const double period = g.number("period", fallback.period());
  g.finish();
  try {
    return PeriodicGrid(dim, points, period);
  } catch (const Error& e) {
    throw ConfigError(g.self() + ": " + e.what());
  }
}

PeriodicGrid read_grid(Reader& parent, const std::string& key, PeriodicGrid fallback) {
  if (!parent.has(key)) return fallback;
  Reader g = parent.object(key);
  return read_grid(g, fallback);
}

PressureLaw read_law(Reader& r, const std::string& key, double fallback_gamma) {
  const double gamma = r.number(key, fallback_gamma);
  try {
    return PressureLaw(gamma);
  } catch (const Error& e) {
    throw ConfigError(r.field(key) + ": " + e.what());
  }
}

InitialData read_initial_data(Reader& parent, const std::string& key, InitialData fallback) {
  if (!parent.has(key)) return fallback;
  Reader d = parent.object(key);
  InitialData out = fallback;
  const auto kind = d.string("kind", "");
  if (kind == "equilibrium") out.kind = DataKind::equilibrium;
  else if (kind == "single_mode") out.kind = DataKind::single_mode;
  else if (kind == "multi_mode") out.kind = DataKind::multi_mode;
  else if (!kind.empty()) throw ConfigError(d.field("kind") + ": expected equilibrium, single_mode or multi_mode");
  const auto prep = d.string("preparation", "");
  if (prep == "ill") out.preparation = Preparation::ill;
  else if (prep == "well") out.preparation = Preparation::well;
  else if (prep == "gradient") out.preparation = Preparation::gradient;
  else if (!prep.empty()) throw ConfigError(d.field("preparation") + ": expected ill, well or gradient");
  out.amplitude = d.number("amplitude", out.amplitude);
  out.modes = d.integer("modes", out.modes);
  d.finish();
  return out;
}

SolverConfig read_solver_config(Reader& r) {
  SolverConfig c;
  c.grid = read_grid(r, "grid", c.grid);
  c.law = read_law(r, "gamma", c.law.gamma());
  c.tau = r.number("tau", c.tau);
  c.rho_bar = r.number("rho_bar", c.rho_bar);
  c.s_end = r.number("s_end", c.s_end);
  c.cfl = r.number("cfl", c.cfl);
  c.snapshot_times = r.numbers("snapshot_times", c.snapshot_times);
  c.data = read_initial_data(r, "initial_data", c.data);
  c.max_step = r.number("max_step", c.max_step);
  c.diagnostics_every = r.integer("diagnostics_every", c.diagnostics_every);
  return c;
}

PMEConfig read_pme_config(Reader& r) {
  PMEConfig c;
  c.grid = read_grid(r, "grid", c.grid);
  c.law = read_law(r, "gamma", c.law.gamma());
  c.rho_bar = r.number("rho_bar", c.rho_bar);
  c.s_end = r.number("s_end", c.s_end);
  c.snapshot_times = r.numbers("snapshot_times", c.snapshot_times);
  c.max_step = r.number("max_step", c.max_step);
  return c;
}

TauSweepConfig read_sweep_config(Reader& r) {
  TauSweepConfig c;
  c.grid = read_grid(r, "grid", c.grid);
  c.law = read_law(r, "gamma", c.law.gamma());
  c.rho_bar = r.number("rho_bar", c.rho_bar);
  c.taus = r.numbers("taus", c.taus);
  c.data = read_initial_data(r, "initial_data", c.data);
  c.sigma = r.number("sigma", c.sigma);
  c.r = r.number("r", c.r);
  c.delta = r.number("delta", c.delta);
  c.comparison_times = r.numbers("comparison_times", c.comparison_times);
  c.s_end = r.number("s_end", c.s_end);
  c.snapshot_spacing = r.number("snapshot_spacing", c.snapshot_spacing);
  c.cfl = r.number("cfl", c.cfl);
  const auto ref = r.string("reference", "pme");
  if (ref == "pme") c.reference = Reference::pme;
  else if (ref == "finest_euler") c.reference = Reference::finest_euler;
  else throw ConfigError(r.field("reference") + ": expected pme or finest_euler");
  c.reference_tau = r.number("reference_tau", c.reference_tau);
  c.pme_max_step = r.number("pme_max_step", c.pme_max_step);
  return c;
}

CommutatorSuiteConfig read_commutator_config(Reader& r) {
  CommutatorSuiteConfig c;
  c.s = r.number("s", c.s);
  c.p = r.number("p", c.p);
  c.r = r.number("r", c.r);
  c.pairs = r.integer("pairs", c.pairs);
  c.homogeneous = r.boolean("homogeneous", c.homogeneous);
  c.with_terms = r.boolean("with_terms", c.with_terms);
  c.decay = r.number("decay", c.decay);
  c.kmax = r.integer("kmax", c.kmax);
  return c;
}

}  // namespace relaxlab::cli
