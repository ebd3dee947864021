#pragma once

#include <set>
#include <string>
#include <vector>

#include "relaxlab/bony.hpp"
#include "relaxlab/io.hpp"
#include "relaxlab/limit.hpp"

namespace relaxlab::cli {

/// Typed access to one JSON object. Every key must be consumed before
/// finish(), so typos surface as errors naming the offending field.
class Reader {
 public:
  Reader(const io::Json& j, std::string path);

  bool has(const std::string& key) const;
  double number(const std::string& key, double fallback);
  int integer(const std::string& key, int fallback);
  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback);
  bool boolean(const std::string& key, bool fallback);
  std::string string(const std::string& key, const std::string& fallback);
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback);
  std::vector<int> integers(const std::string& key, const std::vector<int>& fallback);
  Reader object(const std::string& key);
  std::vector<Reader> objects(const std::string& key);
  void finish() const;

  std::string field(const std::string& key) const;
  /// Name of this object, for messages about it as a whole.
  std::string self() const;

 private:
  const io::Json* find(const std::string& key);

  const io::Json& j_;
  std::string path_;
  std::set<std::string> used_;
};

PeriodicGrid read_grid(Reader& g, PeriodicGrid fallback);
PeriodicGrid read_grid(Reader& parent, const std::string& key, PeriodicGrid fallback);
PressureLaw read_law(Reader& r, const std::string& key, double fallback_gamma);
InitialData read_initial_data(Reader& parent, const std::string& key, InitialData fallback);
SolverConfig read_solver_config(Reader& r);
PMEConfig read_pme_config(Reader& r);
TauSweepConfig read_sweep_config(Reader& r);
CommutatorSuiteConfig read_commutator_config(Reader& r);

}  // namespace relaxlab::cli
