#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "config_reader.hpp"
#include "output.hpp"

namespace relaxlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitThreshold = 2;

struct Options {
  std::uint64_t seed = 1;
  int threads = 1;
  int verbosity = 0;
};

class Logger {
 public:
  explicit Logger(int verbosity) : verbosity_(verbosity) {}
  void info(const std::string& msg) const;
  void debug(const std::string& msg) const;

 private:
  int verbosity_;
};

/// Parsed command, ready to write into an output directory; returns the exit status.
using Runner = std::function<int(OutputDir&, const Logger&)>;

struct Command {
  std::string name;
  std::string summary;
  /// Reads the command's keys; configuration errors throw before any output exists.
  std::function<Runner(Reader&, const Options&)> prepare;
};

const std::vector<Command>& commands();

}  // namespace relaxlab::cli
