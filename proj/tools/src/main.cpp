#include <boost/version.hpp>
#include <CLI11.hpp>

#include <Eigen/Core>
#include <algorithm>
#include <iostream>
#include <optional>

#include "commands.hpp"
#include "relaxlab/error.hpp"
#include "relaxlab/fft.hpp"

namespace {

using namespace relaxlab;
using namespace relaxlab::cli;

std::string versions_line(int a, int b, int c) {
  return std::to_string(a) + "." + std::to_string(b) + "." + std::to_string(c);
}

io::Json versions() {
  return {{"relaxlab", RELAXLAB_VERSION},
          {"fftw", fft::backend_version()},
          {"eigen", versions_line(EIGEN_WORLD_VERSION, EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION)},
          {"boost", versions_line(BOOST_VERSION / 100000, BOOST_VERSION / 100 % 1000, BOOST_VERSION % 100)},
          {"nlohmann_json", versions_line(NLOHMANN_JSON_VERSION_MAJOR, NLOHMANN_JSON_VERSION_MINOR,
                                          NLOHMANN_JSON_VERSION_PATCH)},
          {"cli11", CLI11_VERSION}};
}

/// Flag, then environment, then the config's top-level key, then the default.
template <class T>
T resolve(const std::optional<T>& flag, Reader& r, const std::string& key, T fallback) {
  T from_config;
  if constexpr (std::is_same_v<T, int>) from_config = r.integer(key, fallback);
  else from_config = r.unsigned_integer(key, fallback);
  return flag ? *flag : from_config;
}

/// First argument that is neither an option nor an option's value.
std::string first_word(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a.starts_with("-")) {
      if (a.find('=') == std::string::npos && a != "-v" && a != "-vv" && a.starts_with("--")) ++i;
      continue;
    }
    return a;
  }
  return {};
}

int run(const Command& cmd, const std::string& config_path, std::string out_dir,
        const std::optional<std::uint64_t>& seed_flag, const std::optional<int>& threads_flag,
        int verbosity) {
  const io::Json config = config_path.empty() ? io::Json::object() : io::read_json(config_path);
  Reader reader(config, "");
  Options opt;
  opt.seed = resolve(seed_flag, reader, "seed", std::uint64_t{1});
  opt.threads = resolve(threads_flag, reader, "threads", 1);
  opt.verbosity = verbosity;
  if (opt.threads < 1) throw ConfigError("field 'threads': must be at least 1");
  const Runner runner = cmd.prepare(reader, opt);
  reader.finish();

  if (out_dir.empty()) out_dir = "out/" + cmd.name;
  const std::string canonical = config.dump();
  io::Json manifest{{"tool", "relaxlab"},
                    {"subcommand", cmd.name},
                    {"config_hash", io::fnv1a_hex(canonical)},
                    {"config", config},
                    {"seed", opt.seed},
                    {"threads", opt.threads},
                    {"versions", versions()}};
  OutputDir out(out_dir, manifest);
  const Logger log(verbosity);
  log.info(cmd.name + " -> " + out.root().string());
  const int status = runner(out, log);
  out.finalize(status);
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relaxlab: numerical checks for the relaxation limit of damped Euler flows"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  app.add_option("--config", config_path, "Config document (JSON with comments)")->envname("RELAXLAB_CONFIG");
  app.add_option("--out", out_dir, "Output directory (default out/<subcommand>)")->envname("RELAXLAB_OUT");
  app.add_option("--seed", seed, "Random seed")->envname("RELAXLAB_SEED");
  app.add_option("--threads", threads, "Worker threads for independent runs")->envname("RELAXLAB_THREADS");
  auto* verbose = app.add_flag("-v", "Verbose log on stderr; -vv for debug");

  const Command* chosen = nullptr;
  for (const auto& cmd : commands()) {
    app.add_subcommand(cmd.name, cmd.summary)->callback([&chosen, &cmd] { chosen = &cmd; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    const auto word = first_word(argc, argv);
    if (!word.empty() && std::none_of(commands().begin(), commands().end(),
                                      [&](const Command& c) { return c.name == word; })) {
      std::cerr << "error: unknown subcommand '" << word << "'\n\n" << app.help();
    } else {
      std::cerr << "error: " << e.what() << "\n\n" << app.help();
    }
    return kExitError;
  }

  try {
    return run(*chosen, config_path, out_dir, seed, threads, static_cast<int>(verbose->count()));
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitError;
}
