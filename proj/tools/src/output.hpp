#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <string>

#include "relaxlab/io.hpp"

namespace relaxlab::cli {

/// An output directory whose manifest is written before any data file.
/// Writes are atomic and serialized; finalize() records each output's digest.
class OutputDir {
 public:
  OutputDir(std::filesystem::path root, io::Json manifest);

  const std::filesystem::path& root() const noexcept { return root_; }
  void write(const std::string& name, const std::string& contents);
  void write_json(const std::string& name, const io::Json& doc);
  void write_fields(const std::string& name, const std::vector<ScalarField>& fields);
  void finalize(int exit_status);

 private:
  std::filesystem::path root_;
  io::Json manifest_;
  std::map<std::string, std::string> digests_;
  std::mutex mutex_;
};

}  // namespace relaxlab::cli
