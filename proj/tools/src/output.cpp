#include "output.hpp"

#include <fstream>
#include <iterator>

#include "relaxlab/error.hpp"

namespace relaxlab::cli {

OutputDir::OutputDir(std::filesystem::path root, io::Json manifest)
    : root_(std::move(root)), manifest_(std::move(manifest)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw Error("cannot create output directory " + root_.string() + ": " + ec.message());
  io::write_atomic(root_ / "manifest.json", manifest_.dump(2) + "\n");
}

void OutputDir::write(const std::string& name, const std::string& contents) {
  std::lock_guard lock(mutex_);
  io::write_atomic(root_ / name, contents);
  digests_[name] = io::fnv1a_hex(contents);
}

void OutputDir::write_json(const std::string& name, const io::Json& doc) {
  write(name, doc.dump(2) + "\n");
}

void OutputDir::write_fields(const std::string& name, const std::vector<ScalarField>& fields) {
  std::lock_guard lock(mutex_);
  io::write_fields(root_ / name, fields);
  std::ifstream in(root_ / name, std::ios::binary);
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  digests_[name] = io::fnv1a_hex(bytes);
}

void OutputDir::finalize(int exit_status) {
  std::lock_guard lock(mutex_);
  manifest_["outputs"] = digests_;
  manifest_["exit_status"] = exit_status;
  io::write_atomic(root_ / "manifest.json", manifest_.dump(2) + "\n");
}

}  // namespace relaxlab::cli
