#include "relaxlab/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "relaxlab/error.hpp"

namespace relaxlab::io {

namespace {

static_assert(std::endian::native == std::endian::little,
              "field container assumes a little-endian host");

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw Error("truncated field container");
  return v;
}

}  // namespace

void write_fields(const std::filesystem::path& path, const std::vector<ScalarField>& components) {
  if (components.empty()) throw ConfigError("nothing to write");
  const auto& grid = components.front().grid();
  std::ostringstream os(std::ios::binary);
  os.write(kFieldMagic, sizeof(kFieldMagic));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(grid.dim()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(grid.points()));
  put<double>(os, grid.period());
  put<std::uint32_t>(os, static_cast<std::uint32_t>(components.size()));
  put<std::uint32_t>(os, 0);
  for (const auto& c : components) {
    if (!(c.grid() == grid)) throw ConfigError("components must share one grid");
    os.write(reinterpret_cast<const char*>(c.values().data()),
             static_cast<std::streamsize>(c.size() * sizeof(double)));
  }
  write_atomic(path, os.str());
}

std::vector<ScalarField> read_fields(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path.string());
  char magic[sizeof(kFieldMagic)];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kFieldMagic, sizeof(magic)) != 0) {
    throw Error(path.string() + " is not a field container");
  }
  const auto dim = get<std::uint32_t>(is);
  const auto points = get<std::uint32_t>(is);
  const auto period = get<double>(is);
  const auto count = get<std::uint32_t>(is);
  get<std::uint32_t>(is);
  PeriodicGrid grid(static_cast<int>(dim), static_cast<int>(points), period);
  std::vector<ScalarField> out;
  for (std::uint32_t c = 0; c < count; ++c) {
    std::vector<double> v(grid.size());
    is.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (!is) throw Error("truncated field container " + path.string());
    out.emplace_back(grid, std::move(v));
  }
  return out;
}

void write_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error("cannot write " + tmp.string());
    os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!os) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Json to_json(const BesovNorm& n) {
  Json blocks = Json::array();
  for (const auto& b : n.per_block) blocks.push_back({{"q", b.q}, {"value", b.value}});
  return {{"s", n.s},
          {"p", n.p == kInf ? Json("inf") : Json(n.p)},
          {"r", n.r == kInf ? Json("inf") : Json(n.r)},
          {"homogeneous", n.homogeneous},
          {"value", n.value},
          {"omitted_energy", n.omitted_energy},
          {"unresolved_energy", n.unresolved_energy},
          {"per_block", blocks}};
}

Json norm_record(std::string_view op, const Json& params, const BesovNorm& n) {
  Json j = to_json(n);
  return {{"op", op}, {"params", params}, {"value", n.value}, {"per_block", j["per_block"]}};
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config " + path.string());
  try {
    return Json::parse(is, nullptr, true, true);
  } catch (const Json::parse_error& e) {
    throw ConfigError("malformed config " + path.string() + ": " + e.what());
  }
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

}  // namespace relaxlab::io
