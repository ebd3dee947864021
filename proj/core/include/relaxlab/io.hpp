#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "relaxlab/dyadic.hpp"
#include "relaxlab/field.hpp"

namespace relaxlab::io {

using Json = nlohmann::json;

inline constexpr char kFieldMagic[8] = {'R', 'L', 'X', 'F', 'L', 'D', '0', '1'};

/// Writes components of one grid as a binary container: magic, uint32 dim,
/// uint32 M, double L, uint32 components, uint32 reserved, then little-endian
/// doubles component by component, each row-major.
void write_fields(const std::filesystem::path& path, const std::vector<ScalarField>& components);
std::vector<ScalarField> read_fields(const std::filesystem::path& path);

/// Writes via a sibling temporary file and rename.
void write_atomic(const std::filesystem::path& path, std::string_view contents);

Json to_json(const BesovNorm& n);

/// JSON report {op, params, value, per_block}.
Json norm_record(std::string_view op, const Json& params, const BesovNorm& n);

/// Reads a JSON document; // and /* */ comments are allowed.
Json read_json(const std::filesystem::path& path);

/// 64-bit FNV-1a digest as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace relaxlab::io
