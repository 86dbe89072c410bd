#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace wl1 {

inline constexpr const char* kVersion = "0.1.0";

/// FNV-1a over the raw bytes; used to fingerprint result files so reruns
/// can be compared without parsing.
std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t v);

/// A results table with a commented preamble. The digest line covers the
/// header and every row (everything after the preamble), byte for byte.
struct CsvTable {
  std::vector<std::pair<std::string, std::string>> meta;
  std::string header;
  std::vector<std::string> rows;
};

/// Returns the digest of the body it wrote.
std::string write_csv(const CsvTable& table, const std::string& path);

struct RunManifest {
  std::string tool;
  std::string version = kVersion;
  std::string command;
  nlohmann::json params;
  std::uint64_t seed = 0;
  // (path, digest) of every file the run produced
  std::vector<std::pair<std::string, std::string>> outputs;
};

nlohmann::json to_json(const RunManifest& manifest);
void write_manifest(const RunManifest& manifest, const std::string& path);

}  // namespace wl1
