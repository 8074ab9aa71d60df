#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "germscan/grid.hpp"
#include "json.hpp"

namespace germscan::cli {

struct InputHash {
  std::string path;
  std::string sha256;
};

/// Provenance attached to every output: enough to re-run the command and compare.
struct RunManifest {
  std::string command;
  std::vector<InputHash> inputs;
  SearchConfig config;
  bool has_config = false;
  std::uint64_t seed = 0;
  std::string version;
  std::string timestamp;
  /// All numeric inputs were read as exact rationals.
  bool exact = false;
};

/// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);
/// UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

nlohmann::json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const SearchConfig& cfg);
SearchConfig config_from_json(const nlohmann::json& j);

}  // namespace germscan::cli
