#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace kawactrl::harness {

inline constexpr const char* kArtifactVersion = "0.1.0";

// value <relation> tolerance, e.g. drift "<" 1e-7.
struct Check {
  std::string name;
  double value = 0.0;
  std::string relation;  // "<", "<=", ">=", ">"
  double tolerance = 0.0;

  bool pass() const noexcept;
};

struct RunRecord {
  std::string kind;
  std::string config_hash;
  std::string started_at;
  std::string finished_at;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  nlohmann::json payload = nlohmann::json::object();
  // Set when the run stopped on an error.
  std::string error_kind;
  std::string error_message;
  int exit_code = 0;

  bool pass() const noexcept;
};

nlohmann::json to_json(const Check& c);
nlohmann::json to_json(const RunRecord& r);

// FNV-1a 64, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);
std::string utc_timestamp();

}  // namespace kawactrl::harness
