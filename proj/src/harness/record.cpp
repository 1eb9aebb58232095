#include "kawactrl/harness/record.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>

namespace kawactrl::harness {

using nlohmann::json;

bool Check::pass() const noexcept {
  if (!std::isfinite(value)) return false;
  if (relation == "<") return value < tolerance;
  if (relation == "<=") return value <= tolerance;
  if (relation == ">=") return value >= tolerance;
  if (relation == ">") return value > tolerance;
  return false;
}

bool RunRecord::pass() const noexcept {
  if (!error_kind.empty()) return false;
  for (const auto& c : checks) {
    if (!c.pass()) return false;
  }
  return true;
}

json to_json(const Check& c) {
  return {{"name", c.name},
          {"value", std::isfinite(c.value) ? json(c.value) : json(nullptr)},
          {"relation", c.relation},
          {"tolerance", c.tolerance},
          {"pass", c.pass()}};
}

json to_json(const RunRecord& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  json out = {{"schema_version", 1},
              {"kind", r.kind},
              {"config_hash", r.config_hash},
              {"artifact_version", kArtifactVersion},
              {"started_at", r.started_at},
              {"finished_at", r.finished_at},
              {"seed", r.seed},
              {"checks", checks},
              {"pass", r.pass()},
              {"exit_code", r.exit_code},
              {"payload", r.payload}};
  if (!r.error_kind.empty()) {
    out["error"] = {{"kind", r.error_kind}, {"message", r.error_message}};
  }
  return out;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace kawactrl::harness
