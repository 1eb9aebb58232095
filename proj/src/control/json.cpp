#include "kawactrl/control/json.hpp"

#include <cmath>

#include "kawactrl/spectral/json.hpp"

namespace kawactrl::control {

using nlohmann::json;

namespace {
// JSON has no infinity; failed probes are written as null.
json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
}  // namespace

json to_json(const ControlSchedule& s) {
  json segs = json::array();
  for (const auto& seg : s.segments()) {
    segs.push_back({{"duration", seg.duration}, {"value", spectral::to_json(seg.value)}});
  }
  return {{"segments", segs}};
}

ControlSchedule schedule_from_json(const json& j) {
  if (!j.is_object() || j.size() != 1 || !j.contains("segments") ||
      !j.at("segments").is_array()) {
    throw InvalidInput("schedule must be {\"segments\": [...]}");
  }
  ControlSchedule s;
  for (const auto& seg : j.at("segments")) {
    if (!seg.is_object() || seg.size() != 2 || !seg.contains("duration") ||
        !seg.contains("value") || !seg.at("duration").is_number()) {
      throw InvalidInput("schedule segments must be {\"duration\": t, \"value\": field}");
    }
    s.append({seg.at("duration").get<double>(), spectral::field_from_json(seg.at("value"))});
  }
  return s;
}

json to_json(const SearchLogEntry& e) {
  return {{"phase", e.phase},
          {"depth", e.depth},
          {"value", e.value},
          {"error", number_or_null(e.error)},
          {"accepted", e.accepted}};
}

json to_json(const SynthesisReport& r) {
  json log = json::array();
  for (const auto& e : r.search_log) log.push_back(to_json(e));
  return {{"achieved_error", r.achieved_error},
          {"total_time", r.schedule.total_time()},
          {"segments", r.schedule.size()},
          {"simulations", r.simulations},
          {"saturation_level", r.saturation_level},
          {"projection_tail", r.projection_tail},
          {"internal_tolerance", r.internal_tolerance},
          {"bursts", r.bursts},
          {"final_state", spectral::to_json(r.final_state)},
          {"schedule", to_json(r.schedule)},
          {"search_log", log},
          {"search_log_dropped", r.log_dropped}};
}

}  // namespace kawactrl::control
