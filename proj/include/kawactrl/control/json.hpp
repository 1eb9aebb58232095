#pragma once

#include <json.hpp>

#include "kawactrl/control/synthesis.hpp"

namespace kawactrl::control {

// { "segments": [{"duration": t, "value": field}, ...] }
nlohmann::json to_json(const ControlSchedule& s);
ControlSchedule schedule_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SearchLogEntry& e);
// Schedule, final state, statistics and the search log.
nlohmann::json to_json(const SynthesisReport& r);

}  // namespace kawactrl::control
