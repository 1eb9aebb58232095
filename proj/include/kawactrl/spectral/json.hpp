#pragma once

#include <json.hpp>

#include "kawactrl/spectral/field.hpp"

namespace kawactrl::spectral {

// { "modes": [[k, re, im], ...] } with k >= 0 and only nonzero modes listed.
nlohmann::json to_json(const SpectralField& f);

// Accepts the "modes" form above or, for hand-written configs,
// { "trig": [[k, a, b], ...] } meaning sum a sin(kx) + b cos(kx).
SpectralField field_from_json(const nlohmann::json& j);

}  // namespace kawactrl::spectral
