#include "kawactrl/spectral/json.hpp"

#include <set>
#include <string>

#include "kawactrl/errors.hpp"

namespace kawactrl::spectral {

nlohmann::json to_json(const SpectralField& f) {
  auto modes = nlohmann::json::array();
  const int m = f.max_mode();
  for (int k = 0; k <= m; ++k) {
    const Complex c = f[k];
    if (c == Complex{}) continue;
    modes.push_back({k, c.real(), c.imag()});
  }
  return {{"modes", modes}};
}

namespace {

double number_at(const nlohmann::json& row, std::size_t i) {
  if (!row[i].is_number()) throw InvalidInput("field entry must be numeric");
  return row[i].get<double>();
}

int mode_at(const nlohmann::json& row) {
  if (!row[0].is_number_integer()) {
    throw InvalidInput("field mode index must be an integer");
  }
  return row[0].get<int>();
}

}  // namespace

SpectralField field_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.size() != 1 ||
      !(j.contains("modes") || j.contains("trig"))) {
    throw InvalidInput(
        "field must be an object with exactly one of \"modes\" or \"trig\"");
  }
  const bool trig = j.contains("trig");
  const auto& rows = trig ? j.at("trig") : j.at("modes");
  if (!rows.is_array()) throw InvalidInput("field rows must be an array");
  if (trig) {
    std::vector<TrigTerm> terms;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != 3) {
        throw InvalidInput("trig rows must be [k, a, b]");
      }
      terms.push_back({mode_at(row), number_at(row, 1), number_at(row, 2)});
    }
    return from_trig(terms);
  }
  std::set<int> seen;
  SpectralField f;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != 3) {
      throw InvalidInput("mode rows must be [k, re, im]");
    }
    const int k = mode_at(row);
    if (k < 0) throw InvalidInput("only modes k >= 0 are stored");
    if (!seen.insert(k).second) {
      throw InvalidInput("duplicate mode " + std::to_string(k));
    }
    f = f.with_mode(k, Complex(number_at(row, 1), number_at(row, 2)));
  }
  return f;
}

}  // namespace kawactrl::spectral
