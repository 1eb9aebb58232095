#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>

#include <json.hpp>

#include "kawactrl/control/synthesis.hpp"
#include "kawactrl/solver/kawahara.hpp"

namespace kawactrl::harness {

enum class Kind { simulate, saturate, decompose, synthesize, asymptotic, necessity, stability };

const char* to_string(Kind k) noexcept;
Kind kind_from_string(const std::string& s);

inline constexpr int kSchemaVersion = 1;

// Strict reader over one JSON object: every key must be consumed, so
// finish() rejects anything unknown.  All failures throw InvalidInput naming
// the dotted path.
class Section {
 public:
  Section(const nlohmann::json& j, std::string path);

  bool has(const std::string& key) const { return j_.contains(key); }
  const nlohmann::json& raw(const std::string& key);
  const nlohmann::json* raw_opt(const std::string& key);
  Section sub(const std::string& key);

  double number(const std::string& key);
  double number_or(const std::string& key, double def);
  long integer(const std::string& key);
  long integer_or(const std::string& key, long def);
  bool boolean_or(const std::string& key, bool def);
  std::string string_or(const std::string& key, std::string def);
  std::string path_of(const std::string& key) const { return path_ + "." + key; }

  void finish() const;

 private:
  const nlohmann::json& j_;
  std::string path_;
  std::set<std::string> used_;
};

std::vector<int> parse_int_list(const nlohmann::json& v, const std::string& path);
solver::SolverConfig parse_solver(Section s);
control::SynthesisParams parse_synthesis(Section s, const solver::SolverConfig& solver);

struct ExperimentConfig {
  Kind kind = Kind::simulate;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "kawactrl_out";
  solver::SolverConfig solver;
  control::SynthesisParams synthesis;
  // The kind-specific block (key = kind name), validated by the command.
  nlohmann::json body = nlohmann::json::object();
  // Canonical dump of the whole document, the input of the config hash.
  std::string canonical;
};

// Throws InvalidInput on schema violations (wrong version, unknown keys,
// bad types or values).
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace kawactrl::harness
