#include "kawactrl/harness/config.hpp"

#include <fstream>

#include "kawactrl/errors.hpp"

namespace kawactrl::harness {

using nlohmann::json;

namespace {
constexpr std::pair<Kind, const char*> kKinds[] = {
    {Kind::simulate, "simulate"},     {Kind::saturate, "saturate"},
    {Kind::decompose, "decompose"},   {Kind::synthesize, "synthesize"},
    {Kind::asymptotic, "asymptotic"}, {Kind::necessity, "necessity"},
    {Kind::stability, "stability"},
};
}  // namespace

const char* to_string(Kind k) noexcept {
  for (const auto& [kind, name] : kKinds) {
    if (kind == k) return name;
  }
  return "unknown";
}

Kind kind_from_string(const std::string& s) {
  for (const auto& [kind, name] : kKinds) {
    if (s == name) return kind;
  }
  throw InvalidInput("unknown experiment kind \"" + s + "\"");
}

Section::Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
  if (!j_.is_object()) throw InvalidInput(path_ + " must be a JSON object");
}

const json& Section::raw(const std::string& key) {
  if (!j_.contains(key)) throw InvalidInput("missing required key " + path_of(key));
  used_.insert(key);
  return j_.at(key);
}

const json* Section::raw_opt(const std::string& key) {
  if (!j_.contains(key)) return nullptr;
  used_.insert(key);
  return &j_.at(key);
}

Section Section::sub(const std::string& key) { return Section(raw(key), path_of(key)); }

double Section::number(const std::string& key) {
  const json& v = raw(key);
  if (!v.is_number()) throw InvalidInput(path_of(key) + " must be a number");
  return v.get<double>();
}

double Section::number_or(const std::string& key, double def) {
  return has(key) ? number(key) : def;
}

long Section::integer(const std::string& key) {
  const json& v = raw(key);
  if (!v.is_number_integer()) throw InvalidInput(path_of(key) + " must be an integer");
  return v.get<long>();
}

long Section::integer_or(const std::string& key, long def) {
  return has(key) ? integer(key) : def;
}

bool Section::boolean_or(const std::string& key, bool def) {
  if (!has(key)) return def;
  const json& v = raw(key);
  if (!v.is_boolean()) throw InvalidInput(path_of(key) + " must be a boolean");
  return v.get<bool>();
}

std::string Section::string_or(const std::string& key, std::string def) {
  if (!has(key)) return def;
  const json& v = raw(key);
  if (!v.is_string()) throw InvalidInput(path_of(key) + " must be a string");
  return v.get<std::string>();
}

void Section::finish() const {
  for (const auto& [key, value] : j_.items()) {
    if (!used_.count(key)) throw InvalidInput("unknown key " + path_of(key));
  }
}

solver::SolverConfig parse_solver(Section s) {
  solver::SolverConfig c;
  c.n_modes = static_cast<int>(s.integer_or("n_modes", c.n_modes));
  c.dt_max = s.number_or("dt_max", c.dt_max);
  c.cfl_coeff = s.number_or("cfl_coeff", c.cfl_coeff);
  c.dealias_fraction = s.number_or("dealias_fraction", c.dealias_fraction);
  c.min_steps = static_cast<int>(s.integer_or("min_steps", c.min_steps));
  c.max_steps = s.integer_or("max_steps", c.max_steps);
  c.beta = s.number_or("beta", c.beta);
  c.resolution_tol = s.number_or("resolution_tol", c.resolution_tol);
  const std::string scheme = s.string_or("scheme", "etdrk4");
  if (scheme == "etdrk4") {
    c.scheme = solver::TimeScheme::etdrk4;
  } else if (scheme == "lawson_rk4") {
    c.scheme = solver::TimeScheme::lawson_rk4;
  } else {
    throw InvalidInput(s.path_of("scheme") + " must be \"etdrk4\" or \"lawson_rk4\"");
  }
  s.finish();
  c.validate();
  return c;
}

namespace {

// Either a list of numbers or {"start", "ratio", "length"}.
std::vector<double> parse_grid(Section& parent, const std::string& key,
                               std::vector<double> def) {
  const json* v = parent.raw_opt(key);
  if (v == nullptr) return def;
  if (v->is_array()) {
    std::vector<double> g;
    for (const auto& x : *v) {
      if (!x.is_number()) throw InvalidInput(parent.path_of(key) + " entries must be numbers");
      g.push_back(x.get<double>());
    }
    return g;
  }
  Section s(*v, parent.path_of(key));
  const double start = s.number("start");
  const double ratio = s.number("ratio");
  const long length = s.integer("length");
  s.finish();
  return control::geometric_grid(start, ratio, static_cast<int>(length));
}

}  // namespace

std::vector<int> parse_int_list(const json& v, const std::string& path) {
  if (!v.is_array()) throw InvalidInput(path + " must be an array of integers");
  std::vector<int> out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) throw InvalidInput(path + " must be an array of integers");
    out.push_back(x.get<int>());
  }
  return out;
}

control::SynthesisParams parse_synthesis(Section s, const solver::SolverConfig& solver) {
  control::SynthesisParams p;
  p.solver = solver;
  p.eps = s.number_or("eps", p.eps);
  p.sigma = s.number_or("sigma", p.sigma);
  p.delta_grid = parse_grid(s, "delta_grid", p.delta_grid);
  p.theta_grid = parse_grid(s, "theta_grid", p.theta_grid);
  p.max_depth = static_cast<int>(s.integer_or("max_depth", p.max_depth));
  p.s = spectral::SobolevIndex(static_cast<int>(s.integer_or("s", p.s.value())));
  if (const json* v = s.raw_opt("I0")) {
    p.I0 = modes::ModeSet(parse_int_list(*v, s.path_of("I0")));
  }
  p.probe_max_steps = s.integer_or("probe_max_steps", p.probe_max_steps);
  p.tolerance_ladder = static_cast<int>(s.integer_or("tolerance_ladder", p.tolerance_ladder));
  p.coast_radius_fraction = s.number_or("coast_radius_fraction", p.coast_radius_fraction);
  p.coast_samples = static_cast<int>(s.integer_or("coast_samples", p.coast_samples));
  p.min_coast_window = s.number_or("min_coast_window", p.min_coast_window);
  p.log_limit = static_cast<std::size_t>(s.integer_or("log_limit", static_cast<long>(p.log_limit)));
  s.finish();
  p.validate();
  return p;
}

ExperimentConfig parse_config(const json& doc) {
  Section top(doc, "config");
  ExperimentConfig cfg;
  if (top.integer("schema_version") != kSchemaVersion) {
    throw InvalidInput("config.schema_version must be " + std::to_string(kSchemaVersion));
  }
  const json& kind = top.raw("kind");
  if (!kind.is_string()) throw InvalidInput("config.kind must be a string");
  cfg.kind = kind_from_string(kind.get<std::string>());
  if (const json* seed = top.raw_opt("seed")) {
    if (!seed->is_number_unsigned() && !(seed->is_number_integer() && seed->get<long>() >= 0)) {
      throw InvalidInput("config.seed must be a nonnegative integer");
    }
    cfg.seed = seed->get<std::uint64_t>();
  }
  cfg.out_dir = top.string_or("out_dir", cfg.out_dir.string());
  cfg.solver = top.has("solver") ? parse_solver(top.sub("solver")) : solver::SolverConfig{};
  cfg.synthesis = top.has("synthesis")
                      ? parse_synthesis(top.sub("synthesis"), cfg.solver)
                      : parse_synthesis(Section(json::object(), "config.synthesis"), cfg.solver);
  cfg.synthesis.seed = cfg.seed;
  const std::string block = to_string(cfg.kind);
  cfg.body = top.raw(block);
  if (!cfg.body.is_object()) throw InvalidInput("config." + block + " must be an object");
  top.finish();
  cfg.canonical = doc.dump();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

}  // namespace kawactrl::harness
