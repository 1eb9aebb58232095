#include "kawactrl/harness/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>

#include "kawactrl/control/json.hpp"
#include "kawactrl/modes/decompose.hpp"
#include "kawactrl/modes/saturation.hpp"
#include "kawactrl/solver/diagnostics.hpp"
#include "kawactrl/spectral/json.hpp"

namespace kawactrl::harness {

namespace fs = std::filesystem;
using nlohmann::json;
using spectral::SpectralField;

namespace {

SpectralField field_or_zero(Section& s, const std::string& key) {
  const json* v = s.raw_opt(key);
  if (v == nullptr) return {};
  try {
    return spectral::field_from_json(*v);
  } catch (const InvalidInput& e) {
    throw InvalidInput(s.path_of(key) + ": " + e.what());
  }
}

SpectralField field(Section& s, const std::string& key) {
  if (!s.has(key)) throw InvalidInput("missing required key " + s.path_of(key));
  return field_or_zero(s, key);
}

solver::ControlSchedule schedule_or_empty(Section& s, const std::string& key) {
  const json* v = s.raw_opt(key);
  if (v == nullptr) return {};
  try {
    return control::schedule_from_json(*v);
  } catch (const InvalidInput& e) {
    throw InvalidInput(s.path_of(key) + ": " + e.what());
  }
}

std::pair<double, double> range_or(Section& s, const std::string& key,
                                   std::pair<double, double> def) {
  const json* v = s.raw_opt(key);
  if (v == nullptr) return def;
  if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number()) {
    throw InvalidInput(s.path_of(key) + " must be [lo, hi]");
  }
  const double lo = (*v)[0].get<double>(), hi = (*v)[1].get<double>();
  if (!(lo > 0.0) || !(hi >= lo)) throw InvalidInput(s.path_of(key) + " needs 0 < lo <= hi");
  return {lo, hi};
}

spectral::SobolevIndex sobolev(Section& s, int def) {
  return spectral::SobolevIndex(static_cast<int>(s.integer_or("s", def)));
}

void write_json(const fs::path& p, const json& j) {
  std::ofstream out(p);
  if (!out) throw InvalidInput("cannot write " + p.string());
  out << j.dump(2) << '\n';
}

std::ofstream open_csv(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw InvalidInput("cannot write " + p.string());
  return out;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json null_if_nan(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace

void cmd_simulate(const ExperimentConfig& cfg, const fs::path& out, RunRecord& rec) {
  Section s(cfg.body, "config.simulate");
  const SpectralField u0 = field(s, "u0");
  const SpectralField zeta = field_or_zero(s, "zeta");
  const auto forcing = schedule_or_empty(s, "forcing");
  const double T = s.number("T");
  const auto idx = sobolev(s, 1);
  const int stride = static_cast<int>(s.integer_or("record_stride", 1));
  std::vector<int> csv_modes{1, 2, 3, 4, 5, 6, 7, 8};
  if (const json* v = s.raw_opt("csv_modes")) csv_modes = parse_int_list(*v, s.path_of("csv_modes"));
  std::optional<double> tol_l2, tol_energy, tol_mean;
  if (s.has("tolerances")) {
    Section t = s.sub("tolerances");
    if (t.has("l2_drift")) tol_l2 = t.number("l2_drift");
    if (t.has("energy_drift")) tol_energy = t.number("energy_drift");
    if (t.has("mean_drift")) tol_mean = t.number("mean_drift");
    t.finish();
  }
  s.finish();

  const auto traj = solver::flow(u0, zeta, forcing, T, cfg.solver, {.record = true, .stride = stride});
  auto csv = open_csv(out / "trajectory.csv");
  solver::write_trajectory_csv(csv, traj, idx, csv_modes, cfg.solver.beta);
  write_json(out / "final_state.json", spectral::to_json(traj.final_state()));

  const double l2 = solver::l2_norm_drift(traj);
  const double energy = solver::energy_drift(traj, cfg.solver.beta);
  double mean_drift = 0.0;
  for (const auto& u : traj.states) mean_drift = std::max(mean_drift, std::abs(u.mean() - u0.mean()));

  rec.payload = {{"T", T},
                 {"recorded_states", traj.states.size()},
                 {"l2_drift", l2},
                 {"energy_drift", energy},
                 {"mean_drift", mean_drift},
                 {"final_norm_0", spectral::sobolev_norm(traj.final_state(), spectral::SobolevIndex(0))},
                 {"final_norm_s", spectral::sobolev_norm(traj.final_state(), idx)},
                 {"final_state", spectral::to_json(traj.final_state())}};
  if (tol_l2) rec.checks.push_back({"l2_drift", l2, "<", *tol_l2});
  if (tol_energy) rec.checks.push_back({"energy_drift", energy, "<", *tol_energy});
  if (tol_mean) rec.checks.push_back({"mean_drift", mean_drift, "<", *tol_mean});
}

void cmd_saturate(const ExperimentConfig& cfg, const fs::path& out, RunRecord& rec) {
  Section s(cfg.body, "config.saturate");
  const modes::ModeSet I0(parse_int_list(s.raw("I0"), s.path_of("I0")));
  const int depth = static_cast<int>(s.integer("depth"));
  const int radius = static_cast<int>(s.integer_or("coverage_radius", 32));
  const int coverage_level = static_cast<int>(s.integer_or("coverage_level", depth));
  s.finish();

  const auto seq = modes::saturate(I0, depth);
  const bool generator = modes::is_generator(I0);
  const int d = modes::gcd_of(I0);

  json levels = json::array();
  int asymmetric = 0, off_lattice = 0;
  for (const auto& l : seq.levels) {
    levels.push_back(l.elements());
    if (!l.is_symmetric()) ++asymmetric;
    if (!l.within_lattice(d)) ++off_lattice;
  }
  write_json(out / "levels.json", {{"I0", I0.elements()}, {"levels", levels}});

  auto csv = open_csv(out / "min_level.csv");
  csv << "k,min_level,witness_ok,enumerated_level\n";
  json table = json::array();
  int uncovered = 0, bad_witness = 0, mismatch = 0;
  if (generator) {
    for (int k = -radius; k <= radius; ++k) {
      const auto w = modes::min_level(k, I0);
      const bool ok = modes::verify_witness(w, I0);
      int enumerated = -1;
      for (int n = 0; n <= depth; ++n) {
        if (seq.level(n).contains(k)) {
          enumerated = n;
          break;
        }
      }
      if (w.level > coverage_level) ++uncovered;
      if (!ok) ++bad_witness;
      if (w.level <= depth && enumerated != w.level) ++mismatch;
      csv << k << ',' << w.level << ',' << (ok ? 1 : 0) << ',' << enumerated << '\n';
      table.push_back({{"k", k}, {"min_level", w.level}, {"witness_ok", ok}});
    }
  }
  rec.payload = {{"I0", I0.elements()},
                 {"gcd", d},
                 {"generator", generator},
                 {"level_sizes", json::array()},
                 {"min_levels", table}};
  for (const auto& l : seq.levels) rec.payload["level_sizes"].push_back(l.size());
  rec.checks.push_back({"asymmetric_levels", double(asymmetric), "<=", 0});
  if (generator) {
    rec.checks.push_back({"modes_above_coverage_level", double(uncovered), "<=", 0});
    rec.checks.push_back({"invalid_witnesses", double(bad_witness), "<=", 0});
    rec.checks.push_back({"min_level_enumeration_mismatches", double(mismatch), "<=", 0});
  } else {
    rec.checks.push_back({"levels_leaving_lattice", double(off_lattice), "<=", 0});
  }
}

void cmd_decompose(const ExperimentConfig& cfg, const fs::path& out, RunRecord& rec) {
  Section s(cfg.body, "config.decompose");
  const SpectralField target = field(s, "target");
  const modes::ModeSet I0(parse_int_list(s.raw("I0"), s.path_of("I0")));
  const int level = static_cast<int>(s.integer("level"));
  const double tol = s.number_or("tolerance", 1e-12);
  s.finish();

  const auto seq = modes::saturate(I0, level + 1);
  if (!modes::supported_in(target, seq.level(level + 1))) {
    throw InvalidInput("config.decompose.target is not supported in I_{level+1}");
  }
  const auto d = modes::decompose(target, seq.level(level));
  const double residual = modes::verify_decomposition(d);
  int support_violations = modes::supported_in(d.eta, seq.level(level)) ? 0 : 1;
  for (const auto& z : d.zetas) {
    if (!modes::supported_in(z, seq.level(level))) ++support_violations;
  }
  write_json(out / "decomposition.json", modes::to_json(d));
  rec.payload = modes::to_json(d);
  rec.payload["level"] = level;
  rec.payload["zeta_count"] = d.zetas.size();
  rec.checks.push_back({"residual", residual, "<=", tol});
  rec.checks.push_back({"support_violations", double(support_violations), "<=", 0});
}

void cmd_synthesize(const ExperimentConfig& cfg, const fs::path& out, RunRecord& rec) {
  Section s(cfg.body, "config.synthesize");
  const std::string mode = s.string_or("mode", "small_time");
  const SpectralField u0 = field_or_zero(s, "u0");
  const SpectralField u1 = field(s, "u1");
  const double gap_tol = s.number_or("verify_tolerance", 1e-9);
  double T = 0.0;
  if (mode == "any_time") {
    T = s.number("T");
  } else if (mode != "small_time") {
    throw InvalidInput("config.synthesize.mode must be \"small_time\" or \"any_time\"");
  }
  s.finish();

  const auto& p = cfg.synthesis;
  const auto report = mode == "any_time" ? control::synthesize_any_time(u0, u1, T, p)
                                         : control::synthesize_small_time(u0, u1, p);
  const SpectralField check_end = solver::run_schedule_endpoint(u0, report.schedule, p.solver);
  const double recheck = spectral::sobolev_norm(check_end - u1, p.s);
  const double gap = std::abs(recheck - report.achieved_error);

  write_json(out / "schedule.json", control::to_json(report.schedule));
  write_json(out / "report.json", control::to_json(report));
  rec.payload = control::to_json(report);
  rec.payload.erase("search_log");
  rec.payload["mode"] = mode;
  rec.payload["reverified_error"] = recheck;
  rec.checks.push_back({"achieved_error", recheck, "<=", p.eps});
  rec.checks.push_back({"reverification_gap", gap, "<=", gap_tol});
  if (mode == "any_time") {
    rec.payload["T"] = T;
    rec.checks.push_back({"duration_minus_T", std::abs(report.schedule.total_time() - T), "<=", 0.0});
  } else {
    rec.checks.push_back({"total_time", report.schedule.total_time(), "<", p.sigma});
  }
}

void cmd_asymptotic(const ExperimentConfig& cfg, const fs::path& out, RunRecord& rec) {
  Section s(cfg.body, "config.asymptotic");
  const SpectralField u0 = field_or_zero(s, "u0");
  const SpectralField zeta = field_or_zero(s, "zeta");
  const SpectralField eta = field_or_zero(s, "eta");
  std::vector<double> grid = control::geometric_grid(0.125, 0.5, 8);
  if (const json* v = s.raw_opt("delta_grid")) {
    if (!v->is_array()) throw InvalidInput("config.asymptotic.delta_grid must be an array");
    grid.clear();
    for (const auto& x : *v) {
      if (!x.is_number()) throw InvalidInput("config.asymptotic.delta_grid entries must be numbers");
      grid.push_back(x.get<double>());
    }
  }
  if (grid.size() < 4) throw InvalidInput("config.asymptotic.delta_grid needs at least 4 points");
  const auto idx = sobolev(s, 1);
  const int tail = static_cast<int>(s.integer_or("tail", static_cast<long>(grid.size() / 2)));
  std::optional<double> min_order;
  if (s.has("min_order")) min_order = s.number("min_order");
  const double floor = s.number_or("error_floor", 1e-14);
  s.finish();
  if (tail < 2 || tail > static_cast<int>(grid.size())) {
    throw InvalidInput("config.asymptotic.tail must lie in [2, grid size]");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] < grid[i - 1])) throw InvalidInput("config.asymptotic.delta_grid must decrease");
  }

  const SpectralField limit = u0 + eta - spectral::bilinear_B(zeta);
  std::vector<double> errors;
  auto csv = open_csv(out / "asymptotic.csv");
  csv << "delta,error\n";
  json rows = json::array();
  for (double delta : grid) {
    const auto end = solver::asymptotic_probe(u0, zeta, eta, delta, cfg.solver);
    const double e = spectral::sobolev_norm(end - limit, idx);
    errors.push_back(e);
    csv << num(delta) << ',' << num(e) << '\n';
    rows.push_back({{"delta", delta}, {"error", e}});
  }
  // Errors at the floor count as converged; the order is fitted above it.
  int bad_steps = 0;
  for (std::size_t i = grid.size() - tail + 1; i < grid.size(); ++i) {
    const bool converged = errors[i] <= floor && errors[i - 1] <= floor;
    if (!(errors[i] < errors[i - 1]) && !converged) ++bad_steps;
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (errors[i] > floor) {
      lx.push_back(std::log(grid[i]));
      ly.push_back(2.0 * std::log(errors[i]));
    }
  }
  const double order = lx.size() >= 2 ? fit_slope(lx, ly) : std::numeric_limits<double>::quiet_NaN();

  rec.payload = {{"rows", rows},
                 {"tail", tail},
                 {"squared_error_order", null_if_nan(order)},
                 {"limit", spectral::to_json(limit)}};
  rec.checks.push_back({"tail_non_decreasing_steps", double(bad_steps), "<=", 0});
  if (min_order) rec.checks.push_back({"squared_error_order", order, ">=", *min_order});
}

void cmd_necessity(const ExperimentConfig& cfg, const fs::path& out, RunRecord& rec) {
  Section s(cfg.body, "config.necessity");
  const modes::ModeSet I(parse_int_list(s.raw("I"), s.path_of("I")));
  const SpectralField u0 = field_or_zero(s, "u0");
  const int runs = static_cast<int>(s.integer_or("runs", 10));
  const int segments = static_cast<int>(s.integer_or("segments", 5));
  const auto [t_min, t_max] = range_or(s, "duration", {0.05, 0.2});
  const double amplitude = s.number_or("amplitude", 1.0);
  const double tol = s.number_or("tolerance", 1e-10);
  s.finish();
  if (I.empty() || !I.is_symmetric()) throw InvalidInput("config.necessity.I must be symmetric");
  if (runs < 1) throw InvalidInput("config.necessity.runs must be positive");

  const int d = modes::gcd_of(I);
  std::mt19937_64 rng(cfg.seed);
  auto csv = open_csv(out / "necessity.csv");
  csv << "run,total_time,off_lattice_energy\n";
  json rows = json::array();
  double worst = 0.0;
  for (int i = 0; i < runs; ++i) {
    const auto sched = control::random_schedule(I, segments, t_min, t_max, amplitude, rng);
    const double e = control::necessity_probe(u0, sched, d, cfg.solver);
    worst = std::max(worst, e);
    csv << i << ',' << num(sched.total_time()) << ',' << num(e) << '\n';
    rows.push_back({{"run", i}, {"total_time", sched.total_time()}, {"off_lattice_energy", e}});
  }
  rec.payload = {{"d", d}, {"rows", rows}, {"max_off_lattice_energy", worst}};
  rec.checks.push_back({"max_off_lattice_energy", worst, "<", tol});
}

void cmd_stability(const ExperimentConfig& cfg, const fs::path& out, RunRecord& rec) {
  Section s(cfg.body, "config.stability");
  const SpectralField u0 = field(s, "u0");
  const auto forcing = schedule_or_empty(s, "forcing");
  const double T = s.number_or("T", 1.0);
  const auto idx = sobolev(s, 1);
  const int pairs = static_cast<int>(s.integer_or("pairs", 20));
  const auto [m_lo, m_hi] = range_or(s, "magnitudes", {1e-4, 1e-2});
  const int samples = static_cast<int>(s.integer_or("time_samples", 50));
  const int pert_modes = static_cast<int>(s.integer_or("perturbation_modes", 8));
  const double max_spread = s.number_or("max_spread", 2.0);
  std::optional<double> ratio_bound;
  if (s.has("ratio_bound")) ratio_bound = s.number("ratio_bound");
  s.finish();
  if (pairs < 2 || samples < 1 || pert_modes < 1 || !(T > 0.0)) {
    throw InvalidInput("config.stability needs pairs >= 2, time_samples >= 1, T > 0");
  }

  // Both trajectories are cut at the same sample times.
  std::vector<double> times;
  for (int j = 0; j <= samples; ++j) times.push_back(T * j / samples);
  times.back() = T;
  auto sampled = [&](const SpectralField& start) {
    std::vector<SpectralField> states{start};
    for (int j = 0; j < samples; ++j) {
      const double dt = times[j + 1] - times[j];
      states.push_back(solver::flow_endpoint(states.back(), {},
                                             solver::slice(forcing, times[j], times[j + 1]),
                                             dt, cfg.solver));
    }
    return states;
  };
  const auto base = sampled(u0);

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> g;
  auto csv = open_csv(out / "stability.csv");
  csv << "pair,magnitude,ratio\n";
  json rows = json::array();
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  int non_finite = 0;
  for (int i = 0; i < pairs; ++i) {
    const double m = m_lo * std::pow(m_hi / m_lo, double(i) / (pairs - 1));
    std::vector<spectral::TrigTerm> terms;
    for (int k = 1; k <= pert_modes; ++k) terms.push_back({k, g(rng), g(rng)});
    SpectralField dir = spectral::from_trig(terms);
    dir *= m / spectral::sobolev_norm(dir, idx);
    const auto other = sampled(u0 + dir);
    const double d0 = spectral::sobolev_norm(dir, idx);
    double sup = 0.0;
    for (std::size_t j = 0; j < base.size(); ++j) {
      sup = std::max(sup, spectral::sobolev_norm(base[j] - other[j], idx));
    }
    const double ratio = sup / d0;
    if (!std::isfinite(ratio)) {
      ++non_finite;
    } else {
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    csv << i << ',' << num(m) << ',' << num(ratio) << '\n';
    rows.push_back({{"pair", i}, {"magnitude", m}, {"ratio", null_if_nan(ratio)}});
  }
  const double spread = hi / lo;
  rec.payload = {{"rows", rows}, {"min_ratio", lo}, {"max_ratio", hi}, {"spread", null_if_nan(spread)}};
  rec.checks.push_back({"non_finite_ratios", double(non_finite), "<=", 0});
  rec.checks.push_back({"ratio_spread", spread, "<", max_spread});
  if (ratio_bound) rec.checks.push_back({"max_ratio", hi, "<=", *ratio_bound});
}

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_input:
    case ErrorKind::undersampled:
      return kExitBadConfig;
    default:
      return kExitInfeasible;
  }
}

RunRecord run_experiment(const ExperimentConfig& cfg, const fs::path& out) {
  RunRecord rec;
  rec.kind = to_string(cfg.kind);
  rec.config_hash = fnv1a_hex(cfg.canonical);
  rec.seed = cfg.seed;
  rec.started_at = utc_timestamp();
  try {
    fs::create_directories(out);
    switch (cfg.kind) {
      case Kind::simulate: cmd_simulate(cfg, out, rec); break;
      case Kind::saturate: cmd_saturate(cfg, out, rec); break;
      case Kind::decompose: cmd_decompose(cfg, out, rec); break;
      case Kind::synthesize: cmd_synthesize(cfg, out, rec); break;
      case Kind::asymptotic: cmd_asymptotic(cfg, out, rec); break;
      case Kind::necessity: cmd_necessity(cfg, out, rec); break;
      case Kind::stability: cmd_stability(cfg, out, rec); break;
    }
    rec.exit_code = rec.pass() ? kExitPass : kExitToleranceFailure;
  } catch (const control::NoConvergence& e) {
    rec.error_kind = to_string(e.kind());
    rec.error_message = e.what();
    rec.payload["best_error"] = null_if_nan(e.best_error());
    rec.exit_code = kExitInfeasible;
  } catch (const Error& e) {
    rec.error_kind = to_string(e.kind());
    rec.error_message = e.what();
    rec.exit_code = exit_code_for(e.kind());
  } catch (const nlohmann::json::exception& e) {
    rec.error_kind = to_string(ErrorKind::invalid_input);
    rec.error_message = e.what();
    rec.exit_code = kExitBadConfig;
  } catch (const fs::filesystem_error& e) {
    rec.error_kind = "io";
    rec.error_message = e.what();
    rec.exit_code = kExitBadConfig;
  }
  rec.finished_at = utc_timestamp();
  std::error_code ec;
  if (fs::is_directory(out, ec)) {
    std::ofstream f(out / "record.json");
    if (f) f << to_json(rec).dump(2) << '\n';
  }
  return rec;
}

}  // namespace kawactrl::harness
