#include "kawactrl/control/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <map>

#include "kawactrl/modes/decompose.hpp"
#include "kawactrl/modes/saturation.hpp"

namespace kawactrl::control {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool strictly_decreasing_positive(const std::vector<double>& g) {
  if (g.empty()) return false;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!(g[i] > 0.0) || !std::isfinite(g[i])) return false;
    if (i > 0 && !(g[i] < g[i - 1])) return false;
  }
  return true;
}
}  // namespace

std::vector<double> geometric_grid(double start, double ratio, int length) {
  if (!(start > 0.0) || !(ratio > 0.0 && ratio < 1.0) || length < 1) {
    throw InvalidInput("geometric grid needs start > 0, ratio in (0,1), length >= 1");
  }
  std::vector<double> g;
  double x = start;
  for (int i = 0; i < length && x > 0.0; ++i, x *= ratio) g.push_back(x);
  return g;
}

void SynthesisParams::validate() const {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidInput("eps must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidInput("sigma must be positive");
  if (!strictly_decreasing_positive(delta_grid) || delta_grid.front() >= 1.0) {
    throw InvalidInput("delta_grid must be strictly decreasing inside (0, 1)");
  }
  if (!strictly_decreasing_positive(theta_grid)) {
    throw InvalidInput("theta_grid must be strictly decreasing and positive");
  }
  if (max_depth < 1) throw InvalidInput("max_depth must be positive");
  if (probe_max_steps < 1) throw InvalidInput("probe_max_steps must be positive");
  if (tolerance_ladder < 1) throw InvalidInput("tolerance_ladder must be positive");
  if (!(coast_radius_fraction > 0.0 && coast_radius_fraction < 1.0)) {
    throw InvalidInput("coast_radius_fraction must lie in (0, 1)");
  }
  if (coast_samples < 0) throw InvalidInput("coast_samples must be nonnegative");
  if (!(min_coast_window > 0.0)) throw InvalidInput("min_coast_window must be positive");
  if (I0.empty() || !I0.is_symmetric()) throw InvalidInput("I0 must be nonempty and symmetric");
  solver.validate();
}

namespace {

bool recoverable(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::no_convergence:
    case ErrorKind::depth_cap:
    case ErrorKind::work_limit:
    case ErrorKind::resolution:
      return true;
    default:
      return false;
  }
}

void require_mean_zero(const SpectralField& f, const char* what) {
  if (f.mean() != 0.0) {
    throw InvalidInput(std::string(what) + " must have zero mean");
  }
}

// The recursive construction.  A request is a target increment
// eta - sum_i B(zeta_i) with eta and the zetas in some H(I_n).
class Synthesizer {
 public:
  struct Piece {
    ControlSchedule schedule;
    SpectralField state;
  };

  explicit Synthesizer(const SynthesisParams& p)
      : p_(p), probe_cfg_(p.solver), trace_(std::getenv("KAWACTRL_TRACE") != nullptr) {
    probe_cfg_.max_steps = std::min(p.solver.max_steps, p.probe_max_steps);
  }

  Piece realize(const SpectralField& u, const SpectralField& eta,
                std::vector<SpectralField> zetas, double tol, double sigma,
                int depth) {
    if (depth > p_.max_depth) {
      throw DepthCapExceeded("recursion deeper than max_depth = " +
                             std::to_string(p_.max_depth));
    }
    std::erase_if(zetas, [](const SpectralField& z) { return z.is_zero(); });
    if (zetas.empty()) {
      if (eta.is_zero()) return {{}, u};
      const int level = modes::support_level(eta, p_.I0);
      if (level == 0) return base(u, eta, tol, sigma, depth);
      const auto d = modes::decompose(eta, level_set(level - 1));
      return realize(u, d.eta, d.zetas, tol, sigma, depth + 1);
    }

    const SpectralField zeta = zetas.back();
    zetas.pop_back();
    SpectralField w_rest = eta;
    for (const auto& z : zetas) w_rest -= spectral::bilinear_B(z);
    const SpectralField jump = spectral::bilinear_B(zeta);

    double theta = 0.0;
    double best = kInf;
    for (double th : p_.theta_grid) {
      if (!(th < sigma / 3.0)) continue;
      const SpectralField ideal = u + w_rest + zeta * (1.0 / std::sqrt(th));
      double e = kInf;
      try {
        e = norm(probe(ideal, th) - (ideal - jump));
      } catch (const Error& err) {
        if (!recoverable(err)) throw;
      }
      best = std::min(best, e);
      const bool ok = e <= tol / 3.0;
      log({"theta", depth, th, e, ok});
      if (ok) {
        theta = th;
        break;
      }
    }
    if (theta == 0.0) {
      throw NoConvergence("no theta below sigma/3 passed the coast check", best);
    }

    const SpectralField lift = zeta * (1.0 / std::sqrt(theta));
    Piece first = realize(u, eta + lift, std::move(zetas), tol / 3.0,
                          sigma / 3.0, depth + 1);
    ControlSchedule coast_leg;
    coast_leg.append({theta, SpectralField{}});
    const SpectralField mid = simulate(first.state, coast_leg);
    Piece last = realize(mid, -lift, {}, tol / 3.0, sigma / 3.0, depth + 1);

    Piece out;
    out.schedule = std::move(first.schedule);
    out.schedule.append(coast_leg);
    out.schedule.append(last.schedule);
    out.state = std::move(last.state);
    return out;
  }

  Piece base(const SpectralField& u, const SpectralField& eta, double tol,
             double sigma, int depth) {
    const SpectralField goal = u + eta;
    double best = kInf;
    for (double delta : p_.delta_grid) {
      if (!(delta < sigma)) continue;
      ControlSchedule s;
      s.append({delta, eta * (1.0 / delta)});
      double e = kInf;
      SpectralField end;
      try {
        ++simulations;
        end = solver::run_schedule_endpoint(u, s, probe_cfg_);
        e = norm(end - goal);
      } catch (const Error& err) {
        if (!recoverable(err)) throw;
      }
      best = std::min(best, e);
      const bool ok = e <= tol;
      log({"delta", depth, delta, e, ok});
      if (ok) return {std::move(s), std::move(end)};
    }
    throw NoConvergence("delta grid exhausted below sigma", best);
  }

  SpectralField simulate(const SpectralField& u, const ControlSchedule& s) {
    ++simulations;
    return solver::run_schedule_endpoint(u, s, p_.solver);
  }

  double norm(const SpectralField& f) const { return spectral::sobolev_norm(f, p_.s); }

  void log(SearchLogEntry e) {
    if (trace_) {
      std::fprintf(stderr, "%*s%s %.3e err %.3e%s\n", 2 * e.depth, "",
                   e.phase.c_str(), e.value, e.error, e.accepted ? " ok" : "");
    }
    if (entries.size() < p_.log_limit) {
      entries.push_back(std::move(e));
    } else {
      ++dropped;
    }
  }

  long simulations = 0;
  std::vector<SearchLogEntry> entries;
  std::size_t dropped = 0;

 private:
  SpectralField probe(const SpectralField& u, double theta) {
    ++simulations;
    return solver::coast(u, theta, probe_cfg_);
  }

  const modes::IntSet& level_set(int n) {
    if (static_cast<int>(levels_.levels.size()) <= n) {
      levels_ = modes::saturate(p_.I0, n);
    }
    return levels_.level(n);
  }

  const SynthesisParams& p_;
  SolverConfig probe_cfg_;
  modes::SaturationSequence levels_;
  bool trace_;
};

void fill_report(SynthesisReport& r, Synthesizer& syn) {
  r.simulations = syn.simulations;
  r.search_log = std::move(syn.entries);
  r.log_dropped = syn.dropped;
}

}  // namespace

SynthesisReport steer_elementary(const SpectralField& u0, const SpectralField& eta,
                                 const SynthesisParams& p) {
  p.validate();
  if (!modes::supported_in(eta, p.I0)) {
    throw InvalidInput("steer_elementary: eta must be supported in I0");
  }
  SynthesisReport r;
  Synthesizer syn(p);
  if (eta.is_zero()) {
    r.final_state = u0;
    return r;
  }
  try {
    auto piece = syn.base(u0, eta, p.eps, p.sigma, 0);
    r.schedule = std::move(piece.schedule);
    r.final_state = std::move(piece.state);
  } catch (const NoConvergence& e) {
    throw NoConvergence(e.what(), e.best_error(), std::move(syn.entries));
  }
  r.achieved_error = syn.norm(r.final_state - (u0 + eta));
  fill_report(r, syn);
  return r;
}

SynthesisReport steer_quadratic(const SpectralField& u0, const SpectralField& w,
                                const SpectralField& zeta,
                                const SynthesisParams& p) {
  p.validate();
  require_mean_zero(w, "w");
  require_mean_zero(zeta, "zeta");
  SynthesisReport r;
  Synthesizer syn(p);
  const SpectralField goal = u0 + w - spectral::bilinear_B(zeta);
  try {
    auto piece = syn.realize(u0, w, {zeta}, p.eps, p.sigma, 0);
    r.schedule = std::move(piece.schedule);
    r.final_state = std::move(piece.state);
  } catch (const NoConvergence& e) {
    throw NoConvergence(e.what(), e.best_error(), std::move(syn.entries));
  }
  r.achieved_error = syn.norm(r.final_state - goal);
  r.internal_tolerance = p.eps;
  fill_report(r, syn);
  return r;
}

SynthesisReport synthesize_small_time(const SpectralField& u0,
                                      const SpectralField& u1,
                                      const SynthesisParams& p) {
  p.validate();
  if (!modes::is_generator(p.I0)) {
    throw NotGenerator("I0 has gcd " + std::to_string(modes::gcd_of(p.I0)) +
                       " and does not generate Z");
  }
  require_mean_zero(u0, "u0");
  require_mean_zero(u1, "u1");

  SynthesisReport r;
  Synthesizer syn(p);
  const SpectralField w = u1 - u0;
  if (w.is_zero()) {
    r.final_state = u0;
    return r;
  }

  // Project onto H(I_N), N the smallest level leaving a tail <= eps / 2.
  std::map<int, std::vector<int>> by_level;
  for (int k = 1; k <= w.max_mode(); ++k) {
    if (w[k] != spectral::Complex{}) {
      by_level[modes::min_level(k, p.I0).level].push_back(k);
    }
  }
  SpectralField kept, tail;
  for (const auto& [level, ks] : by_level) {
    for (int k : ks) tail = tail.with_mode(k, w[k]);
  }
  for (const auto& [level, ks] : by_level) {
    if (syn.norm(tail) <= p.eps / 2.0) break;
    r.saturation_level = level;
    for (int k : ks) {
      kept = kept.with_mode(k, w[k]);
      tail = tail.with_mode(k, 0.0);
    }
  }
  r.projection_tail = syn.norm(tail);

  const double scale = syn.norm(w);
  double best = kInf;
  for (int j = 1; j <= p.tolerance_ladder; ++j) {
    const double tol = std::ldexp(scale, -j);
    Synthesizer::Piece piece;
    try {
      piece = syn.realize(u0, kept, {}, tol, p.sigma, 0);
    } catch (const Error& e) {
      if (!recoverable(e)) throw;
      syn.log({"rung", 0, tol, kInf, false});
      continue;
    }
    const double err = syn.norm(piece.state - u1);
    best = std::min(best, err);
    const bool ok = err <= p.eps && piece.schedule.total_time() < p.sigma;
    syn.log({"rung", 0, tol, err, ok});
    if (!ok) continue;

    r.schedule = std::move(piece.schedule);
    r.final_state = syn.simulate(u0, r.schedule);
    r.achieved_error = syn.norm(r.final_state - u1);
    r.internal_tolerance = tol;
    fill_report(r, syn);
    return r;
  }
  throw NoConvergence("no internal tolerance reached eps", best,
                      std::move(syn.entries));
}

namespace {

SpectralField random_direction(int modes, double radius, SobolevIndex s,
                               std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<spectral::TrigTerm> terms;
  for (int k = 1; k <= modes; ++k) terms.push_back({k, g(rng), g(rng)});
  const SpectralField f = spectral::from_trig(terms);
  return f * (radius / spectral::sobolev_norm(f, s));
}

}  // namespace

CoastWindow estimate_coast_window(const SpectralField& u1, double eps,
                                  const SynthesisParams& p) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InvalidInput("eps must be positive");
  p.validate();
  CoastWindow w;
  w.radius = p.coast_radius_fraction * eps;

  std::mt19937_64 rng(p.seed);
  const int pert_modes = std::clamp(u1.max_mode(), 4, p.solver.n_modes / 2);
  std::vector<SpectralField> samples{u1};
  for (int i = 0; i < p.coast_samples; ++i) {
    samples.push_back(u1 + random_direction(pert_modes, w.radius, p.s, rng));
  }

  for (double tau = p.sigma; tau >= p.min_coast_window; tau /= 2.0) {
    SolverConfig cfg = p.solver;
    cfg.dt_max = std::min(cfg.dt_max, tau / 32.0);
    std::vector<double> sups;
    bool ok = true;
    for (const auto& v : samples) {
      const auto traj = solver::flow(v, {}, {}, tau, cfg);
      double sup = 0.0;
      for (const auto& st : traj.states) {
        sup = std::max(sup, spectral::sobolev_norm(st - u1, p.s));
      }
      sups.push_back(sup);
      if (!(sup <= eps)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      w.tau = tau;
      w.sample_sup_errors = std::move(sups);
      return w;
    }
  }
  throw WindowCollapse("no coast window above " + std::to_string(p.min_coast_window) +
                       " s keeps the samples within eps");
}

SynthesisReport synthesize_any_time(const SpectralField& u0,
                                    const SpectralField& u1, double T,
                                    const SynthesisParams& p) {
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidInput("T must be positive");
  p.validate();
  if (!modes::is_generator(p.I0)) {
    throw NotGenerator("I0 has gcd " + std::to_string(modes::gcd_of(p.I0)) +
                       " and does not generate Z");
  }
  require_mean_zero(u0, "u0");
  require_mean_zero(u1, "u1");

  SynthesisReport r;
  Synthesizer syn(p);
  const CoastWindow window = estimate_coast_window(u1, p.eps, p);
  syn.log({"window", 0, window.tau, window.radius, true});

  SpectralField state = u0;
  double t = 0.0;
  while (t < T) {
    const double dist = syn.norm(state - u1);
    if (dist > window.radius) {
      SynthesisParams sub = p;
      sub.eps = window.radius;
      sub.sigma = std::min(p.sigma, T - t);
      SynthesisReport burst;
      try {
        burst = synthesize_small_time(state, u1, sub);
      } catch (const NoConvergence& e) {
        syn.log({"burst", 0, t, e.best_error(), false});
        throw NoConvergence(std::string("burst at t = ") + std::to_string(t) +
                                " failed: " + e.what(),
                            e.best_error(), std::move(syn.entries));
      }
      syn.simulations += burst.simulations;
      syn.log({"burst", 0, burst.schedule.total_time(), burst.achieved_error, true});
      r.schedule.append(burst.schedule);
      state = burst.final_state;
      ++r.bursts;
      t = r.schedule.total_time();
      if (!(t < T)) break;
    }
    const double c = (t + window.tau < T) ? window.tau : solver::exact_remainder(t, T);
    ControlSchedule leg;
    leg.append({c, SpectralField{}});
    state = syn.simulate(state, leg);
    r.schedule.append(leg);
    t = r.schedule.total_time();
  }
  if (r.schedule.total_time() != T) {
    throw NoConvergence("bursts overran the final time", kInf, std::move(syn.entries));
  }

  r.final_state = syn.simulate(u0, r.schedule);
  r.achieved_error = syn.norm(r.final_state - u1);
  r.internal_tolerance = window.radius;
  fill_report(r, syn);
  return r;
}

double off_lattice_energy(const SpectralField& f, int d) {
  if (d < 1) throw InvalidInput("lattice spacing must be positive");
  double acc = 0.0;
  for (int k = 1; k <= f.max_mode(); ++k) {
    if (k % d != 0) acc += 2.0 * std::norm(f[k]);
  }
  return 2.0 * std::numbers::pi * acc;
}

double necessity_probe(const SpectralField& u0, const ControlSchedule& schedule,
                       int d, const SolverConfig& cfg) {
  if (off_lattice_energy(u0, d) != 0.0) {
    throw InvalidInput("u0 must be supported in the lattice dZ");
  }
  for (const auto& seg : schedule.segments()) {
    if (off_lattice_energy(seg.value, d) != 0.0) {
      throw InvalidInput("schedule values must be supported in the lattice dZ");
    }
  }
  return off_lattice_energy(solver::run_schedule_endpoint(u0, schedule, cfg), d);
}

ControlSchedule random_schedule(const modes::ModeSet& I, int segments,
                                double t_min, double t_max, double amplitude,
                                std::mt19937_64& rng) {
  if (segments < 0 || !(t_min > 0.0) || !(t_max >= t_min)) {
    throw InvalidInput("random_schedule: bad segment count or duration range");
  }
  std::uniform_real_distribution<double> dur(t_min, t_max);
  std::uniform_real_distribution<double> amp(-amplitude, amplitude);
  ControlSchedule s;
  for (int i = 0; i < segments; ++i) {
    std::vector<spectral::TrigTerm> terms;
    for (int k : I.positive()) terms.push_back({k, amp(rng), amp(rng)});
    const double t = dur(rng);
    s.append({t, spectral::from_trig(terms)});
  }
  return s;
}

}  // namespace kawactrl::control
