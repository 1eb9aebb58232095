// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "kawactrl/control/synthesis.hpp"
#include "kawactrl/modes/decompose.hpp"
#include "kawactrl/modes/saturation.hpp"
#include "kawactrl/solver/diagnostics.hpp"
#include "kawactrl/solver/kawahara.hpp"
#include "kawactrl/spectral/field.hpp"

using namespace kawactrl;
using spectral::bilinear_B;
using spectral::from_trig;
using spectral::SobolevIndex;
using spectral::SpectralField;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SpectralField sc(int k, double a, double b) { return SpectralField::sin_cos(k, a, b); }

// Product-to-sum forms of B for sin/cos sums.
Outcome ac1() {
  double worst = 0.0;
  for (int a = 1; a <= 20; ++a) {
    for (int b = 1; b <= 20; ++b) {
      const int d = std::abs(a - b);
      auto diff_sin = [&](double c) { return d == 0 ? SpectralField{} : sc(d, c * d, 0.0); };
      auto diff_cos = [&](double c) { return d == 0 ? SpectralField{} : sc(d, 0.0, c * (a - b)); };
      const auto s = sc(a, 1, 0) + sc(b, 1, 0);
      const auto rs = sc(2 * a, a, 0) + sc(2 * b, b, 0) - diff_sin(1) + sc(a + b, a + b, 0);
      const auto c = sc(a, 0, 1) + sc(b, 0, 1);
      const auto rc = sc(2 * a, -a, 0) + sc(2 * b, -b, 0) - diff_sin(1) - sc(a + b, a + b, 0);
      worst = std::max(worst, (2.0 * bilinear_B(s) - rs).max_abs_coefficient());
      worst = std::max(worst, (2.0 * bilinear_B(c) - rc).max_abs_coefficient());
      for (double pm : {1.0, -1.0}) {
        const auto m = sc(a, 1, 0) + sc(b, 0, pm);
        const auto rm = sc(2 * a, a, 0) + sc(2 * b, -b, 0) + sc(a + b, 0, pm * (a + b)) + diff_cos(pm);
        worst = std::max(worst, (2.0 * bilinear_B(m) - rm).max_abs_coefficient());
      }
    }
  }
  return {worst <= 1e-12, fmt("max residual %.3e (tol 1e-12)", worst)};
}

Outcome ac2() {
  solver::SolverConfig cfg;
  cfg.n_modes = 128;
  const auto traj = solver::flow(from_trig({{1, 0.5, 0.0}, {2, 0.0, 0.2}}), {}, {}, 1.0, cfg);
  const double l2 = solver::l2_norm_drift(traj), e = solver::energy_drift(traj, cfg.beta);
  return {l2 < 1e-7 && e < 1e-7, fmt("L2 drift %.3e, energy drift %.3e (tol 1e-7)", l2, e)};
}

Outcome ac3() {
  solver::SolverConfig cfg;
  cfg.n_modes = 64;
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> u(-0.3, 0.3), dur(0.05, 0.2);
  auto rand_field = [&](int m) {
    std::vector<spectral::TrigTerm> t;
    for (int k = 1; k <= m; ++k) t.push_back({k, u(rng), u(rng)});
    return from_trig(t);
  };
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto u0 = rand_field(4) + SpectralField::constant(u(rng));
    const auto zeta = rand_field(3);
    solver::ControlSchedule phi;
    for (int j = 0; j < 3; ++j) phi.append({dur(rng), rand_field(2)});
    const double t = phi.total_time();
    const auto lhs = solver::flow_endpoint(u0, zeta, phi, t, cfg);
    const auto rhs = solver::flow_endpoint(u0 + zeta, {}, phi, t, cfg) - zeta;
    worst = std::max(worst, spectral::sobolev_norm(lhs - rhs, SobolevIndex{1}));
  }
  return {worst <= 1e-10, fmt("max endpoint difference %.3e (tol 1e-10)", worst)};
}

Outcome ac4() {
  solver::SolverConfig cfg;
  cfg.n_modes = 128;
  const auto zeta = from_trig({{1, 0.0, 1.0}});
  const auto limit = from_trig({{2, 0.5, 0.0}});
  std::vector<double> lx, ly, err;
  for (int j = 3; j <= 10; ++j) {
    const double delta = std::ldexp(1.0, -j);
    const double e = spectral::sobolev_norm(solver::asymptotic_probe({}, zeta, {}, delta, cfg) - limit,
                                            SobolevIndex{1});
    err.push_back(e);
    lx.push_back(std::log(delta));
    ly.push_back(2.0 * std::log(e));
  }
  const std::size_t tail = 4;
  bool decreasing = true;
  for (std::size_t i = err.size() - tail + 1; i < err.size(); ++i) decreasing &= err[i] < err[i - 1];
  const double order = slope(lx, ly);
  return {decreasing && order >= 0.4,
          fmt("squared-error order %.4f (min 0.4), tail decreasing %.0f, last error %.3e", order,
              decreasing ? 1.0 : 0.0, err.back())};
}

Outcome ac5() {
  const auto pm1 = modes::ModeSet::symmetric({1});
  const auto seq = modes::saturate(pm1, 6);
  int missing = 0, bad_witness = 0;
  for (int k = -32; k <= 32; ++k) {
    if (!seq.level(6).contains(k)) ++missing;
    const auto w = modes::min_level(k, pm1);
    if (w.level > 6 || !modes::verify_witness(w, pm1)) ++bad_witness;
  }
  const auto seq2 = modes::saturate(modes::ModeSet::symmetric({2}), 8);
  int off = 0;
  for (const auto& level : seq2.levels) off += level.within_lattice(2) ? 0 : 1;
  return {missing == 0 && bad_witness == 0 && off == 0,
          fmt("missing %.0f, bad witnesses %.0f, levels off 2Z %.0f", missing, bad_witness, off)};
}

Outcome ac6() {
  const auto seq = modes::saturate(modes::ModeSet::symmetric({1}), 3);
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  int support_fail = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = i % 3;
    SpectralField target;
    for (int k : seq.level(n + 1).positive()) target = target.with_mode(k, {u(rng), u(rng)});
    const auto d = modes::decompose(target, seq.level(n));
    worst = std::max(worst, modes::verify_decomposition(d));
    bool ok = modes::supported_in(d.eta, seq.level(n));
    for (const auto& z : d.zetas) ok &= modes::supported_in(z, seq.level(n));
    support_fail += ok ? 0 : 1;
  }
  return {worst <= 1e-12 && support_fail == 0,
          fmt("max residual %.3e (tol 1e-12), support violations %.0f", worst, support_fail)};
}

control::SynthesisParams steering_params() {
  control::SynthesisParams p;
  p.eps = 5e-2;
  p.sigma = 0.5;
  p.solver.n_modes = 128;
  return p;
}

Outcome ac7() {
  const auto p = steering_params();
  const auto u1 = from_trig({{2, 0.1, 0.0}, {3, 0.0, 0.05}});
  const auto r = control::synthesize_small_time({}, u1, p);
  const auto end = solver::run_schedule_endpoint({}, r.schedule, p.solver);
  const double e = spectral::sobolev_norm(end - u1, p.s);
  const double t = r.schedule.total_time();
  return {e <= 5e-2 && t < p.sigma,
          fmt("re-simulated error %.4f (tol 0.05), total time %.3e (< 0.5), segments %.0f", e, t,
              static_cast<double>(r.schedule.size()))};
}

Outcome ac8() {
  auto p = steering_params();
  p.seed = 7;
  const auto u0 = from_trig({{1, 0.0, 0.2}});
  const auto u1 = from_trig({{2, 0.1, 0.0}});
  const auto r = control::synthesize_any_time(u0, u1, 1.0, p);
  const auto end = solver::run_schedule_endpoint(u0, r.schedule, p.solver);
  const double e = spectral::sobolev_norm(end - u1, p.s);
  const double t = r.schedule.total_time();
  return {t == 1.0 && e <= 5e-2,
          fmt("total time - T = %.3e (must be 0), re-simulated error %.4f (tol 0.05), bursts %.0f",
              t - 1.0, e, r.bursts)};
}

Outcome ac9() {
  solver::SolverConfig cfg;
  cfg.n_modes = 64;
  std::mt19937_64 rng(2024);
  const auto I = modes::ModeSet::symmetric({2});
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const auto phi = control::random_schedule(I, 5, 0.05, 0.2, 1.0, rng);
    worst = std::max(worst, control::necessity_probe(from_trig({{2, 1.0, 0.0}}), phi, 2, cfg));
  }
  return {worst < 1e-10, fmt("max off-lattice energy %.3e (tol 1e-10)", worst)};
}

Outcome ac10() {
  solver::SolverConfig cfg;
  cfg.n_modes = 64;
  const SobolevIndex s1{1};
  const auto u0 = from_trig({{1, 0.3, 0.1}, {2, 0.0, 0.2}});
  solver::ControlSchedule phi;
  phi.append({0.5, from_trig({{1, 0.2, 0.0}})});
  phi.append({0.5, from_trig({{1, 0.0, -0.1}})});
  const int samples = 50;
  auto sampled = [&](const SpectralField& start) {
    std::vector<SpectralField> st{start};
    for (int j = 0; j < samples; ++j) {
      const double a = double(j) / samples, b = double(j + 1) / samples;
      st.push_back(solver::flow_endpoint(st.back(), {}, solver::slice(phi, a, b), b - a, cfg));
    }
    return st;
  };
  const auto base = sampled(u0);
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  bool finite = true;
  for (int i = 0; i < 20; ++i) {
    const double m = 1e-4 * std::pow(100.0, i / 19.0);
    std::vector<spectral::TrigTerm> t;
    for (int k = 1; k <= 8; ++k) t.push_back({k, g(rng), g(rng)});
    auto dir = from_trig(t);
    dir *= m / spectral::sobolev_norm(dir, s1);
    const auto other = sampled(u0 + dir);
    double sup = 0.0;
    for (std::size_t j = 0; j < base.size(); ++j) sup = std::max(sup, spectral::sobolev_norm(base[j] - other[j], s1));
    const double ratio = sup / spectral::sobolev_norm(dir, s1);
    finite &= std::isfinite(ratio);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  const double spread = hi / lo;
  return {finite && spread < 2.0, fmt("ratio range [%.4f, %.4f], spread %.4f (< 2)", lo, hi, spread)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;  // runtime bound, 0 when none is set
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {"AC1 algebraic identities", 1.0, ac1},
      {"AC2 conservation", 10.0, ac2},
      {"AC3 flow identity", 0.0, ac3},
      {"AC4 asymptotic property", 120.0, ac4},
      {"AC5 saturation coverage", 1.0, ac5},
      {"AC6 decomposition certificates", 5.0, ac6},
      {"AC7 small-time steering", 600.0, ac7},
      {"AC8 any-time steering", 900.0, ac8},
      {"AC9 necessity", 0.0, ac9},
      {"AC10 stability", 0.0, ac10},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget_s == 0.0 || secs < c.budget_s;
    const bool pass = o.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("%s %s: %s; %.2f s%s\n", pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs,
                in_time ? "" : " (over time budget)");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
