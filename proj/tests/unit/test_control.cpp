#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kawactrl/control/synthesis.hpp"
#include "kawactrl/errors.hpp"
#include "kawactrl/modes/decompose.hpp"
#include "kawactrl/solver/kawahara.hpp"
#include "support.hpp"

using namespace kawactrl;
using namespace kawactrl::control;
using spectral::from_trig;
using spectral::sobolev_norm;

namespace {

SynthesisParams fast_params() {
  SynthesisParams p;
  p.solver.n_modes = 32;
  return p;
}

double replay_error(const SpectralField& u0, const SpectralField& target,
                    const SynthesisReport& r, const SynthesisParams& p) {
  const auto end = solver::run_schedule_endpoint(u0, r.schedule, p.solver);
  return sobolev_norm(end - target, p.s);
}

}  // namespace

TEST_CASE("geometric grid") {
  const auto g = geometric_grid(0.25, 0.5, 4);
  CHECK(g == std::vector<double>{0.25, 0.125, 0.0625, 0.03125});
  CHECK_THROWS_AS(geometric_grid(0.25, 1.5, 4), InvalidInput);
  CHECK_THROWS_AS(geometric_grid(0.25, 0.5, 0), InvalidInput);
}

TEST_CASE("parameter validation") {
  auto p = fast_params();
  CHECK_NOTHROW(p.validate());
  p.eps = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p = fast_params();
  p.delta_grid = {0.1, 0.2};
  CHECK_THROWS_AS(p.validate(), InvalidInput);
  p = fast_params();
  p.I0 = modes::ModeSet{1, 2};
  CHECK_THROWS_AS(p.validate(), InvalidInput);
}

TEST_CASE("elementary steering") {
  const auto p = fast_params();
  const auto u0 = from_trig({{1, 0.1, 0.0}});
  const auto eta = from_trig({{1, 0.0, 0.1}});
  const auto r = steer_elementary(u0, eta, p);
  REQUIRE(r.schedule.size() == 1);
  const auto& seg = r.schedule.segments()[0];
  CHECK(seg.duration < p.sigma);
  CHECK(test_support::max_coeff_diff(seg.value, (1.0 / seg.duration) * eta) < 1e-15);
  CHECK(r.achieved_error <= p.eps);
  CHECK(replay_error(u0, u0 + eta, r, p) == r.achieved_error);

  CHECK_THROWS_AS(steer_elementary(u0, from_trig({{2, 0.1, 0.0}}), p), InvalidInput);

  auto tight = p;
  tight.sigma = 1e-3;
  tight.delta_grid = {0.5, 0.25};
  CHECK_THROWS_AS(steer_elementary(u0, eta, tight), NoConvergence);
}

TEST_CASE("quadratic steering produces the -zeta zeta_x direction") {
  const auto p = fast_params();
  const auto zeta = from_trig({{1, 0.0, 1.0}});
  const auto r = steer_quadratic({}, {}, zeta, p);
  const auto target = from_trig({{2, 0.5, 0.0}});
  CHECK(r.achieved_error <= p.eps);
  CHECK(sobolev_norm(r.final_state - target, p.s) == r.achieved_error);
  CHECK(r.schedule.total_time() < p.sigma);
  CHECK(r.schedule.size() >= 2);
}

TEST_CASE("small-time synthesis") {
  const auto p = fast_params();
  SUBCASE("identity target needs no control") {
    const auto u0 = from_trig({{1, 0.2, 0.0}});
    const auto r = synthesize_small_time(u0, u0, p);
    CHECK(r.schedule.empty());
    CHECK(r.achieved_error == 0.0);
    CHECK(r.final_state == u0);
  }
  SUBCASE("reaches a mode outside I0") {
    const auto u1 = from_trig({{2, 0.1, 0.0}});
    const auto r = synthesize_small_time({}, u1, p);
    CHECK(r.achieved_error <= p.eps);
    CHECK(r.schedule.total_time() < p.sigma);
    CHECK(replay_error({}, u1, r, p) == r.achieved_error);
    CHECK(r.saturation_level == 1);
    for (const auto& seg : r.schedule.segments()) {
      CHECK(modes::supported_in(seg.value, modes::ModeSet::symmetric({1})));
    }
  }
  SUBCASE("non-generators are refused") {
    auto q = p;
    q.I0 = modes::ModeSet::symmetric({2});
    CHECK_THROWS_AS(synthesize_small_time({}, from_trig({{2, 0.1, 0.0}}), q), NotGenerator);
  }
  SUBCASE("means are rejected") {
    CHECK_THROWS_AS(synthesize_small_time({}, spectral::SpectralField::constant(0.1), p),
                    InvalidInput);
  }
}

TEST_CASE("search is deterministic") {
  const auto p = fast_params();
  const auto u1 = from_trig({{2, 0.05, 0.0}, {1, 0.0, 0.05}});
  const auto a = synthesize_small_time({}, u1, p);
  const auto b = synthesize_small_time({}, u1, p);
  CHECK(a.achieved_error == b.achieved_error);
  CHECK(a.simulations == b.simulations);
  REQUIRE(a.schedule.size() == b.schedule.size());
  for (std::size_t i = 0; i < a.schedule.size(); ++i) {
    CHECK(a.schedule.segments()[i].duration == b.schedule.segments()[i].duration);
    CHECK(a.schedule.segments()[i].value == b.schedule.segments()[i].value);
  }
}

TEST_CASE("coast window") {
  auto p = fast_params();
  const auto w0 = estimate_coast_window({}, 0.05, p);
  CHECK(w0.tau == p.sigma);
  CHECK(w0.radius == 0.025);
  CHECK(w0.sample_sup_errors.size() == static_cast<std::size_t>(p.coast_samples) + 1);
  CHECK(w0.sample_sup_errors.front() == 0.0);

  const auto u1 = from_trig({{2, 0.1, 0.0}});
  const auto w = estimate_coast_window(u1, 0.05, p);
  CHECK(w.tau < p.sigma);
  for (double e : w.sample_sup_errors) CHECK(e <= 0.05);
  CHECK_THROWS_AS(estimate_coast_window(u1, 0.0, p), InvalidInput);

  p.min_coast_window = 0.4;
  CHECK_THROWS_AS(estimate_coast_window(u1, 0.05, p), WindowCollapse);
}

TEST_CASE("any-time synthesis hits T exactly") {
  const auto p = fast_params();
  const auto u0 = from_trig({{1, 0.0, 0.2}});
  const auto u1 = from_trig({{2, 0.1, 0.0}});
  const double T = 0.05;
  const auto r = synthesize_any_time(u0, u1, T, p);
  CHECK(r.schedule.total_time() == T);
  CHECK(r.achieved_error <= p.eps);
  CHECK(r.bursts >= 1);
  CHECK(replay_error(u0, u1, r, p) == doctest::Approx(r.achieved_error).epsilon(1e-9));
  CHECK_THROWS_AS(synthesize_any_time(u0, u1, 0.0, p), InvalidInput);
}

TEST_CASE("necessity") {
  const modes::ModeSet I = modes::ModeSet::symmetric({2});
  solver::SolverConfig cfg;
  cfg.n_modes = 32;
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 3; ++trial) {
    const auto sched = random_schedule(I, 5, 0.02, 0.1, 1.0, rng);
    CHECK(sched.size() == 5);
    CHECK(necessity_probe(from_trig({{2, 1.0, 0.0}}), sched, 2, cfg) < 1e-10);
  }
  std::mt19937_64 rng3(4);
  const auto s3 = random_schedule(modes::ModeSet::symmetric({3}), 4, 0.02, 0.1, 1.0, rng3);
  CHECK(necessity_probe(from_trig({{3, 0.0, 1.0}}), s3, 3, cfg) < 1e-10);

  CHECK(off_lattice_energy(from_trig({{1, 1.0, 0.0}, {2, 5.0, 0.0}}), 2) ==
        doctest::Approx(2.0 * std::numbers::pi * 0.5));
  CHECK_THROWS_AS(necessity_probe(from_trig({{1, 1.0, 0.0}}), {}, 2, cfg), InvalidInput);
  CHECK_THROWS_AS(off_lattice_energy({}, 0), InvalidInput);
}

TEST_CASE("random schedules are reproducible") {
  const auto I = modes::ModeSet::symmetric({1, 3});
  std::mt19937_64 a(42), b(42);
  const auto sa = random_schedule(I, 6, 0.1, 0.2, 0.5, a);
  const auto sb = random_schedule(I, 6, 0.1, 0.2, 0.5, b);
  REQUIRE(sa.size() == sb.size());
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const auto& seg = sa.segments()[i];
    CHECK(seg.duration == sb.segments()[i].duration);
    CHECK(seg.value == sb.segments()[i].value);
    CHECK(seg.duration >= 0.1);
    CHECK(seg.duration <= 0.2);
    CHECK(modes::supported_in(seg.value, I));
  }
  CHECK(random_schedule(I, 0, 0.1, 0.2, 0.5, a).empty());
  CHECK_THROWS_AS(random_schedule(I, -1, 0.1, 0.2, 0.5, a), InvalidInput);
  CHECK_THROWS_AS(random_schedule(I, 3, 0.2, 0.1, 0.5, a), InvalidInput);
}
