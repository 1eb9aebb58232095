#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kawactrl/errors.hpp"
#include "kawactrl/modes/mode_set.hpp"
#include "kawactrl/solver/kawahara.hpp"

namespace kawactrl::control {

using solver::ControlSchedule;
using solver::SolverConfig;
using spectral::SobolevIndex;
using spectral::SpectralField;

// start, start * ratio, ..., `length` entries.
std::vector<double> geometric_grid(double start, double ratio, int length);

struct SynthesisParams {
  double eps = 5e-2;    // target error in the s-norm
  double sigma = 0.5;   // time budget of one small-time synthesis, seconds
  std::vector<double> delta_grid = geometric_grid(0.25, 0.5, 160);
  std::vector<double> theta_grid = geometric_grid(0.25, 0.5, 160);
  int max_depth = 64;
  SobolevIndex s{1};
  modes::ModeSet I0 = modes::ModeSet::symmetric({1});
  SolverConfig solver;

  // Step cap for trial runs of the delta and theta searches.  Trial states
  // carry amplitudes of order theta^{-1/2}, and a probe past the cap just
  // fails.  An accepted probe took the same steps an uncapped run would.
  long probe_max_steps = 4000;
  // Internal tolerances tried by synthesize_small_time: ||u1 - u0||_s 2^{-j}
  // for j = 1..tolerance_ladder.
  int tolerance_ladder = 12;

  // Coast window estimation: burst radius r = coast_radius_fraction * eps,
  // checked on u1 and coast_samples perturbations of norm r.
  double coast_radius_fraction = 0.5;
  int coast_samples = 8;
  double min_coast_window = 1e-9;
  std::uint64_t seed = 0x5eed;

  std::size_t log_limit = 20000;

  void validate() const;
};

struct SearchLogEntry {
  std::string phase;  // "delta", "theta", "rung", "window", "burst", "coast"
  int depth = 0;
  double value = 0.0;  // delta, theta, tolerance or duration
  double error = 0.0;  // achieved error, +inf for failed runs
  bool accepted = false;
};

struct SynthesisReport {
  double achieved_error = 0.0;
  ControlSchedule schedule;
  SpectralField final_state;
  std::vector<SearchLogEntry> search_log;
  std::size_t log_dropped = 0;
  long simulations = 0;
  int saturation_level = 0;      // N with the tail beyond I_N <= eps/2
  double projection_tail = 0.0;  // that tail, in the s-norm
  double internal_tolerance = 0.0;
  int bursts = 0;
};

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double best_error,
                std::vector<SearchLogEntry> log = {})
      : Error(ErrorKind::no_convergence, what),
        best_error_(best_error),
        log_(std::move(log)) {}

  double best_error() const noexcept { return best_error_; }
  const std::vector<SearchLogEntry>& log() const noexcept { return log_; }

 private:
  double best_error_;
  std::vector<SearchLogEntry> log_;
};

// One segment of duration delta with value eta / delta, delta the first grid
// entry below sigma bringing the endpoint within eps of u0 + eta.
SynthesisReport steer_elementary(const SpectralField& u0, const SpectralField& eta,
                                 const SynthesisParams& p);

// Steers u0 to within eps of u0 + w - zeta zeta_x: steer to u0 + w +
// theta^{-1/2} zeta, coast for theta, steer by -theta^{-1/2} zeta.  Each
// phase gets eps / 3 and sigma / 3.
SynthesisReport steer_quadratic(const SpectralField& u0, const SpectralField& w,
                                const SpectralField& zeta,
                                const SynthesisParams& p);

// Schedule with total time < sigma taking u0 to within eps of u1.
SynthesisReport synthesize_small_time(const SpectralField& u0,
                                      const SpectralField& u1,
                                      const SynthesisParams& p);

struct CoastWindow {
  double radius = 0.0;  // r
  double tau = 0.0;     // seconds
  // sup_{t <= tau} ||R_t(v) - u1||_s for each sample v (u1 first).
  std::vector<double> sample_sup_errors;
};

CoastWindow estimate_coast_window(const SpectralField& u1, double eps,
                                  const SynthesisParams& p);

// Bursts of synthesize_small_time into the r-ball around u1, alternating
// with free coasts of at most tau, the last coast trimmed so the durations
// add up to exactly T.
SynthesisReport synthesize_any_time(const SpectralField& u0,
                                    const SpectralField& u1, double T,
                                    const SynthesisParams& p);

// Spectral energy 2 pi sum_{k not in dZ} |c_k|^2 of the endpoint.
double off_lattice_energy(const SpectralField& f, int d);
double necessity_probe(const SpectralField& u0, const ControlSchedule& schedule,
                       int d, const SolverConfig& cfg);

// n segments with durations uniform in [t_min, t_max] and values with
// sin/cos coefficients uniform in [-amplitude, amplitude] on the positive
// modes of I.
ControlSchedule random_schedule(const modes::ModeSet& I, int segments,
                                double t_min, double t_max, double amplitude,
                                std::mt19937_64& rng);

}  // namespace kawactrl::control
