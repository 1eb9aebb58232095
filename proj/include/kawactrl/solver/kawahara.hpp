#pragma once

// Controlled Kawahara equation on the circle,
//
//     u_t - u_xxxxx + beta u_xxx + u u_x = phi(t, x),
//
// integrated pseudospectrally.  The state mean a = [u0] is conserved; the
// solver evolves w = u - a with the exact linear group exp(lambda_k t),
// lambda_k = i (k^5 + beta k^3 - a k), and treats -w w_x + phi with a
// fourth-order exponential Runge-Kutta stage combination.

#include <functional>
#include <optional>
#include <vector>

#include "kawactrl/solver/schedule.hpp"
#include "kawactrl/spectral/field.hpp"

namespace kawactrl::solver {

using spectral::Complex;
using spectral::SpectralField;

enum class TimeScheme {
  etdrk4,      // Cox-Matthews exponential time differencing
  lawson_rk4,  // integrating factor + classical RK4
};

struct SolverConfig {
  int n_modes = 128;                       // retained modes |k| <= n_modes
  double dt_max = 1e-3;                    // seconds
  double cfl_coeff = 0.5;                  // dt <= cfl / (K (1 + sup|u|))
  double dealias_fraction = 2.0 / 3.0;     // K <= fraction * grid / 2
  int min_steps = 8;                       // per nonempty segment
  long max_steps = 2'000'000;              // per segment; WorkLimitError above
  double beta = 1.0;                       // third-order dispersion sign
  TimeScheme scheme = TimeScheme::etdrk4;
  // Relative energy allowed in the top tenth of the retained band.
  double resolution_tol = 1e-20;

  void validate() const;
  int grid_size() const;
};

struct LinearSymbol {
  double mean = 0.0;  // a
  double beta = 1.0;

  // lambda_k / i = k^5 + beta k^3 - a k
  double frequency(int k) const noexcept {
    const double kk = k;
    return kk * kk * kk * kk * kk + beta * kk * kk * kk - mean * kk;
  }
  Complex eigenvalue(int k) const noexcept { return {0.0, frequency(k)}; }
};

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> states;

  const SpectralField& final_state() const { return states.back(); }
};

// Which states a run keeps.  Segment boundaries and the final time are
// always recorded.
struct RecordOptions {
  bool record = true;
  int stride = 1;  // keep every stride-th step
};

// exp(lambda_k t) c_k for every mode.
SpectralField linear_group(double t, const SpectralField& f,
                           const LinearSymbol& sym);

// R_t(u0, zeta, phi) on [0, T]: the solution of the equation shifted by the
// stationary profile zeta, computed as flow(u0 + zeta, 0, phi) - zeta.  The
// forcing runs its segments in order; any time beyond the schedule is
// unforced, and the part of the schedule beyond T is ignored.
Trajectory flow(const SpectralField& u0, const SpectralField& zeta,
                const ControlSchedule& forcing, double T,
                const SolverConfig& cfg, RecordOptions rec = {});

// Endpoint of flow() without storing intermediate states.
SpectralField flow_endpoint(const SpectralField& u0, const SpectralField& zeta,
                            const ControlSchedule& forcing, double T,
                            const SolverConfig& cfg);

Trajectory run_schedule(const SpectralField& u0, const ControlSchedule& schedule,
                        const SolverConfig& cfg, RecordOptions rec = {});
SpectralField run_schedule_endpoint(const SpectralField& u0,
                                    const ControlSchedule& schedule,
                                    const SolverConfig& cfg);

// Unforced evolution for `duration` seconds.
SpectralField coast(const SpectralField& u0, double duration,
                    const SolverConfig& cfg);

// R_delta(u0, delta^{-1/2} zeta, delta^{-1} eta), with dt_max scaled by delta.
SpectralField asymptotic_probe(const SpectralField& u0,
                               const SpectralField& zeta,
                               const SpectralField& eta, double delta,
                               const SolverConfig& cfg);

}  // namespace kawactrl::solver
