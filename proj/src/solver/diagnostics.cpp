#include "kawactrl/solver/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace kawactrl::solver {

using spectral::SobolevIndex;

double energy_functional(const SpectralField& u, double beta) {
  const double cubic = spectral::l2_inner(spectral::product(u, u), u);
  const double ux = spectral::sobolev_norm(spectral::derivative(u, 1), SobolevIndex(0));
  const double uxx = spectral::sobolev_norm(spectral::derivative(u, 2), SobolevIndex(0));
  return -cubic / 3.0 + beta * ux * ux + uxx * uxx;
}

double l2_norm_drift(const Trajectory& traj) {
  if (traj.states.empty()) return 0.0;
  const double n0 = spectral::sobolev_norm(traj.states.front(), SobolevIndex(0));
  double drift = 0.0;
  for (const auto& u : traj.states) {
    drift = std::max(drift, std::abs(spectral::sobolev_norm(u, SobolevIndex(0)) - n0));
  }
  return drift;
}

double energy_drift(const Trajectory& traj, double beta) {
  if (traj.states.empty()) return 0.0;
  const double e0 = energy_functional(traj.states.front(), beta);
  double drift = 0.0;
  for (const auto& u : traj.states) {
    drift = std::max(drift, std::abs(energy_functional(u, beta) - e0));
  }
  return drift;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          SobolevIndex s, const std::vector<int>& modes,
                          double beta) {
  out << "t,norm_0,norm_s,energy";
  for (int k : modes) out << ",abs_c" << k;
  out << '\n';
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
  };
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const auto& u = traj.states[i];
    put(traj.times[i]);
    out << ',';
    put(spectral::sobolev_norm(u, SobolevIndex(0)));
    out << ',';
    put(spectral::sobolev_norm(u, s));
    out << ',';
    put(energy_functional(u, beta));
    for (int k : modes) {
      out << ',';
      put(std::abs(u[k]));
    }
    out << '\n';
  }
}

}  // namespace kawactrl::solver
