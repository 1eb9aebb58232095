#pragma once

#include <ostream>
#include <vector>

#include "kawactrl/solver/kawahara.hpp"

namespace kawactrl::solver {

// -(1/3) int u^3 + beta ||u_x||^2 + ||u_xx||^2, conserved by the free flow.
// The cubic term uses the exact product, so no grid is involved.
double energy_functional(const SpectralField& u, double beta = 1.0);

// max_t | ||u(t)||_0 - ||u(0)||_0 |
double l2_norm_drift(const Trajectory& traj);
// max_t | E(u(t)) - E(u(0)) |
double energy_drift(const Trajectory& traj, double beta = 1.0);

// Columns: t, norm_0, norm_s, energy, then abs_c<k> for each k in `modes`.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                          spectral::SobolevIndex s,
                          const std::vector<int>& modes, double beta = 1.0);

}  // namespace kawactrl::solver
