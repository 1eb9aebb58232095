#pragma once

#include <vector>

#include "kawactrl/modes/mode_set.hpp"

namespace kawactrl::modes {

// I_0 = I, I_{n+1} = I_n u (I_n + I_n).
//
// The literal rule I_{n+1} = I_n + I_n loses the odd modes after one step
// when I = {+-1}; keeping I_n restores the union over n to all of Z for
// generators.  For n >= 1 the level I_n is exactly the set of sums of 2^n
// terms drawn from I u {0}.
struct SaturationSequence {
  std::vector<IntSet> levels;

  int depth() const noexcept { return static_cast<int>(levels.size()) - 1; }
  const IntSet& level(int n) const { return levels.at(n); }
};

// Levels 0..n by direct sumset enumeration.  I0 must be symmetric and
// nonempty.
SaturationSequence saturate(const ModeSet& I0, int n);

// One membership fact: `value` lies in I_level, either because it is in I_0
// (level 0) or because value = left + right with both in I_{level-1}.  The
// children are indices of earlier steps in the same witness.
struct WitnessStep {
  int level = 0;
  int value = 0;
  int left = -1;
  int right = -1;
};

struct LevelWitness {
  int k = 0;
  int level = 0;
  std::vector<WitnessStep> steps;  // children before parents; root last
};

// Smallest n with k in I_n, with a witness tree of sums.  Found from the
// fewest-coins representation of k over I0 (breadth-first over partial sums
// in a window that provably contains an optimal ordering).  Throws
// SearchCapExceeded when k is not reachable at all (k outside gcd(I0) Z).
LevelWitness min_level(int k, const ModeSet& I0);

// Replays a witness against I0 alone; true iff every step is justified and
// the root proves k in I_level.
bool verify_witness(const LevelWitness& w, const ModeSet& I0);

}  // namespace kawactrl::modes
