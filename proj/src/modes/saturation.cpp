#include "kawactrl/modes/saturation.hpp"

#include <algorithm>
#include <deque>
#include <span>
#include <string>

#include "kawactrl/errors.hpp"

namespace kawactrl::modes {

namespace {

constexpr int kMaxSaturationDepth = 12;

void require_symmetric(const ModeSet& I0) {
  if (I0.empty()) throw InvalidInput("I0 must be nonempty");
  if (!I0.is_symmetric()) throw InvalidInput("I0 must be symmetric");
}

// I_n u (I_n + I_n) through a bitmap over [-span, span].
IntSet next_level(const IntSet& In) {
  const int span = 2 * In.max_abs();
  const int width = 2 * span + 1;
  std::vector<char> hit(width, 0);
  const auto& e = In.elements();
  for (int i : e) hit[i + span] = 1;
  for (std::size_t a = 0; a < e.size(); ++a) {
    for (std::size_t b = a; b < e.size(); ++b) hit[e[a] + e[b] + span] = 1;
  }
  std::vector<int> out;
  for (int x = 0; x < width; ++x) {
    if (hit[x]) out.push_back(x - span);
  }
  return IntSet(std::move(out));
}

}  // namespace

SaturationSequence saturate(const ModeSet& I0, int n) {
  require_symmetric(I0);
  if (n < 0 || n > kMaxSaturationDepth) {
    throw InvalidInput("saturate() depth must lie in [0, " +
                       std::to_string(kMaxSaturationDepth) + "]");
  }
  SaturationSequence seq;
  seq.levels.push_back(I0);
  for (int i = 0; i < n; ++i) seq.levels.push_back(next_level(seq.levels.back()));
  return seq;
}

namespace {

// Fewest coins from I0 summing to k, as a coin list.
std::vector<int> fewest_coins(int k, const ModeSet& I0) {
  const int m = I0.max_abs();
  const long lo = std::min(0, k) - static_cast<long>(m);
  const long hi = std::max(0, k) + static_cast<long>(m);
  const std::size_t width = static_cast<std::size_t>(hi - lo + 1);
  std::vector<int> via(width, 0);  // coin used to reach x; 0 = unvisited
  std::vector<char> seen(width, 0);
  std::deque<long> queue{0};
  seen[-lo] = 1;
  while (!queue.empty()) {
    const long x = queue.front();
    queue.pop_front();
    if (x == k) break;
    for (int c : I0.elements()) {
      const long y = x + c;
      if (y < lo || y > hi || seen[y - lo]) continue;
      seen[y - lo] = 1;
      via[y - lo] = c;
      queue.push_back(y);
    }
  }
  if (!seen[k - lo]) {
    throw SearchCapExceeded("mode " + std::to_string(k) +
                            " is not a sum of elements of I0 (gcd " +
                            std::to_string(gcd_of(I0)) + ")");
  }
  std::vector<int> coins;
  for (long x = k; x != 0; x -= via[x - lo]) coins.push_back(via[x - lo]);
  return coins;
}

// Appends the steps proving sum(coins) in I_n, with |coins| <= 2^n, and
// returns the index of the root step.
int build(std::span<const int> coins, int n, std::vector<WitnessStep>& out) {
  if (coins.size() == 1 && n >= 0) {
    if (n > 0) return build(coins, 0, out);
    out.push_back({0, coins[0], -1, -1});
    return static_cast<int>(out.size()) - 1;
  }
  const std::size_t half = std::size_t{1} << (n - 1);
  if (coins.size() <= half) return build(coins, n - 1, out);
  const int l = build(coins.first(half), n - 1, out);
  const int r = build(coins.subspan(half), n - 1, out);
  out.push_back({n, out[l].value + out[r].value, l, r});
  return static_cast<int>(out.size()) - 1;
}

}  // namespace

LevelWitness min_level(int k, const ModeSet& I0) {
  require_symmetric(I0);
  LevelWitness w;
  w.k = k;
  if (I0.contains(k)) {
    w.steps.push_back({0, k, -1, -1});
    return w;
  }
  std::vector<int> coins;
  if (k == 0) {
    const int t = I0.positive().front();
    coins = {t, -t};
  } else {
    coins = fewest_coins(k, I0);
  }
  int n = 1;
  while ((std::size_t{1} << n) < coins.size()) ++n;
  w.level = n;
  build(coins, n, w.steps);
  return w;
}

bool verify_witness(const LevelWitness& w, const ModeSet& I0) {
  if (w.steps.empty()) return false;
  for (std::size_t i = 0; i < w.steps.size(); ++i) {
    const auto& s = w.steps[i];
    if (s.level == 0) {
      if (!I0.contains(s.value)) return false;
      continue;
    }
    if (s.left < 0 || s.right < 0 || static_cast<std::size_t>(s.left) >= i ||
        static_cast<std::size_t>(s.right) >= i) {
      return false;
    }
    const auto& l = w.steps[s.left];
    const auto& r = w.steps[s.right];
    if (l.level > s.level - 1 || r.level > s.level - 1) return false;
    if (l.value + r.value != s.value) return false;
  }
  const auto& root = w.steps.back();
  return root.value == w.k && root.level <= w.level;
}

}  // namespace kawactrl::modes
