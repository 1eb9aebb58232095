#include "kawactrl/modes/mode_set.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "kawactrl/errors.hpp"

namespace kawactrl::modes {

IntSet::IntSet(std::vector<int> elems) : e_(std::move(elems)) {
  std::sort(e_.begin(), e_.end());
  e_.erase(std::unique(e_.begin(), e_.end()), e_.end());
}

bool IntSet::contains(int k) const noexcept {
  return std::binary_search(e_.begin(), e_.end(), k);
}

bool IntSet::is_symmetric() const noexcept {
  return std::all_of(e_.begin(), e_.end(), [&](int k) { return contains(-k); });
}

std::vector<int> IntSet::positive() const {
  return {std::upper_bound(e_.begin(), e_.end(), 0), e_.end()};
}

int IntSet::max_abs() const noexcept {
  if (e_.empty()) return 0;
  return std::max(std::abs(e_.front()), std::abs(e_.back()));
}

bool IntSet::within_lattice(int d) const noexcept {
  return std::all_of(e_.begin(), e_.end(), [&](int k) { return k % d == 0; });
}

ModeSet::ModeSet(std::vector<int> elems) : IntSet(std::move(elems)) {
  if (contains(0)) throw InvalidInput("a mode set may not contain 0");
}

ModeSet ModeSet::symmetric(const std::vector<int>& positive) {
  std::vector<int> e;
  for (int k : positive) {
    if (k <= 0) throw InvalidInput("symmetric(): list positive modes only");
    e.push_back(k);
    e.push_back(-k);
  }
  return ModeSet(std::move(e));
}

int gcd_of(const IntSet& s) noexcept {
  int g = 0;
  for (int k : s.elements()) g = std::gcd(g, k);
  return g;
}

bool is_generator(const ModeSet& I) {
  if (I.empty()) throw InvalidInput("is_generator() needs a nonempty set");
  return gcd_of(I) == 1;
}

}  // namespace kawactrl::modes
