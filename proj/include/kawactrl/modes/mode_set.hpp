#pragma once

#include <initializer_list>
#include <vector>

namespace kawactrl::modes {

// Finite set of integers, kept sorted and unique.
class IntSet {
 public:
  IntSet() = default;
  explicit IntSet(std::vector<int> elems);
  IntSet(std::initializer_list<int> elems) : IntSet(std::vector<int>(elems)) {}

  const std::vector<int>& elements() const noexcept { return e_; }
  bool contains(int k) const noexcept;
  bool empty() const noexcept { return e_.empty(); }
  std::size_t size() const noexcept { return e_.size(); }
  bool is_symmetric() const noexcept;
  // Elements > 0, ascending.
  std::vector<int> positive() const;
  int max_abs() const noexcept;
  // Every element is a multiple of d.
  bool within_lattice(int d) const noexcept;

  friend bool operator==(const IntSet&, const IntSet&) = default;

 protected:
  std::vector<int> e_;
};

// A set of nonzero modes, the I of a control space H(I).
class ModeSet : public IntSet {
 public:
  ModeSet() = default;
  // Throws InvalidInput if 0 is present.
  explicit ModeSet(std::vector<int> elems);
  ModeSet(std::initializer_list<int> elems) : ModeSet(std::vector<int>(elems)) {}

  // {-k, k} for every listed k > 0.
  static ModeSet symmetric(const std::vector<int>& positive);
};

// gcd of |i| over the set (0 for the empty set).
int gcd_of(const IntSet& s) noexcept;
bool is_generator(const ModeSet& I);

}  // namespace kawactrl::modes
