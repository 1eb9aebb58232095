#pragma once

#include <random>
#include <vector>

#include "kawactrl/spectral/field.hpp"

namespace test_support {

using kawactrl::spectral::SpectralField;
using kawactrl::spectral::TrigTerm;

// Random real trig polynomial with modes 1..max_mode and coefficients in
// [-amp, amp]; a nonzero mean when with_mean is set.
inline SpectralField random_field(std::mt19937_64& rng, int max_mode, double amp = 1.0,
                                  bool with_mean = false) {
  std::uniform_real_distribution<double> u(-amp, amp);
  std::vector<TrigTerm> terms;
  for (int k = 1; k <= max_mode; ++k) terms.push_back({k, u(rng), u(rng)});
  SpectralField f = kawactrl::spectral::from_trig(terms);
  if (with_mean) f += SpectralField::constant(u(rng));
  return f;
}

inline double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
  return (a - b).max_abs_coefficient();
}

}  // namespace test_support
