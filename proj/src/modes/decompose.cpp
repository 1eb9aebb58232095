#include "kawactrl/modes/decompose.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "kawactrl/errors.hpp"
#include "kawactrl/spectral/json.hpp"

namespace kawactrl::modes {

using spectral::Complex;

namespace {

// Flips the sign so the lowest mode's first nonzero (sin, cos) coefficient is
// positive.  B is even in zeta, so the decomposition is unchanged.
SpectralField canonical_sign(SpectralField z) {
  const int m = z.max_mode();
  for (int k = 1; k <= m; ++k) {
    const Complex c = z[k];
    if (c == Complex{}) continue;
    const double sin_coeff = -2.0 * c.imag();
    const double cos_coeff = 2.0 * c.real();
    const double lead = sin_coeff != 0.0 ? sin_coeff : cos_coeff;
    return lead < 0.0 ? -z : z;
  }
  return z;
}

// Smallest |j| (positive first) with j and k - j both in In \ {0}.
bool split_mode(int k, const IntSet& In, int& j_out) {
  const int m = In.max_abs();
  for (int a = 1; a <= m; ++a) {
    for (int j : {a, -a}) {
      const int p = k - j;
      if (p != 0 && In.contains(j) && In.contains(p)) {
        j_out = j;
        return true;
      }
    }
  }
  return false;
}

}  // namespace

TrigDecomposition decompose(const SpectralField& target, const IntSet& In) {
  if (!In.is_symmetric()) throw InvalidInput("decompose() needs a symmetric level set");
  TrigDecomposition d;
  d.target = target;
  const int M = target.max_mode();
  std::vector<Complex> eta(std::max(M, 0) + 1);
  if (target.mean() != 0.0) {
    if (!In.contains(0)) {
      throw ConstantNotRepresentable(
          "a constant is not of the form eta - sum B(zeta) over a level without 0");
    }
    eta[0] = target.mean();
  }
  for (int k = 1; k <= M; ++k) {
    const Complex c = target[k];
    if (c == Complex{}) continue;
    if (In.contains(k)) {
      eta[k] = c;
      continue;
    }
    int j = 0;
    if (!split_mode(k, In, j)) {
      throw InvalidInput("mode " + std::to_string(k) +
                         " is not a sum of two nonzero elements of the level set");
    }
    const int p = k - j;
    // a sin kx + b cos kx = R sin(k(x + x0))
    const double a = -2.0 * c.imag();
    const double b = 2.0 * c.real();
    const double R = std::hypot(a, b);
    const double phase = std::atan2(b, a);
    const double amp = std::sqrt(R / k);
    // sin(q(x + x0)) = sgn(q) cos(q x0) sin |q|x + sin(q x0) cos |q|x
    auto sin_term = [&](int q, double s) {
      const double ph = phase * q / k;
      const double sgn = q > 0 ? 1.0 : -1.0;
      return SpectralField::sin_cos(std::abs(q), s * sgn * std::cos(ph), s * std::sin(ph));
    };
    // cos(q(x + x0)) = cos(q x0) cos |q|x - sgn(q) sin(q x0) sin |q|x
    auto cos_term = [&](int q, double s) {
      const double ph = phase * q / k;
      const double sgn = q > 0 ? 1.0 : -1.0;
      return SpectralField::sin_cos(std::abs(q), -s * sgn * std::sin(ph), s * std::cos(ph));
    };
    if (j != p) {
      d.zetas.push_back(canonical_sign(sin_term(j, amp) + sin_term(p, -amp)));
    }
    d.zetas.push_back(canonical_sign(cos_term(j, amp) + cos_term(p, amp)));
  }
  d.eta = SpectralField(std::move(eta)).trimmed();
  d.residual = verify_decomposition(d);
  return d;
}

double verify_decomposition(const TrigDecomposition& d) {
  SpectralField r = d.eta - d.target;
  for (const auto& z : d.zetas) r -= spectral::bilinear_B(z);
  return r.max_abs_coefficient();
}

int support_level(const SpectralField& f, const ModeSet& I0) {
  int level = 0;
  if (f.mean() != 0.0) level = 1;
  for (int k = 1; k <= f.max_mode(); ++k) {
    if (f[k] == Complex{}) continue;
    level = std::max(level, min_level(k, I0).level);
  }
  return level;
}

bool supported_in(const SpectralField& f, const IntSet& S) {
  if (f.mean() != 0.0 && !S.contains(0)) return false;
  for (int k = 1; k <= f.max_mode(); ++k) {
    if (f[k] != Complex{} && !S.contains(k)) return false;
  }
  return true;
}

nlohmann::json to_json(const TrigDecomposition& d) {
  nlohmann::json zetas = nlohmann::json::array();
  for (const auto& z : d.zetas) zetas.push_back(spectral::to_json(z));
  return {{"target", spectral::to_json(d.target)},
          {"eta", spectral::to_json(d.eta)},
          {"zetas", zetas},
          {"residual", d.residual}};
}

}  // namespace kawactrl::modes
