#pragma once

#include <json.hpp>
#include <vector>

#include "kawactrl/modes/mode_set.hpp"
#include "kawactrl/modes/saturation.hpp"
#include "kawactrl/spectral/field.hpp"

namespace kawactrl::modes {

using spectral::SpectralField;

// target = eta - sum_i B(zeta_i), with eta and every zeta_i supported in the
// level set the decomposition was taken over.
struct TrigDecomposition {
  SpectralField target;
  SpectralField eta;
  std::vector<SpectralField> zetas;
  double residual = 0.0;
};

// Writes every mode of `target` over the level set `In`:
//   - modes already in In (and the constant, when 0 is in In) go to eta;
//   - a mode k = j + p with j, p in In \ {0} is produced exactly by the pair
//       zeta_1 = c (sin jy - sin py),  zeta_2 = c (cos jy + cos py),
//     y = x + x0, since zeta_1^2 + zeta_2^2 = 2c^2 (1 + cos ky).  The phase
//     x0 and c = sqrt(R / k) match R sin(k(x + x0)) to the target; zeta_1
//     vanishes when j = p.
// j is the element of smallest |j| (positive first) with k - j also in
// In \ {0}.  Throws ConstantNotRepresentable for a constant with 0 not in In,
// InvalidInput for a mode outside In + In.
TrigDecomposition decompose(const SpectralField& target, const IntSet& In);

// max_k |(eta - sum B(zeta_i) - target)_k| by exact convolution.
double verify_decomposition(const TrigDecomposition& d);

// Smallest n with every nonzero mode of f in I_n (0 for the zero field;
// the constant needs n >= 1).
int support_level(const SpectralField& f, const ModeSet& I0);

// Every nonzero mode of f lies in S.
bool supported_in(const SpectralField& f, const IntSet& S);

nlohmann::json to_json(const TrigDecomposition& d);

}  // namespace kawactrl::modes
