#include "kawactrl/simd/kernels.hpp"

namespace kawactrl::simd {
namespace {

void cmul(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[2 * i], ai = a[2 * i + 1];
    const double br = b[2 * i], bi = b[2 * i + 1];
    out[2 * i] = ar * br - ai * bi;
    out[2 * i + 1] = ar * bi + ai * br;
  }
}

void cmul_acc(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[2 * i], ai = a[2 * i + 1];
    const double br = b[2 * i], bi = b[2 * i + 1];
    out[2 * i] += ar * br - ai * bi;
    out[2 * i + 1] += ar * bi + ai * br;
  }
}

void imul_real(const double* w, const double* in, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = in[2 * i], im = in[2 * i + 1];
    out[2 * i] = -w[i] * im;
    out[2 * i + 1] = w[i] * re;
  }
}

void axpby(const double* a, double s, const double* b, double* out,
           std::size_t n) {
  for (std::size_t i = 0; i < 2 * n; ++i) out[i] = a[i] + s * b[i];
}

void half_square(const double* in, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * in[i] * in[i];
}

double weighted_norm2(const double* w, const double* c, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += w[i] * (c[2 * i] * c[2 * i] + c[2 * i + 1] * c[2 * i + 1]);
  }
  return acc;
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{"scalar",  cmul,         cmul_acc,
                                 imul_real, axpby,        half_square,
                                 weighted_norm2};
  return table;
}

}  // namespace kawactrl::simd
