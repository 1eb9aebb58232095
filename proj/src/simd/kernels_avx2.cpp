// Compiled with -mavx2 -mfma.  Only raw pointers and intrinsics appear here so
// no inline library code is emitted with AVX encodings.

#include "kawactrl/simd/kernels.hpp"

#if defined(KAWACTRL_HAVE_AVX2)

#include <immintrin.h>

namespace kawactrl::simd {
namespace {

// Two complex numbers per register: [r0, i0, r1, i1].
inline __m256d complex_mul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline void complex_mul_tail(const double* a, const double* b, double* out) {
  const double ar = a[0], ai = a[1], br = b[0], bi = b[1];
  out[0] = ar * br - ai * bi;
  out[1] = ar * bi + ai * br;
}

void cmul(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(a + 2 * i);
    const __m256d vb = _mm256_loadu_pd(b + 2 * i);
    _mm256_storeu_pd(out + 2 * i, complex_mul(va, vb));
  }
  if (i < n) complex_mul_tail(a + 2 * i, b + 2 * i, out + 2 * i);
}

void cmul_acc(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(a + 2 * i);
    const __m256d vb = _mm256_loadu_pd(b + 2 * i);
    const __m256d vo = _mm256_loadu_pd(out + 2 * i);
    _mm256_storeu_pd(out + 2 * i, _mm256_add_pd(vo, complex_mul(va, vb)));
  }
  if (i < n) {
    double t[2];
    complex_mul_tail(a + 2 * i, b + 2 * i, t);
    out[2 * i] += t[0];
    out[2 * i + 1] += t[1];
  }
}

void imul_real(const double* w, const double* in, double* out, std::size_t n) {
  // i * w * (re + i im) = (-w im) + i (w re)
  const __m256d sign = _mm256_setr_pd(-1.0, 1.0, -1.0, 1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m128d w2 = _mm_loadu_pd(w + i);
    const __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w2), 0x50);
    const __m256d v = _mm256_loadu_pd(in + 2 * i);
    const __m256d sw = _mm256_permute_pd(v, 0x5);
    _mm256_storeu_pd(out + 2 * i, _mm256_mul_pd(_mm256_mul_pd(sw, ww), sign));
  }
  for (; i < n; ++i) {
    const double re = in[2 * i], im = in[2 * i + 1];
    out[2 * i] = -w[i] * im;
    out[2 * i + 1] = w[i] * re;
  }
}

void axpby(const double* a, double s, const double* b, double* out,
           std::size_t n) {
  const std::size_t m = 2 * n;
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(vs, vb, va));
  }
  for (; i < m; ++i) out[i] = a[i] + s * b[i];
}

void half_square(const double* in, double* out, std::size_t n) {
  const __m256d half = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(in + i);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(half, _mm256_mul_pd(v, v)));
  }
  for (; i < n; ++i) out[i] = 0.5 * in[i] * in[i];
}

double weighted_norm2(const double* w, const double* c, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m128d w2 = _mm_loadu_pd(w + i);
    const __m256d ww = _mm256_permute4x64_pd(_mm256_castpd128_pd256(w2), 0x50);
    const __m256d v = _mm256_loadu_pd(c + 2 * i);
    acc = _mm256_fmadd_pd(ww, _mm256_mul_pd(v, v), acc);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    total += w[i] * (c[2 * i] * c[2 * i] + c[2 * i + 1] * c[2 * i + 1]);
  }
  return total;
}

}  // namespace

const KernelTable* avx2_kernels_unchecked() noexcept {
  static const KernelTable table{"avx2",    cmul,         cmul_acc,
                                 imul_real, axpby,        half_square,
                                 weighted_norm2};
  return &table;
}

}  // namespace kawactrl::simd

#endif
