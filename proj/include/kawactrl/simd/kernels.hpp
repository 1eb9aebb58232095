#pragma once

// Data-parallel inner loops of the spectral solver.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant.  The active table is chosen once at first use from the
// CPU features; setting KAWACTRL_SIMD=scalar in the environment forces the
// reference path.  Complex arrays are passed as interleaved (re, im) doubles,
// which is the layout of std::complex<double>.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace kawactrl::simd {

struct KernelTable {
  std::string_view name;

  // out[i] = a[i] * b[i]                      (complex, n entries)
  void (*cmul)(const double* a, const double* b, double* out, std::size_t n);
  // out[i] += a[i] * b[i]                     (complex)
  void (*cmul_acc)(const double* a, const double* b, double* out, std::size_t n);
  // out[i] = i * w[i] * in[i]                 (w real, in/out complex)
  void (*imul_real)(const double* w, const double* in, double* out, std::size_t n);
  // out[i] = a[i] + s * b[i]                  (complex arrays, real s)
  void (*axpby)(const double* a, double s, const double* b, double* out,
                std::size_t n);
  // out[i] = 0.5 * in[i]^2                    (real)
  void (*half_square)(const double* in, double* out, std::size_t n);
  // sum_i w[i] * |c[i]|^2                     (w real, c complex)
  double (*weighted_norm2)(const double* w, const double* c, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;
// nullptr when the binary or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels() noexcept;
const KernelTable& active_kernels() noexcept;

inline const double* as_doubles(std::span<const std::complex<double>> s) {
  return reinterpret_cast<const double*>(s.data());
}
inline double* as_doubles(std::span<std::complex<double>> s) {
  return reinterpret_cast<double*>(s.data());
}

}  // namespace kawactrl::simd
