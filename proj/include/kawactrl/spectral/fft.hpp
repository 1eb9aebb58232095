#pragma once

#include <complex>
#include <memory>
#include <span>

namespace kawactrl::spectral {

// Real <-> half-complex transform of length n backed by FFTW.
//
// Conventions match SpectralField: forward() returns c_k = (1/n) sum_j
// u_j e^{-ikx_j} for k = 0..n/2, inverse() evaluates u_j = sum_k c_k e^{ikx_j}
// with the negative modes implied by Hermitian symmetry.  An instance owns its
// scratch buffers and must not be used from two threads at once; use
// thread_local_fft() to get a per-thread cached instance.
class RealFft {
 public:
  explicit RealFft(int n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int size() const noexcept { return n_; }
  int spectrum_size() const noexcept { return n_ / 2 + 1; }

  void forward(std::span<const double> samples,
               std::span<std::complex<double>> spectrum);
  void inverse(std::span<const std::complex<double>> spectrum,
               std::span<double> samples);

 private:
  struct Plans;
  int n_;
  std::unique_ptr<Plans> plans_;
};

RealFft& thread_local_fft(int n);

// Smallest even n >= min_size whose only prime factors are 2, 3 and 5.
int fft_friendly_size(int min_size);

}  // namespace kawactrl::spectral
