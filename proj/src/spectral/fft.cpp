#include "kawactrl/spectral/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>

#include "kawactrl/errors.hpp"

namespace kawactrl::spectral {
namespace {

// FFTW planning is not thread safe; execution with the new-array API is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct RealFft::Plans {
  double* real = nullptr;
  fftw_complex* cplx = nullptr;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (r2c != nullptr) fftw_destroy_plan(r2c);
    if (c2r != nullptr) fftw_destroy_plan(c2r);
    fftw_free(real);
    fftw_free(cplx);
  }
};

RealFft::RealFft(int n) : n_(n), plans_(std::make_unique<Plans>()) {
  if (n < 2) throw InvalidInput("fft size must be at least 2");
  std::lock_guard lock(planner_mutex());
  plans_->real = fftw_alloc_real(static_cast<std::size_t>(n));
  plans_->cplx = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
  // FFTW_ESTIMATE keeps plans (and therefore results) reproducible run to run.
  plans_->r2c = fftw_plan_dft_r2c_1d(n, plans_->real, plans_->cplx,
                                     FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
  plans_->c2r = fftw_plan_dft_c2r_1d(n, plans_->cplx, plans_->real,
                                     FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
}

RealFft::~RealFft() = default;

void RealFft::forward(std::span<const double> samples,
                      std::span<std::complex<double>> spectrum) {
  std::copy(samples.begin(), samples.end(), plans_->real);
  fftw_execute(plans_->r2c);
  const double scale = 1.0 / n_;
  auto* out = reinterpret_cast<const std::complex<double>*>(plans_->cplx);
  for (int k = 0; k < spectrum_size(); ++k) spectrum[k] = out[k] * scale;
}

void RealFft::inverse(std::span<const std::complex<double>> spectrum,
                      std::span<double> samples) {
  auto* in = reinterpret_cast<std::complex<double>*>(plans_->cplx);
  std::copy(spectrum.begin(), spectrum.end(), in);
  fftw_execute(plans_->c2r);
  std::copy(plans_->real, plans_->real + n_, samples.begin());
}

RealFft& thread_local_fft(int n) {
  thread_local std::map<int, std::unique_ptr<RealFft>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<RealFft>(n);
  return *slot;
}

int fft_friendly_size(int min_size) {
  for (int n = std::max(2, min_size + (min_size & 1));; n += 2) {
    int m = n;
    for (int p : {2, 3, 5}) {
      while (m % p == 0) m /= p;
    }
    if (m == 1) return n;
  }
}

}  // namespace kawactrl::spectral
