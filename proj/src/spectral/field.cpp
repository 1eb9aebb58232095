#include "kawactrl/spectral/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "kawactrl/errors.hpp"
#include "kawactrl/simd/kernels.hpp"
#include "kawactrl/spectral/fft.hpp"

namespace kawactrl::spectral {

SobolevIndex::SobolevIndex(int s) : s_(s) {
  if (s < 0) throw InvalidInput("sobolev index must be nonnegative");
}

SpectralField::SpectralField(std::vector<Complex> nonnegative_modes)
    : c_(std::move(nonnegative_modes)) {
  if (!c_.empty()) c_[0] = Complex(c_[0].real(), 0.0);
}

SpectralField SpectralField::constant(double value) {
  return SpectralField(std::vector<Complex>{Complex(value, 0.0)});
}

SpectralField SpectralField::sin_cos(int k, double a, double b) {
  const TrigTerm term{k, a, b};
  return from_trig(std::span<const TrigTerm>(&term, 1));
}

Complex SpectralField::operator[](int k) const noexcept {
  const auto idx = static_cast<std::size_t>(k < 0 ? -k : k);
  if (idx >= c_.size()) return {};
  return k < 0 ? std::conj(c_[idx]) : c_[idx];
}

int SpectralField::max_mode() const noexcept {
  for (auto k = static_cast<int>(c_.size()) - 1; k >= 0; --k) {
    if (c_[k] != Complex{}) return k;
  }
  return -1;
}

double SpectralField::max_abs_coefficient() const noexcept {
  double m = 0.0;
  for (const auto& c : c_) m = std::max(m, std::abs(c));
  return m;
}

double SpectralField::sup_bound() const noexcept {
  if (c_.empty()) return 0.0;
  double acc = std::abs(c_[0]);
  for (std::size_t k = 1; k < c_.size(); ++k) acc += 2.0 * std::abs(c_[k]);
  return acc;
}

SpectralField SpectralField::with_mode(int k, Complex value) const {
  if (k < 0) return with_mode(-k, std::conj(value));
  auto c = c_;
  if (static_cast<std::size_t>(k) >= c.size()) c.resize(k + 1);
  c[k] = value;
  return SpectralField(std::move(c));
}

SpectralField SpectralField::without_mean() const {
  if (c_.empty()) return *this;
  return with_mode(0, Complex{});
}

SpectralField SpectralField::truncated(int m) const {
  if (m < 0) return {};
  auto c = c_;
  if (c.size() > static_cast<std::size_t>(m) + 1) c.resize(m + 1);
  return SpectralField(std::move(c));
}

SpectralField SpectralField::trimmed() const {
  return truncated(max_mode());
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (other.c_.size() > c_.size()) c_.resize(other.c_.size());
  for (std::size_t k = 0; k < other.c_.size(); ++k) c_[k] += other.c_[k];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (other.c_.size() > c_.size()) c_.resize(other.c_.size());
  for (std::size_t k = 0; k < other.c_.size(); ++k) c_[k] -= other.c_[k];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& c : c_) c *= s;
  return *this;
}

bool operator==(const SpectralField& a, const SpectralField& b) {
  const int m = a.max_mode();
  if (m != b.max_mode()) return false;
  for (int k = 0; k <= m; ++k) {
    if (a[k] != b[k]) return false;
  }
  return true;
}

SpectralField from_trig(std::span<const TrigTerm> terms) {
  std::set<int> seen;
  int top = 0;
  for (const auto& t : terms) {
    if (t.k < 1) throw InvalidInput("trig term mode must be >= 1");
    if (!seen.insert(t.k).second) {
      throw InvalidInput("duplicate trig term mode " + std::to_string(t.k));
    }
    top = std::max(top, t.k);
  }
  if (terms.empty()) return {};
  std::vector<Complex> c(top + 1);
  // a sin kx + b cos kx = ((b - ia)/2) e^{ikx} + ((b + ia)/2) e^{-ikx}
  for (const auto& t : terms) c[t.k] = Complex(t.b / 2.0, -t.a / 2.0);
  return SpectralField(std::move(c));
}

SpectralField from_trig(std::initializer_list<TrigTerm> terms) {
  return from_trig(std::span<const TrigTerm>(terms.begin(), terms.size()));
}

double sobolev_norm(const SpectralField& f, SobolevIndex s) {
  const auto c = f.coefficients();
  if (c.empty()) return 0.0;
  std::vector<double> w(c.size());
  w[0] = 1.0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    const double kk = static_cast<double>(k);
    w[k] = 2.0 * std::pow(1.0 + kk * kk, s.value());
  }
  const double sum = simd::active_kernels().weighted_norm2(
      w.data(), simd::as_doubles(c), c.size());
  return std::sqrt(2.0 * std::numbers::pi * sum);
}

double l2_inner(const SpectralField& f, const SpectralField& g) {
  const int m = std::min(f.max_mode(), g.max_mode());
  if (m < 0) return 0.0;
  double acc = f[0].real() * g[0].real();
  for (int k = 1; k <= m; ++k) acc += 2.0 * (f[k] * std::conj(g[k])).real();
  return 2.0 * std::numbers::pi * acc;
}

SpectralField derivative(const SpectralField& f, int m) {
  if (m < 0) throw InvalidInput("derivative order must be nonnegative");
  if (m == 0) return f;
  static constexpr Complex kUnitPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex unit = kUnitPowers[m % 4];
  const auto c = f.coefficients();
  std::vector<Complex> out(c.size());
  for (std::size_t k = 1; k < c.size(); ++k) {
    out[k] = c[k] * unit * std::pow(static_cast<double>(k), m);
  }
  return SpectralField(std::move(out));
}

namespace {

// Two-sided exact convolution: out_n = sum_j a_j b_{n-j}, n = 0..ma+mb.
SpectralField convolve(const SpectralField& a, const SpectralField& b) {
  const int ma = a.max_mode();
  const int mb = b.max_mode();
  if (ma < 0 || mb < 0) return {};
  const int top = ma + mb;
  std::vector<Complex> out(top + 1);
  for (int n = 0; n <= top; ++n) {
    Complex acc{};
    const int lo = std::max(-ma, n - mb);
    const int hi = std::min(ma, n + mb);
    for (int j = lo; j <= hi; ++j) acc += a[j] * b[n - j];
    out[n] = acc;
  }
  return SpectralField(std::move(out));
}

}  // namespace

SpectralField bilinear_B(const SpectralField& f, const SpectralField& g) {
  return convolve(f, derivative(g, 1));
}

SpectralField product(const SpectralField& f, const SpectralField& g) {
  return convolve(f, g);
}

std::vector<double> grid_evaluate(const SpectralField& f, int n_points) {
  const int m = f.max_mode();
  if (n_points < 2 * std::max(m, 0) + 2) {
    throw UndersampledError("grid of " + std::to_string(n_points) +
                            " points cannot resolve mode " + std::to_string(m));
  }
  auto& fft = thread_local_fft(n_points);
  std::vector<Complex> spec(fft.spectrum_size());
  for (int k = 0; k <= m; ++k) spec[k] = f[k];
  std::vector<double> samples(n_points);
  fft.inverse(spec, samples);
  return samples;
}

SpectralField grid_transform(std::span<const double> samples) {
  const int n = static_cast<int>(samples.size());
  if (n < 2) throw UndersampledError("grid transform needs at least 2 samples");
  auto& fft = thread_local_fft(n);
  std::vector<Complex> spec(fft.spectrum_size());
  fft.forward(samples, spec);
  spec.resize((n - 1) / 2 + 1);
  return SpectralField(std::move(spec));
}

double imaginary_residual(const SpectralField& f) {
  const int m = std::max(f.max_mode(), 0);
  const int n = 2 * m + 2;
  double worst = 0.0;
  for (int j = 0; j < n; ++j) {
    const double x = 2.0 * std::numbers::pi * j / n;
    Complex acc{};
    for (int k = -m; k <= m; ++k) acc += f[k] * std::polar(1.0, k * x);
    worst = std::max(worst, std::abs(acc.imag()));
  }
  return worst;
}

}  // namespace kawactrl::spectral
