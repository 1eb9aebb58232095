#pragma once

#include <complex>
#include <span>
#include <vector>

namespace kawactrl::spectral {

using Complex = std::complex<double>;

// Order s of the Sobolev norm; only nonnegative integers are supported.
class SobolevIndex {
 public:
  constexpr SobolevIndex() = default;
  explicit SobolevIndex(int s);
  constexpr int value() const noexcept { return s_; }

 private:
  int s_ = 0;
};

// A real trigonometric polynomial f(x) = sum_k c_k e^{ikx} on [0, 2pi).
//
// Only c_0..c_M are stored; c_{-k} = conj(c_k) is implied, so every value of
// this type is real-valued by construction.  The imaginary part supplied for
// c_0 is discarded.
class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(std::vector<Complex> nonnegative_modes);

  static SpectralField zero() { return {}; }
  static SpectralField constant(double value);
  // a sin(kx) + b cos(kx) for a single k >= 1.
  static SpectralField sin_cos(int k, double a, double b);

  // c_k for any integer k (0 outside the stored range).
  Complex operator[](int k) const noexcept;
  std::span<const Complex> coefficients() const noexcept { return c_; }
  std::size_t stored_modes() const noexcept { return c_.size(); }

  // Largest |k| with c_k != 0, or -1 for the zero field.
  int max_mode() const noexcept;
  double mean() const noexcept { return c_.empty() ? 0.0 : c_[0].real(); }
  bool is_zero() const noexcept { return max_mode() < 0; }
  double max_abs_coefficient() const noexcept;
  // Upper bound on sup_x |f(x)|: |c_0| + 2 sum_{k>0} |c_k|.
  double sup_bound() const noexcept;

  SpectralField with_mode(int k, Complex value) const;
  SpectralField without_mean() const;
  // Field restricted to modes with |k| <= m.
  SpectralField truncated(int m) const;
  // Drops trailing exactly-zero coefficients.
  SpectralField trimmed() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) {
    return a += b;
  }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) {
    return a -= b;
  }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
  friend SpectralField operator-(SpectralField a) { return a *= -1.0; }

  // Exact coefficient equality after trimming trailing zeros.
  friend bool operator==(const SpectralField& a, const SpectralField& b);

 private:
  std::vector<Complex> c_;
};

struct TrigTerm {
  int k;      // >= 1
  double a;   // coefficient of sin(kx)
  double b;   // coefficient of cos(kx)
};

SpectralField from_trig(std::span<const TrigTerm> terms);
SpectralField from_trig(std::initializer_list<TrigTerm> terms);

// (2 pi sum_k (1 + k^2)^s |c_k|^2)^{1/2}; s = 0 is the L^2(0, 2pi) norm.
double sobolev_norm(const SpectralField& f, SobolevIndex s);
// Integral of f(x) g(x) over the period.
double l2_inner(const SpectralField& f, const SpectralField& g);

// m-th derivative: c_k -> (ik)^m c_k.
SpectralField derivative(const SpectralField& f, int m);

// f * d/dx g by exact convolution of the coefficient sequences.  The support
// of the result is bounded by the sum of the input supports.
SpectralField bilinear_B(const SpectralField& f, const SpectralField& g);
// u u_x.
inline SpectralField bilinear_B(const SpectralField& u) { return bilinear_B(u, u); }
// f * g by exact convolution.
SpectralField product(const SpectralField& f, const SpectralField& g);

// Samples at x_j = 2 pi j / n.  Throws UndersampledError unless
// n >= 2 max_mode + 2.
std::vector<double> grid_evaluate(const SpectralField& f, int n_points);
// Inverse of grid_evaluate; returns modes 0..(n-1)/2 (the Nyquist mode of an
// even grid is discarded).
SpectralField grid_transform(std::span<const double> samples);

// max_j |Im sum_{|k|<=M} c_k e^{ikx_j}| over 2M+2 grid points, computed in
// complex arithmetic from the two-sided sequence.  Zero up to rounding for
// every Hermitian-symmetric field.
double imaginary_residual(const SpectralField& f);

}  // namespace kawactrl::spectral
