#include "kawactrl/solver/kawahara.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "kawactrl/errors.hpp"
#include "kawactrl/simd/kernels.hpp"
#include "kawactrl/spectral/fft.hpp"

namespace kawactrl::solver {

void SolverConfig::validate() const {
  if (n_modes < 8) throw InvalidInput("n_modes must be at least 8");
  if (!(dt_max > 0.0)) throw InvalidInput("dt_max must be positive");
  if (!(cfl_coeff > 0.0)) throw InvalidInput("cfl_coeff must be positive");
  if (!(dealias_fraction > 0.0 && dealias_fraction <= 1.0)) {
    throw InvalidInput("dealias_fraction must lie in (0, 1]");
  }
  if (min_steps < 1) throw InvalidInput("min_steps must be at least 1");
  if (max_steps < min_steps) throw InvalidInput("max_steps below min_steps");
  if (!(resolution_tol > 0.0)) throw InvalidInput("resolution_tol must be positive");
}

int SolverConfig::grid_size() const {
  const double needed = 2.0 * n_modes / dealias_fraction;
  return spectral::fft_friendly_size(
      std::max(2 * n_modes + 2, static_cast<int>(std::ceil(needed - 1e-9))));
}

SpectralField linear_group(double t, const SpectralField& f,
                           const LinearSymbol& sym) {
  const auto c = f.coefficients();
  std::vector<Complex> out(c.begin(), c.end());
  for (std::size_t k = 1; k < out.size(); ++k) {
    out[k] *= std::polar(1.0, sym.frequency(static_cast<int>(k)) * t);
  }
  return SpectralField(std::move(out));
}

namespace {

using Vec = std::vector<Complex>;

struct EtdCoefficients {
  Vec e, e2, q, f1, f2, f3;
};

// phi-type functions of z = lambda h.  Near z = 0 the closed forms cancel
// catastrophically, so they are averaged over a unit circle around z.
EtdCoefficients etd_coefficients(const LinearSymbol& sym, int K, double h) {
  constexpr int kContour = 32;
  EtdCoefficients c;
  for (auto* v : {&c.e, &c.e2, &c.q, &c.f1, &c.f2, &c.f3}) v->resize(K + 1);
  auto closed = [](Complex z, Complex& q, Complex& f1, Complex& f2,
                   Complex& f3) {
    const Complex ez = std::exp(z);
    const Complex z3 = z * z * z;
    q = (std::exp(z / 2.0) - 1.0) / z;
    f1 = (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
    f2 = (2.0 + z + ez * (z - 2.0)) / z3;
    f3 = (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
  };
  for (int k = 0; k <= K; ++k) {
    const Complex z(0.0, sym.frequency(k) * h);
    c.e[k] = std::polar(1.0, z.imag());
    c.e2[k] = std::polar(1.0, z.imag() / 2.0);
    Complex q, f1, f2, f3;
    if (std::abs(z) >= 0.5) {
      closed(z, q, f1, f2, f3);
    } else {
      for (int j = 0; j < kContour; ++j) {
        const Complex zj =
            z + std::polar(1.0, std::numbers::pi * (j + 0.5) / (kContour / 2));
        Complex qj, a, b, d;
        closed(zj, qj, a, b, d);
        q += qj;
        f1 += a;
        f2 += b;
        f3 += d;
      }
      q /= kContour;
      f1 /= kContour;
      f2 /= kContour;
      f3 /= kContour;
    }
    c.q[k] = h * q;
    c.f1[k] = h * f1;
    c.f2[k] = 2.0 * h * f2;
    c.f3[k] = h * f3;
  }
  return c;
}

class Integrator {
 public:
  Integrator(const SolverConfig& cfg, double mean)
      : cfg_(cfg),
        K_(cfg.n_modes),
        sym_{mean, cfg.beta},
        fft_(spectral::thread_local_fft(cfg.grid_size())),
        kernels_(simd::active_kernels()),
        grid_(fft_.size()),
        spec_(fft_.spectrum_size()),
        minus_k_(K_ + 1) {
    for (int k = 0; k <= K_; ++k) minus_k_[k] = -static_cast<double>(k);
  }

  int modes() const noexcept { return K_; }

  // Advances the mean-free coefficients w (size K+1) by `duration` under the
  // constant forcing f.  on_step(j, n, w) is called after step j of n.
  template <class OnStep>
  void advance(Vec& w, double duration, const Vec& f, double sup_bound,
               OnStep&& on_step) {
    const double umax = sup_bound + duration * sup_of(f);
    const double dt_cfl = cfg_.cfl_coeff / (K_ * (1.0 + umax));
    const double dt = std::min(cfg_.dt_max, dt_cfl);
    const double steps_exact = std::ceil(duration / dt);
    if (!(steps_exact <= static_cast<double>(cfg_.max_steps))) {
      throw WorkLimitError("segment of " + std::to_string(duration) +
                           " s needs more than max_steps = " +
                           std::to_string(cfg_.max_steps) + " steps");
    }
    const long n = std::max<long>(cfg_.min_steps, static_cast<long>(steps_exact));
    const double h = duration / static_cast<double>(n);
    if (cfg_.scheme == TimeScheme::etdrk4) {
      const auto co = etd_coefficients(sym_, K_, h);
      for (long j = 1; j <= n; ++j) {
        etd_step(w, f, co);
        on_step(j, n, w);
      }
    } else {
      Vec e(K_ + 1), e2(K_ + 1);
      for (int k = 0; k <= K_; ++k) {
        e[k] = std::polar(1.0, sym_.frequency(k) * h);
        e2[k] = std::polar(1.0, sym_.frequency(k) * h / 2.0);
      }
      for (long j = 1; j <= n; ++j) {
        lawson_step(w, f, e, e2, h);
        on_step(j, n, w);
      }
    }
  }

  double sup_of(const Vec& v) const {
    double acc = 0.0;
    for (const auto& c : v) acc += 2.0 * std::abs(c);
    return acc;
  }

 private:
  // out = -(w^2 / 2)_x + f on the retained band, 2/3-style zero padding.
  void nonlinear(const Vec& w, const Vec& f, Vec& out) {
    std::fill(spec_.begin(), spec_.end(), Complex{});
    std::copy(w.begin(), w.end(), spec_.begin());
    spec_[0] = Complex{};
    fft_.inverse(spec_, grid_);
    kernels_.half_square(grid_.data(), grid_.data(), grid_.size());
    fft_.forward(grid_, spec_);
    kernels_.imul_real(minus_k_.data(), simd::as_doubles(std::span(spec_)),
                       simd::as_doubles(std::span(out)), out.size());
    kernels_.axpby(simd::as_doubles(std::span(out)), 1.0,
                   simd::as_doubles(std::span(f)),
                   simd::as_doubles(std::span(out)), out.size());
  }

  static double* d(Vec& v) { return simd::as_doubles(std::span(v)); }
  static const double* d(const Vec& v) {
    return simd::as_doubles(std::span<const Complex>(v));
  }

  void etd_step(Vec& u, const Vec& f, const EtdCoefficients& co) {
    const std::size_t n = u.size();
    Vec& nu = s1_;
    Vec& na = s2_;
    Vec& nb = s3_;
    Vec& nc = s4_;
    Vec& a = t1_;
    Vec& b = t2_;
    Vec& c = t3_;
    for (auto* v : {&nu, &na, &nb, &nc, &a, &b, &c}) v->resize(n);

    nonlinear(u, f, nu);
    kernels_.cmul(d(co.e2), d(u), d(a), n);
    kernels_.cmul_acc(d(co.q), d(nu), d(a), n);
    nonlinear(a, f, na);
    kernels_.cmul(d(co.e2), d(u), d(b), n);
    kernels_.cmul_acc(d(co.q), d(na), d(b), n);
    nonlinear(b, f, nb);
    // c = e2 a + q (2 nb - nu); reuse nc as scratch for 2 nb - nu.
    kernels_.axpby(d(nu), -2.0, d(nb), d(nc), n);
    kernels_.cmul(d(co.e2), d(a), d(c), n);
    for (std::size_t k = 0; k < n; ++k) nc[k] = -nc[k];
    kernels_.cmul_acc(d(co.q), d(nc), d(c), n);
    nonlinear(c, f, nc);
    // u' = e u + f1 nu + 2 f2 (na + nb) + f3 nc; f2 arrives pre-doubled.
    kernels_.axpby(d(na), 1.0, d(nb), d(na), n);
    kernels_.cmul(d(co.e), d(u), d(a), n);
    kernels_.cmul_acc(d(co.f1), d(nu), d(a), n);
    kernels_.cmul_acc(d(co.f2), d(na), d(a), n);
    kernels_.cmul_acc(d(co.f3), d(nc), d(a), n);
    u.swap(a);
    u[0] = Complex{};
  }

  void lawson_step(Vec& u, const Vec& f, const Vec& e, const Vec& e2,
                   double h) {
    const std::size_t n = u.size();
    Vec& k1 = s1_;
    Vec& k2 = s2_;
    Vec& k3 = s3_;
    Vec& k4 = s4_;
    Vec& a = t1_;
    Vec& b = t2_;
    for (auto* v : {&k1, &k2, &k3, &k4, &a, &b}) v->resize(n);

    nonlinear(u, f, k1);
    kernels_.axpby(d(u), h / 2.0, d(k1), d(b), n);
    kernels_.cmul(d(e2), d(b), d(a), n);
    nonlinear(a, f, k2);
    kernels_.cmul(d(e2), d(u), d(b), n);
    kernels_.axpby(d(b), h / 2.0, d(k2), d(b), n);
    nonlinear(b, f, k3);
    kernels_.cmul(d(e), d(u), d(a), n);
    kernels_.cmul(d(e2), d(k3), d(b), n);
    kernels_.axpby(d(a), h, d(b), d(a), n);
    nonlinear(a, f, k4);
    // u' = e u + h/6 (e k1 + 2 e2 (k2 + k3) + k4)
    kernels_.axpby(d(k2), 1.0, d(k3), d(k2), n);
    kernels_.cmul(d(e2), d(k2), d(b), n);
    kernels_.axpby(d(k4), 2.0, d(b), d(k4), n);
    kernels_.cmul_acc(d(e), d(k1), d(k4), n);
    kernels_.cmul(d(e), d(u), d(a), n);
    kernels_.axpby(d(a), h / 6.0, d(k4), d(u), n);
    u[0] = Complex{};
  }

  const SolverConfig& cfg_;
  int K_;
  LinearSymbol sym_;
  spectral::RealFft& fft_;
  const simd::KernelTable& kernels_;
  std::vector<double> grid_;
  Vec spec_;
  std::vector<double> minus_k_;
  Vec s1_, s2_, s3_, s4_, t1_, t2_, t3_;
};

Vec padded(const SpectralField& f, int K, const char* what) {
  if (f.max_mode() > K) {
    throw ResolutionError(std::string(what) + " has mode " +
                          std::to_string(f.max_mode()) +
                          " beyond the retained band " + std::to_string(K));
  }
  Vec v(K + 1);
  const auto c = f.coefficients();
  std::copy_n(c.begin(), std::min<std::size_t>(c.size(), K + 1), v.begin());
  return v;
}

void check_resolution(const Vec& w, const SolverConfig& cfg) {
  const int K = cfg.n_modes;
  const int band_start = K - K / 10;
  double total = 0.0, top = 0.0;
  for (int k = 1; k <= K; ++k) {
    const double e = std::norm(w[k]);
    if (!std::isfinite(e)) throw ResolutionError("state is no longer finite");
    total += e;
    if (k > band_start) top += e;
  }
  if (total > 0.0 && top > cfg.resolution_tol * total) {
    throw ResolutionError("relative energy " + std::to_string(top / total) +
                          " in the top band exceeds resolution_tol");
  }
}

SpectralField to_field(const Vec& w, double mean) {
  Vec c = w;
  c[0] = Complex(mean, 0.0);
  return SpectralField(std::move(c));
}

// Runs u0 under the forcing clipped or zero-extended to [0, T].
Trajectory integrate(const SpectralField& u0, const ControlSchedule& forcing,
                     double T, const SolverConfig& cfg, RecordOptions rec) {
  cfg.validate();
  if (!(T >= 0.0) || !std::isfinite(T)) {
    throw InvalidInput("final time must be finite and nonnegative");
  }
  if (rec.stride < 1) throw InvalidInput("record stride must be >= 1");
  const int K = cfg.n_modes;
  const double mean = u0.mean();
  Vec w = padded(u0, K, "initial state");
  w[0] = Complex{};
  check_resolution(w, cfg);

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(to_field(w, mean));
  if (T == 0.0) {
    traj.states.back() = u0;
    return traj;
  }

  struct Piece {
    double duration;
    Vec forcing;
  };
  std::vector<Piece> pieces;
  double t = 0.0;
  for (const auto& seg : forcing.segments()) {
    if (!(t < T)) break;
    const double d = (t + seg.duration <= T) ? seg.duration : exact_remainder(t, T);
    pieces.push_back({d, padded(seg.value, K, "forcing")});
    t += d;
  }
  if (t < T) pieces.push_back({exact_remainder(t, T), Vec(K + 1)});

  Integrator integ(cfg, mean);
  double t0 = 0.0;
  for (const auto& p : pieces) {
    const double bound = std::abs(mean) + integ.sup_of(w);
    const double start = t0;
    const double end = t0 + p.duration;
    integ.advance(w, p.duration, p.forcing, bound,
                  [&](long j, long n, const Vec& state) {
                    if (!rec.record) return;
                    if (j == n) return;
                    if (j % rec.stride != 0) return;
                    traj.times.push_back(start + p.duration * (double(j) / n));
                    traj.states.push_back(to_field(state, mean));
                  });
    check_resolution(w, cfg);
    t0 = end;
    traj.times.push_back(end);
    traj.states.push_back(to_field(w, mean));
  }
  if (!rec.record) {
    traj.times = {traj.times.front(), traj.times.back()};
    traj.states = {traj.states.front(), traj.states.back()};
  }
  return traj;
}

void check_zeta(const SpectralField& zeta) {
  if (zeta.mean() != 0.0) throw InvalidInput("zeta must have zero mean");
}

}  // namespace

Trajectory flow(const SpectralField& u0, const SpectralField& zeta,
                const ControlSchedule& forcing, double T,
                const SolverConfig& cfg, RecordOptions rec) {
  check_zeta(zeta);
  Trajectory traj = integrate(u0 + zeta, forcing, T, cfg, rec);
  for (auto& s : traj.states) s -= zeta;
  traj.states.front() = u0;
  return traj;
}

SpectralField flow_endpoint(const SpectralField& u0, const SpectralField& zeta,
                            const ControlSchedule& forcing, double T,
                            const SolverConfig& cfg) {
  check_zeta(zeta);
  return integrate(u0 + zeta, forcing, T, cfg, {.record = false}).final_state() -
         zeta;
}

Trajectory run_schedule(const SpectralField& u0, const ControlSchedule& schedule,
                        const SolverConfig& cfg, RecordOptions rec) {
  return flow(u0, {}, schedule, schedule.total_time(), cfg, rec);
}

SpectralField run_schedule_endpoint(const SpectralField& u0,
                                    const ControlSchedule& schedule,
                                    const SolverConfig& cfg) {
  return flow_endpoint(u0, {}, schedule, schedule.total_time(), cfg);
}

SpectralField coast(const SpectralField& u0, double duration,
                    const SolverConfig& cfg) {
  return flow_endpoint(u0, {}, {}, duration, cfg);
}

SpectralField asymptotic_probe(const SpectralField& u0,
                               const SpectralField& zeta,
                               const SpectralField& eta, double delta,
                               const SolverConfig& cfg) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw InvalidInput("delta must lie in (0, 1)");
  }
  if (eta.mean() != 0.0) throw InvalidInput("eta must have zero mean");
  SolverConfig scaled = cfg;
  scaled.dt_max = cfg.dt_max * delta;
  ControlSchedule forcing;
  forcing.append({delta, eta * (1.0 / delta)});
  return flow_endpoint(u0, zeta * (1.0 / std::sqrt(delta)), forcing, delta,
                       scaled);
}

}  // namespace kawactrl::solver
