#include "nlscrit/nls_solver.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "nlscrit/deformed_integrals.hpp"
#include "nlscrit/errors.hpp"

namespace nlscrit::nls {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place unnormalized transforms of a fixed size. The FFTW planner is not
// thread-safe, execution with fftw_execute_dft is.
class Fft {
 public:
  explicit Fft(int n) : n_(n) {
    std::lock_guard lock(planner_mutex());
    auto* buf = fftw_alloc_complex(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fwd_ = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, flags);
    bwd_ = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, flags);
    fftw_free(buf);
    if (!fwd_ || !bwd_) throw Error("fftw: plan creation failed");
  }
  ~Fft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  void forward(std::span<cplx> a) const { run(fwd_, a); }
  void backward(std::span<cplx> a) const { run(bwd_, a); }

 private:
  void run(fftw_plan p, std::span<cplx> a) const {
    if (static_cast<int>(a.size()) != n_) throw DomainError("fft: size mismatch");
    auto* d = reinterpret_cast<fftw_complex*>(a.data());
    fftw_execute_dft(p, d, d);
  }

  int n_;
  fftw_plan fwd_ = nullptr;
  fftw_plan bwd_ = nullptr;
};

bool is_power_of_two(int n) { return n > 1 && (n & (n - 1)) == 0; }

void check_field(const WaveField& f) {
  if (!is_power_of_two(f.N())) throw DomainError("WaveField: N must be a power of two");
  if (!(f.L > 0.0)) throw DomainError("WaveField: L must be positive");
  if (!(f.epsilon > 0.0)) throw DomainError("WaveField: epsilon must be positive");
}

std::vector<double> wavenumbers(int n, double L) {
  std::vector<double> k(n);
  const double dk = std::numbers::pi / L;
  for (int j = 0; j < n; ++j) k[j] = dk * (j < n / 2 ? j : j - n);
  return k;
}

void zero_small(std::span<cplx> spec, double threshold) {
  const double cut = threshold * static_cast<double>(spec.size());
  for (auto& c : spec)
    if (std::abs(c) < cut) c = 0.0;
}

}  // namespace

std::vector<double> uniform_grid(double L, int N) {
  std::vector<double> x(N);
  for (int j = 0; j < N; ++j) x[j] = -L + 2.0 * L * j / N;
  return x;
}

int default_grid_size(double epsilon) {
  if (epsilon >= 0.06) return 1 << 13;
  if (epsilon >= 0.04) return 1 << 14;
  return 1 << 15;
}

double default_time_step(double epsilon) { return 2e-4 * epsilon / 0.1; }

std::vector<cplx> fourier_coefficients(const WaveField& field) {
  check_field(field);
  std::vector<cplx> c = field.psi;
  Fft(field.N()).forward(c);
  for (auto& z : c) z /= static_cast<double>(field.N());
  return c;
}

double fourier_tail(const WaveField& field) {
  const std::vector<cplx> c = fourier_coefficients(field);
  const int n = field.N(), band = n / 8;
  double tail = 0.0;
  for (int j = n / 2 - band; j < n / 2 + band; ++j) tail = std::max(tail, std::abs(c[j]));
  return tail;
}

WaveField krasny_filter(const WaveField& field, double threshold) {
  check_field(field);
  WaveField out = field;
  const Fft fft(field.N());
  fft.forward(out.psi);
  zero_small(out.psi, threshold);
  fft.backward(out.psi);
  for (auto& z : out.psi) z /= static_cast<double>(field.N());
  return out;
}

cplx interpolate(const WaveField& field, double x) {
  const std::vector<cplx> c = fourier_coefficients(field);
  const int n = field.N();
  const std::vector<double> k = wavenumbers(n, field.L);
  cplx sum = 0.0;
  for (int j = 0; j < n; ++j) {
    // the Nyquist mode is split evenly between +-k
    const double w = j == n / 2 ? 0.5 : 1.0;
    sum += w * c[j] * std::polar(1.0, k[j] * (x + field.L));
    if (j == n / 2) sum += w * c[j] * std::polar(1.0, -k[j] * (x + field.L));
  }
  return sum;
}

std::vector<cplx> spectral_derivative(std::span<const cplx> f, double L) {
  const int n = static_cast<int>(f.size());
  if (!is_power_of_two(n)) throw DomainError("spectral_derivative: size must be a power of two");
  std::vector<cplx> d(f.begin(), f.end());
  const Fft fft(n);
  fft.forward(d);
  const std::vector<double> k = wavenumbers(n, L);
  for (int j = 0; j < n; ++j) d[j] *= cplx(0.0, j == n / 2 ? 0.0 : k[j]) / static_cast<double>(n);
  fft.backward(d);
  return d;
}

WaveField from_madelung(const hodograph::InitialDataCurve& curve, double epsilon, double L,
                        double filter_threshold) {
  const int n = static_cast<int>(curve.x.size());
  if (curve.u.size() != curve.x.size() || curve.S.size() != curve.x.size())
    throw DomainError("from_madelung: inconsistent curve lengths");
  WaveField f;
  f.epsilon = epsilon;
  f.L = L;
  f.psi.resize(n);
  check_field(f);
  const std::vector<double> grid = uniform_grid(L, n);
  for (int j = 0; j < n; ++j) {
    if (std::abs(curve.x[j] - grid[j]) > 1e-12 * L)
      throw DomainError("from_madelung: curve is not sampled on the uniform grid");
    if (curve.u[j] < 0.0) throw DomainError("from_madelung: negative u");
    f.psi[j] = std::sqrt(curve.u[j]) * std::polar(1.0, curve.S[j] / epsilon);
  }
  const double tail = fourier_tail(f);
  if (tail > 10.0 * filter_threshold)
    throw ResolutionError("from_madelung: Fourier tail " + std::to_string(tail) +
                          " above 10x filter threshold; increase N");
  return f;
}

Madelung to_madelung(const WaveField& field, double floor) {
  check_field(field);
  const std::vector<cplx> dpsi = spectral_derivative(field.psi, field.L);
  Madelung m;
  const int n = field.N();
  m.u.resize(n);
  m.v.assign(n, 0.0);
  m.valid.assign(n, false);
  bool any = false;
  for (int j = 0; j < n; ++j) {
    const double u = std::norm(field.psi[j]);
    m.u[j] = u;
    if (u >= floor) {
      m.v[j] = field.epsilon * (std::conj(field.psi[j]) * dpsi[j]).imag() / u;
      m.valid[j] = true;
      any = true;
    }
  }
  if (!any) throw DomainError("to_madelung: |Psi|^2 below the floor everywhere");
  return m;
}

namespace {

class Stepper {
 public:
  Stepper(const WaveField& f, double filter)
      : fft_(f.N()), k_(wavenumbers(f.N(), f.L)), eps_(f.epsilon), filter_(filter) {}

  // exp(i tau |Psi|^2 / eps): |Psi| is invariant, so the flow is exact.
  void nonlinear(std::span<cplx> psi, double tau) const {
    const double c = tau / eps_;
    for (auto& z : psi) z *= std::polar(1.0, c * std::norm(z));
  }

  // Exact linear flow, followed by the filter on the spectrum.
  void linear(std::span<cplx> psi, double tau) const {
    fft_.forward(psi);
    const int n = static_cast<int>(psi.size());
    const double c = -0.5 * eps_ * tau;
    for (int j = 0; j < n; ++j) psi[j] *= std::polar(1.0 / n, c * k_[j] * k_[j]);
    for (auto& z : psi)
      if (std::abs(z) < filter_) z = 0.0;
    fft_.backward(psi);
  }

  // Composition of Strang steps N(w/2) L(w) N(w/2); adjacent nonlinear
  // half-steps are merged.
  void step(std::span<cplx> psi, double dt, std::span<const double> weights) const {
    double pending = 0.0;
    for (double w : weights) {
      nonlinear(psi, pending + 0.5 * w * dt);
      linear(psi, w * dt);
      pending = 0.5 * w * dt;
    }
    nonlinear(psi, pending);
  }

 private:
  Fft fft_;
  std::vector<double> k_;
  double eps_;
  double filter_;
};

std::vector<double> composition_weights(Scheme s) {
  if (s == Scheme::strang) return {1.0};
  const double c = std::cbrt(2.0);
  const double w1 = 1.0 / (2.0 - c);
  return {w1, -c * w1, w1};
}

}  // namespace

EvolutionResult evolve(const WaveField& initial, const EvolutionConfig& config) {
  check_field(initial);
  if (initial.epsilon < kEpsilonFloor && !config.allow_small_epsilon)
    throw DomainError("evolve: epsilon below 0.025 is rejected without allow_small_epsilon");
  const double dt_nominal = config.dt > 0.0 ? config.dt : default_time_step(initial.epsilon);
  if (!(config.t_end >= initial.t)) throw DomainError("evolve: t_end before the initial time");
  if (!(config.filter_threshold >= 0.0)) throw DomainError("evolve: negative filter threshold");
  if (config.diagnostics_every < 1) throw DomainError("evolve: diagnostics_every must be >= 1");

  std::vector<double> stops;
  for (double ts : config.snap_times) {
    if (ts < initial.t || ts > config.t_end)
      throw DomainError("evolve: snap time outside [t, t_end]");
    stops.push_back(ts);
  }
  std::sort(stops.begin(), stops.end());
  stops.push_back(config.t_end);

  const std::vector<double> weights = composition_weights(config.scheme);
  const Stepper stepper(initial, config.filter_threshold);

  EvolutionResult res;
  res.field = initial;
  WaveField& f = res.field;
  const Functionals f0 = nls_functionals(f);
  res.trace.push_back({f.t, f0.mass, f0.hamiltonian_wave});
  const double mass0 = f0.mass;

  long counter = 0;
  double last_ok = f.t;
  for (const double& stop : stops) {
    const double span = stop - f.t;
    const long steps = span > 0.0 ? static_cast<long>(std::ceil(span / dt_nominal - 1e-9)) : 0;
    const double t_begin = f.t;
    const double dt = steps > 0 ? span / steps : 0.0;
    for (long s = 1; s <= steps; ++s) {
      stepper.step(f.psi, dt, weights);
      f.t = s == steps ? stop : t_begin + s * dt;
      if (++counter % config.diagnostics_every == 0 || s == steps) {
        const Functionals fs = nls_functionals(f);
        if (!std::isfinite(fs.mass) || !std::isfinite(fs.hamiltonian_wave))
          throw InstabilityError("evolve: non-finite field", last_ok);
        if (std::abs(fs.mass - mass0) > config.mass_drift_limit * mass0)
          throw InstabilityError("evolve: mass drift above the limit", last_ok);
        last_ok = f.t;
        res.trace.push_back({f.t, fs.mass, fs.hamiltonian_wave});
      }
    }
    if (&stop != &stops.back()) res.snapshots.push_back(f);
  }
  return res;
}

}  // namespace nlscrit::nls
