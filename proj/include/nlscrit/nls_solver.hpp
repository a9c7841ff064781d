#pragma once

// Split-step Fourier evolution of i eps Psi_t + (eps^2/2) Psi_xx + |Psi|^2 Psi = 0
// on the periodic interval [-L, L).

#include <complex>
#include <span>
#include <vector>

#include "nlscrit/hodograph.hpp"

namespace nlscrit::nls {

using cplx = std::complex<double>;

inline constexpr double kDefaultHalfPeriod = 10.0 * 3.14159265358979323846;
inline constexpr double kEpsilonFloor = 0.025;

struct WaveField {
  double epsilon = 0.1;
  double L = kDefaultHalfPeriod;
  std::vector<cplx> psi;
  double t = 0.0;

  int N() const { return static_cast<int>(psi.size()); }
  double dx() const { return 2.0 * L / N(); }
  double x(int j) const { return -L + dx() * j; }
};

std::vector<double> uniform_grid(double L, int N);
/// 2^13 for eps >= 0.06, 2^14 for eps >= 0.04, 2^15 below.
int default_grid_size(double epsilon);
/// 2e-4 * eps / 0.1
double default_time_step(double epsilon);

/// Normalized Fourier coefficients c_k = (1/N) sum_j Psi_j e^{-i k x_j}, in FFT order.
std::vector<cplx> fourier_coefficients(const WaveField& field);
/// max |c_k| over the outer eighth of the spectrum on each side.
double fourier_tail(const WaveField& field);
/// Zeroes every Fourier coefficient with |c_k| < threshold.
WaveField krasny_filter(const WaveField& field, double threshold);
/// Trigonometric interpolant of the field at an arbitrary x.
cplx interpolate(const WaveField& field, double x);
/// Spectral derivative of periodic samples on [-L, L).
std::vector<cplx> spectral_derivative(std::span<const cplx> f, double L);

/// Psi = sqrt(u) exp(i S / eps) sampled from a curve given on uniform_grid(L, N).
/// Throws ResolutionError if the Fourier tail exceeds 10 * filter_threshold.
WaveField from_madelung(const hodograph::InitialDataCurve& curve, double epsilon, double L,
                        double filter_threshold = 1e-13);

struct Madelung {
  std::vector<double> u;
  std::vector<double> v;
  std::vector<bool> valid;  ///< u >= floor
};

/// u = |Psi|^2, v = eps Im(Psi_x / Psi); v is set to 0 where u < floor.
Madelung to_madelung(const WaveField& field, double floor = 1e-8);

enum class Scheme { strang, yoshida4 };

struct EvolutionConfig {
  double t_end = 0.0;
  double dt = 0.0;  ///< 0 selects default_time_step
  double filter_threshold = 1e-13;
  Scheme scheme = Scheme::yoshida4;
  std::vector<double> snap_times;
  int diagnostics_every = 50;  ///< steps between (t, mass, H) rows
  double mass_drift_limit = 1e-6;
  bool allow_small_epsilon = false;
};

struct DiagnosticRow {
  double t;
  double mass;
  double hamiltonian;
};

struct EvolutionResult {
  WaveField field;
  std::vector<DiagnosticRow> trace;
  std::vector<WaveField> snapshots;  ///< one per requested snap time
};

/// Throws InstabilityError on non-finite values or a mass drift above the limit.
EvolutionResult evolve(const WaveField& initial, const EvolutionConfig& config);

}  // namespace nlscrit::nls
