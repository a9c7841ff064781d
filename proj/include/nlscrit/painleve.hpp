#pragma once

// Tritronquee solution of Painleve-I, Omega'' = 6 Omega^2 - zeta, pole-free in
// |arg zeta| < 4 pi / 5 and asymptotic to -sqrt(zeta / 6) there.

#include <complex>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

namespace nlscrit::painleve {

using cplx = std::complex<double>;

/// Opening half-angle of the pole-free sector.
inline constexpr double kSectorAngle = 4.0 * std::numbers::pi / 5.0;

/// Coefficients a_0..a_K of the formal expansion
/// Omega ~ -sqrt(zeta/6) * sum_k a_k zeta^(-5k/2).
struct AsymptoticSeries {
  std::vector<double> coefficients;

  int capacity() const { return static_cast<int>(coefficients.size()) - 1; }
};

AsymptoticSeries series_coefficients(int K);

struct SeriesOptions {
  double min_radius = 10.0;
};

/// Optimally truncated series value with its truncation data.
struct SeriesValue {
  cplx value;
  cplx derivative;      ///< d Omega / d zeta of the same truncated sum
  int truncation = 0;   ///< index of the last term kept
  double omitted = 0.0; ///< |first omitted term of Omega|, the error estimate
};

/// Evaluates the truncated series. Stops at the smallest term, or as soon as
/// further terms fall below double precision relative to the partial sum.
/// Throws DomainError for |zeta| < min_radius or |arg zeta| >= 4 pi / 5.
SeriesValue evaluate_series(const AsymptoticSeries& series, cplx zeta,
                            const SeriesOptions& opts = {});

/// Principal sqrt(zeta / 6) with the cut along the negative real axis.
cplx leading_sqrt(cplx zeta);

/// zeta = a y + b with |a| = 1, Im a >= 0, y in [-half_length, half_length].
struct ComplexLine {
  cplx direction{0.0, 1.0};
  cplx offset{0.0, 0.0};
  double half_length = 10.0;
  int n_points = 4001;

  /// Normalizes `direction` (|a| = 1, Im a >= 0); rescales half_length so the
  /// segment is unchanged. Throws DomainError on a = 0 or n_points < 16.
  static ComplexLine make(cplx a, cplx b, double y0, int n_points = 4001);

  cplx zeta(double y) const { return direction * y + offset; }
  /// Both endpoints inside |arg zeta| < 4 pi / 5 and outside the series radius.
  bool endpoints_valid(double min_radius) const;
};

struct LineSolveOptions {
  double tol = 1e-10;        ///< target interior P-I residual
  int max_newton = 40;
  int max_points = 128001;   ///< refinement stops here
  bool refine = true;        ///< double the mesh until the residual meets tol
  SeriesOptions series{};
  int series_terms = 30;
};

/// Omega sampled on a line, with dOmega/dy, from the collocation solve.
class TritronqueeLine {
 public:
  TritronqueeLine(ComplexLine line, std::vector<double> y, std::vector<cplx> omega,
                  std::vector<cplx> omega_y);

  const ComplexLine& line() const { return line_; }
  const std::vector<double>& y_grid() const { return y_; }
  const std::vector<cplx>& omega() const { return omega_; }
  const std::vector<cplx>& omega_prime() const { return omega_y_; }

  /// |Omega_zeta zeta - 6 Omega^2 + zeta| at each node, with Omega'' from a
  /// fourth-order difference of the stored derivative (one-sided at the ends).
  const std::vector<double>& residual() const { return residual_; }
  double residual_norm() const;
  /// Max residual excluding `skip` nodes at each end.
  double interior_residual(int skip = 2) const;

  /// Cubic Hermite interpolation of Omega at y. DomainError outside [-y0, y0].
  cplx evaluate(double y) const;
  cplx evaluate_zeta(cplx zeta) const;  ///< zeta must lie on the line

  /// CSV: y,re_zeta,im_zeta,re_omega,im_omega,residual
  void write_csv(std::ostream& os) const;

 private:
  ComplexLine line_;
  std::vector<double> y_;
  std::vector<cplx> omega_;
  std::vector<cplx> omega_y_;
  std::vector<double> residual_;
};

/// Boundary value solve of Omega_yy = a^2 (6 Omega^2 - zeta(y)) with the
/// series values at y = +-y0 (three-stage Lobatto collocation, cubic
/// interpolants, damped Newton). Falls back to continuation in y0 starting
/// from y0 = 3 when Newton from -sqrt(zeta/6) fails.
TritronqueeLine solve_line(const ComplexLine& line, const LineSolveOptions& opts = {});

struct PoleReport {
  double pole_location;
  double bracket_lo;
  double bracket_hi;
  double blowup_threshold;
  double laurent_check;  ///< |estimate from 1/sqrt(Omega) - estimate from -2 Omega/Omega'|
};

struct PoleSearchOptions {
  double left_bound = -10.0;
  double rel_tol = 1e-13;
  double abs_tol = 1e-13;
};

/// Shoots leftward along the real axis from series data at `start` and reports
/// the first double pole. Throws ConvergenceError("no pole found") if none
/// appears before left_bound.
PoleReport locate_first_real_pole(double start, double threshold = 1e6,
                                  const PoleSearchOptions& opts = {});

/// Max |Omega| met while shooting rightward from `start` to `stop`.
double max_abs_rightward(double start, double stop, const PoleSearchOptions& opts = {});

/// Omega_n(zeta) = e^{4 pi i n / 5} Omega_0(e^{2 pi i n / 5} zeta), n in {-2..2}.
cplx rotate_tritronquee(int n, cplx zeta, const std::function<cplx(cplx)>& omega0);

struct SectorOptions {
  double radius = 20.0;
  double phi_max = kSectorAngle - 0.05;
  int n_radial = 40;
  int n_angular = 56;
  double corner_tol = 5e-3;  /// series vs line at (R, +-phi_max); the series misses the edge oscillation
  LineSolveOptions line{};
};

struct SectorSolution {
  std::vector<double> r;    ///< radial Chebyshev nodes, descending, r[last] = 0
  std::vector<double> phi;  ///< angular Chebyshev nodes, descending
  std::vector<cplx> omega;  ///< row-major (i_r, j_phi)
  std::vector<std::string> boundary_provenance;
  double max_abs = 0.0;
  double pi_residual = 0.0;  ///< max P-I residual on interior nodes (diagnostic)
  double corner_mismatch = 0.0;

  cplx at(int i, int j) const { return omega[static_cast<std::size_t>(i) * phi.size() + j]; }
  /// Spectral interpolation of the field at (rho, phi).
  cplx evaluate(double rho, double ph) const;
};

/// Harmonic (Laplace) solve for Re/Im Omega in the sector r <= R, |phi| <= phi_max,
/// with series data on |zeta| = R and line-solve data on arg zeta = +-phi_max.
SectorSolution solve_sector(const SectorOptions& opts = {});

}  // namespace nlscrit::painleve
