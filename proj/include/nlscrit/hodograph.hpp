#pragma once

// Dispersionless focusing NLS (and the Toda flow s) via the hodograph
// transform x = v t + f_u, s = u t + f_v, with f_vv + u f_uu = 0.

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nlscrit/chebyshev.hpp"
#include "nlscrit/jet.hpp"

namespace nlscrit::hodograph {

/// Side of the square-root cut used by potentials whose initial data lie on a
/// branch cut (Satsuma-Yajima, mu < 2 A0). Upper/lower continue sqrt from
/// above/below the negative real axis.
enum class Sheet { principal, upper, lower };

Sheet opposite(Sheet s);
std::complex<double> sheet_sqrt(std::complex<double> w, Sheet s);

/// d^{i+j} f / du^i dv^j for i + j <= 6.
class Partials {
 public:
  explicit Partials(const Jet& jet);
  double operator()(int i, int j) const { return d_[Jet::index(i, j)]; }

 private:
  std::array<double, Jet::kSize> d_{};
};

struct Domain {
  double u_min = 0.0;
  double u_max = 1e300;
  double v_min = -1e300;
  double v_max = 1e300;
  bool contains(double u, double v) const {
    return u > u_min && u < u_max && v >= v_min && v <= v_max;
  }
};

/// A hodograph potential: a closed-form complex expression whose real part
/// is f, evaluated on jets.
class FOracle {
 public:
  using Expression = std::function<Jet(const Jet& u, const Jet& v, Sheet)>;

  FOracle(std::string name, Domain domain, Expression expr);

  Partials partials(double u, double v, Sheet sheet = Sheet::principal) const;
  double value(double u, double v, Sheet sheet = Sheet::principal) const;
  /// f_vv + u f_uu
  double pde_residual(double u, double v, Sheet sheet = Sheet::principal) const;

  const std::string& name() const { return name_; }
  const Domain& domain() const { return domain_; }

 private:
  std::string name_;
  Domain domain_;
  Expression expr_;
};

FOracle satsuma_yajima(double A0 = 1.0);
FOracle symmetric_mu(double A0, double mu);
FOracle tvz_mu2();
FOracle nonsymmetric(double alpha);
/// 1/2 (u v^2 - u^2), the dispersionless NLS Hamiltonian density.
FOracle nls_hamiltonian();
/// -1/2 v^2 + u (ln u - 1), the dispersionless Toda Hamiltonian density.
FOracle toda_hamiltonian();

struct HodographOptions {
  Sheet sheet = Sheet::principal;
  double tol = 1e-12;
  int max_iter = 60;
  double singular_tol = 1e-5;  ///< max-norm of the Jacobian declared singular
};

struct HodographPoint {
  double u;
  double v;
  int iterations;
  double residual;
};

/// Newton solve of x = v t + f_u, s = u t + f_v for (u, v), in (ln u, v).
/// Throws SingularError when the Jacobian degenerates (at the catastrophe)
/// and ConvergenceError when Newton stalls.
HodographPoint solve_hodograph(const FOracle& f, double x, double t, double s,
                               std::pair<double, double> guess,
                               const HodographOptions& opts = {});

struct CriticalPoint {
  double x0, s0, t0, u0, v0;
  double r;
  double psi;
  double f_uuu, f_uuv;
};

struct CriticalOptions {
  Sheet sheet = Sheet::principal;
  double tol = 1e-13;
  int max_iter = 60;
  double genericity_margin = 1e-6;  ///< minimum |cos psi|
};

/// Solves f_uu = 0 together with s0 = u t0 + f_v = 0, t0 = -f_uv.
CriticalPoint find_critical_point(const FOracle& f, std::pair<double, double> guess,
                                  const CriticalOptions& opts = {});

// Local structure near the critical point.

struct LocalCoords {
  double X, S, T;
};

LocalCoords local_coords(const CriticalPoint& cp, double x, double s, double t);

struct LocalRPQ {
  double R, P0, Q0;
};

LocalRPQ local_R_P0_Q0(double X, double S, double psi);

struct UV {
  double u, v;
};

/// u0 + r T P0, v0 + r T Q0 / sqrt(u0); requires t < t0.
UV local_solution(const CriticalPoint& cp, double x, double s, double t);

/// Root of z = tbar w + a w^2 / 2 with z = r tbar^2 (S + iX) / 2, a = e^{-i psi} / r,
/// on the principal branch (w = 0 at X = S = 0). Requires tbar < 0.
std::complex<double> quadratic_root_w(double X, double S, double psi, double tbar, double r);

/// Leading far-field behaviour in the local chart variable x = xbar - v0 tbar,
/// side = +1 for x -> +inf and -1 for x -> -inf.
UV far_field(const CriticalPoint& cp, double x, double tbar, int side);

/// Limiting profile at t -> t0 (S = 0): u0 - sqrt(r |xhat|) sqrt(1 -+ sin psi).
double cusp_profile(const CriticalPoint& cp, double xhat);

/// Stationary points of (U^3 - 3 U V^2)/6 + a_+ U + a_- V.
std::array<std::pair<double, double>, 2> umbilic_stationary_points(double a_plus,
                                                                   double a_minus);

// Initial data: x = f_u, 0 = f_v at t = 0.

struct InitialDataCurve {
  std::vector<double> x, u, v, S;
};

/// Analytic continuation of the data beyond the solved core interval.
struct Tail {
  std::function<UV(double)> uv;
  /// S(x) - S(edge), the integral of v from the core edge.
  std::function<double(double)> phase;
};

struct InitialDataOptions {
  double core_lo = -10.0;
  double core_hi = 10.0;
  int n_core = 1023;                       ///< Chebyshev degree; odd avoids x = 0
  double x_start = 0.0;                    ///< continuation origin, also S(x_start) = 0
  std::pair<double, double> guess{1.0, 0.0};
  Sheet right_sheet = Sheet::upper;        ///< used for x > x_start
  Sheet left_sheet = Sheet::lower;
  std::optional<Tail> left_tail;
  std::optional<Tail> right_tail;
  double tol = 1e-13;
};

/// Initial data recovered by Newton continuation on Chebyshev nodes, with a
/// Nelder-Mead fallback; ln u, v and S are interpolated spectrally.
class InitialData {
 public:
  InitialData(const FOracle& f, const InitialDataOptions& opts);

  UV uv(double x) const;
  double phase(double x) const;
  InitialDataCurve sample(std::span<const double> x) const;

  double lower() const { return nodes_.back(); }
  double upper() const { return nodes_.front(); }
  /// Mismatch between the tails and the core at the splice points: max of
  /// |du|/u and |dv| over both ends (0 without tails).
  double splice_mismatch() const { return splice_mismatch_; }
  const std::vector<double>& nodes() const { return nodes_; }

 private:
  std::vector<double> nodes_;
  std::optional<cheb::Interpolant> lu_interp_, v_interp_, S_interp_;
  double S_lo_ = 0.0, S_hi_ = 0.0;
  std::optional<Tail> left_, right_;
  double splice_mismatch_ = 0.0;
};

/// Catalog-specific options: symmetric families on [-L, L], the
/// nonsymmetric family on [-15, 11] with exponential tails.
InitialDataOptions initial_data_options(const std::string& family, double A0, double mu,
                                        double alpha, double L);

InitialDataCurve reconstruct_initial_data(const FOracle& f, std::span<const double> x_grid,
                                          const InitialDataOptions& opts);

/// Far-field limits of v for the nonsymmetric family: (sqrt(1 +- 4 alpha) - 1)/alpha.
std::pair<double, double> nonsymmetric_tail_velocities(double alpha);

}  // namespace nlscrit::hodograph
