#pragma once

// Tritronquee description of the NLS solution near the gradient catastrophe:
//   u + i sqrt(u0) v ~ u0 + i sqrt(u0) v0 - tbar r e^{i psi}
//                     + 2 eps^{2/5} (3 r sqrt(u0))^{2/5} e^{2 i psi / 5} Omega_0(zeta).

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "nlscrit/hodograph.hpp"
#include "nlscrit/nls_solver.hpp"
#include "nlscrit/painleve.hpp"

namespace nlscrit::multiscale {

using cplx = std::complex<double>;
using OmegaEvaluator = std::function<cplx(cplx)>;

class ConjectureChart {
 public:
  /// Throws DomainError for cos psi <= 0 or eps <= 0.
  ConjectureChart(const hodograph::CriticalPoint& cp, double epsilon);

  const hodograph::CriticalPoint& cp() const { return cp_; }
  double epsilon() const { return eps_; }

  cplx zeta(double x, double t) const;
  /// 2 eps^{2/5} (3 r sqrt(u0))^{2/5} e^{2 i psi / 5}
  cplx prefactor() const;
  /// e^{i (psi/5 + pi/2)}, the direction of zeta(., t) as x increases.
  cplx line_direction() const;
  /// d|zeta| / dx along a fixed-t line.
  double zeta_per_x() const;
  /// x minimising |zeta(x, t)|, the window center.
  double center(double t) const;

 private:
  hodograph::CriticalPoint cp_;
  double eps_;
  cplx scale_;  // (3 r / u0^2)^{1/5} e^{i psi / 5} / eps^{4/5}
};

/// (u, v) from the conjecture with the supplied Omega_0 evaluator.
hodograph::UV conjecture_field(const ConjectureChart& chart, double x, double t,
                               const OmegaEvaluator& omega);

struct TSchedule {
  double t_plus;
  double t_minus;
};

/// t_pm = t0 + u0/r - sqrt((u0/r)^2 +- eps^{4/5} beta). t_plus < t0 < t_minus.
TSchedule t_schedule(const hodograph::CriticalPoint& cp, double epsilon, double beta);

/// Omega_0 from line solves through a given zeta, with the series beyond the
/// lines. Solves are cached by line parameters; thread-safe.
class OmegaCache {
 public:
  explicit OmegaCache(double half_length = 12.0, int n_points = 4001);

  /// Line through `center` along `direction`.
  std::shared_ptr<const painleve::TritronqueeLine> line(cplx center, cplx direction);
  /// Evaluator valid on that line, and on |zeta| >= series radius elsewhere.
  OmegaEvaluator evaluator(cplx center, cplx direction);
  std::size_t size() const;

 private:
  double half_length_;
  int n_points_;
  painleve::AsymptoticSeries series_;
  mutable std::mutex mutex_;
  std::map<std::tuple<double, double, double, double>,
           std::shared_ptr<const painleve::TritronqueeLine>>
      lines_;
};

/// Dispersionless solution at time t obtained by continuation in time from the
/// initial data. Sheets follow the initial-data options. Times past t0 are
/// clamped just below t0.
std::vector<hodograph::UV> semiclassical_solution(const hodograph::FOracle& f,
                                                  const hodograph::InitialData& data,
                                                  const hodograph::InitialDataOptions& opts,
                                                  const hodograph::CriticalPoint& cp,
                                                  std::span<const double> x, double t,
                                                  int time_steps = 40);

struct WindowRow {
  double x;
  double u_nls, v_nls;
  double u_conj, v_conj;
  double u_semicl, v_semicl;  ///< NaN when unavailable
};

struct ComparisonReport {
  double t;
  double center;
  double half_width;
  double linf_u;
  double linf_v;
  std::optional<double> linf_u_semicl;
  std::optional<double> linf_v_semicl;
  double max_abs_arg_zeta;
  bool conj_u_below_nls;  ///< u_conj <= u_nls at every window point
  std::vector<WindowRow> rows;
};

struct SemiclassicalInput {
  const hodograph::FOracle* f;
  const hodograph::InitialData* data;
  const hodograph::InitialDataOptions* opts;
};

/// Compares the NLS field with the conjecture on |x - center| <= gamma eps^{4/5}.
/// Throws DomainError when the window leaves the grid or meets the Madelung mask.
ComparisonReport compare_window(const nls::WaveField& nls, const ConjectureChart& chart,
                                double gamma, OmegaCache& cache,
                                const std::optional<SemiclassicalInput>& semicl = std::nullopt,
                                double madelung_floor = 1e-8);

}  // namespace nlscrit::multiscale
