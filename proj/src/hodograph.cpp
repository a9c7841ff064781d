#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "nlscrit/errors.hpp"
#include "nlscrit/hodograph.hpp"

namespace nlscrit::hodograph {

namespace {

struct System {
  Eigen::Vector2d F;
  Eigen::Matrix2d J;  // with respect to (u, v)
};

System hodograph_system(const FOracle& f, double u, double v, double x, double t, double s,
                        Sheet sheet) {
  const Partials p = f.partials(u, v, sheet);
  System sys;
  sys.F << v * t + p(1, 0) - x, u * t + p(0, 1) - s;
  sys.J << p(2, 0), t + p(1, 1), t + p(1, 1), p(0, 2);
  return sys;
}

}  // namespace

HodographPoint solve_hodograph(const FOracle& f, double x, double t, double s,
                               std::pair<double, double> guess, const HodographOptions& opts) {
  if (!(guess.first > 0.0)) throw DomainError("solve_hodograph: guess needs u > 0");
  double lu = std::log(guess.first), v = guess.second;
  System sys = hodograph_system(f, guess.first, v, x, t, s, opts.sheet);
  double res = sys.F.lpNorm<Eigen::Infinity>();
  if (!std::isfinite(res)) throw ConvergenceError("solve_hodograph: guess at a singular point", res);
  const double scale = 1.0 + std::abs(x) + std::abs(s);

  for (int it = 0; it <= opts.max_iter; ++it) {
    const double u = std::exp(lu);
    if (res <= opts.tol * scale) {
      if (sys.J.lpNorm<Eigen::Infinity>() < opts.singular_tol)
        throw SingularError("solve_hodograph: Jacobian singular (catastrophe point)");
      return {u, v, it, res};
    }
    Eigen::Matrix2d Jl = sys.J;
    Jl.col(0) *= u;
    if (sys.J.lpNorm<Eigen::Infinity>() < opts.singular_tol && it > 5)
      throw SingularError("solve_hodograph: Jacobian singular (catastrophe point)");
    const Eigen::Vector2d step = Jl.fullPivLu().solve(-sys.F);
    if (!step.allFinite()) throw SingularError("solve_hodograph: singular Jacobian");

    double lambda = 1.0;
    if (std::abs(step[0]) > 2.0) lambda = 2.0 / std::abs(step[0]);
    bool accepted = false;
    for (int k = 0; k < 40; ++k, lambda *= 0.5) {
      const double lt = lu + lambda * step[0], vt = v + lambda * step[1];
      const double ut = std::exp(lt);
      if (!f.domain().contains(ut, vt)) continue;
      System trial;
      try {
        trial = hodograph_system(f, ut, vt, x, t, s, opts.sheet);
      } catch (const DomainError&) {
        continue;
      }
      const double rt = trial.F.lpNorm<Eigen::Infinity>();
      if (std::isfinite(rt) && rt < (1.0 - 1e-4 * lambda) * res) {
        lu = lt;
        v = vt;
        sys = trial;
        res = rt;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (res <= 1e3 * opts.tol * scale) return {std::exp(lu), v, it, res};
      throw ConvergenceError("solve_hodograph: line search failed", res);
    }
  }
  throw ConvergenceError("solve_hodograph: Newton did not converge", res);
}

CriticalPoint find_critical_point(const FOracle& f, std::pair<double, double> guess,
                                  const CriticalOptions& opts) {
  double u = guess.first, v = guess.second;
  double res = 0.0;
  bool converged = false;
  for (int it = 0; it < opts.max_iter; ++it) {
    const Partials p = f.partials(u, v, opts.sheet);
    const Eigen::Vector2d G(p(2, 0), p(0, 1) - u * p(1, 1));
    res = G.lpNorm<Eigen::Infinity>();
    if (res <= opts.tol) {
      converged = true;
      break;
    }
    Eigen::Matrix2d J;
    J << p(3, 0), p(2, 1), -u * p(2, 1), p(0, 2) - u * p(1, 2);
    const Eigen::Vector2d step = J.fullPivLu().solve(-G);
    if (!step.allFinite()) throw SingularError("find_critical_point: singular Newton matrix");
    double lambda = 1.0;
    while (!f.domain().contains(u + lambda * step[0], v + lambda * step[1]) && lambda > 1e-8)
      lambda *= 0.5;
    u += lambda * step[0];
    v += lambda * step[1];
  }
  if (!converged) throw ConvergenceError("find_critical_point: Newton did not converge", res);

  const Partials p = f.partials(u, v, opts.sheet);
  CriticalPoint cp{};
  cp.u0 = u;
  cp.v0 = v;
  cp.t0 = -p(1, 1);
  cp.x0 = v * cp.t0 + p(1, 0);
  cp.s0 = u * cp.t0 + p(0, 1);
  cp.f_uuu = p(3, 0);
  cp.f_uuv = p(2, 1);
  const std::complex<double> a(cp.f_uuv, std::sqrt(u) * cp.f_uuu);
  if (std::abs(a) == 0.0) throw SingularError("find_critical_point: vanishing third derivatives");
  cp.r = 1.0 / std::abs(a);
  cp.psi = -std::arg(a);
  if (cp.psi <= -std::numbers::pi) cp.psi += 2.0 * std::numbers::pi;
  if (std::abs(std::cos(cp.psi)) < opts.genericity_margin)
    throw SingularError("find_critical_point: non-generic critical point (f_uuv = 0)");
  return cp;
}

}  // namespace nlscrit::hodograph
