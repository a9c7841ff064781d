#include <gsl/gsl_multimin.h>

#include <cmath>
#include <memory>

#include "nlscrit/chebyshev.hpp"
#include "nlscrit/errors.hpp"
#include "nlscrit/hodograph.hpp"

namespace nlscrit::hodograph {

namespace {

struct SimplexProblem {
  const FOracle* f;
  double x;
  Sheet sheet;
};

double simplex_objective(const gsl_vector* p, void* params) {
  const auto* sp = static_cast<const SimplexProblem*>(params);
  const double u = std::exp(gsl_vector_get(p, 0)), v = gsl_vector_get(p, 1);
  try {
    const Partials d = sp->f->partials(u, v, sp->sheet);
    const double a = d(1, 0) - sp->x, b = d(0, 1);
    const double r = a * a + b * b;
    return std::isfinite(r) ? r : 1e300;
  } catch (const Error&) {
    return 1e300;
  }
}

// Derivative-free minimisation of |x - f_u|^2 + f_v^2 in (ln u, v).
std::pair<double, double> simplex_solve(const FOracle& f, double x, Sheet sheet,
                                        std::pair<double, double> guess) {
  SimplexProblem prob{&f, x, sheet};
  gsl_multimin_function fn{&simplex_objective, 2, &prob};
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> start(gsl_vector_alloc(2),
                                                                gsl_vector_free);
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> steps(gsl_vector_alloc(2),
                                                                gsl_vector_free);
  gsl_vector_set(start.get(), 0, std::log(guess.first));
  gsl_vector_set(start.get(), 1, guess.second);
  gsl_vector_set_all(steps.get(), 0.1);
  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> m(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2),
      gsl_multimin_fminimizer_free);
  gsl_multimin_fminimizer_set(m.get(), &fn, start.get(), steps.get());
  for (int it = 0; it < 5000; ++it) {
    if (gsl_multimin_fminimizer_iterate(m.get())) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m.get()), 1e-12) == GSL_SUCCESS)
      break;
  }
  const gsl_vector* best = gsl_multimin_fminimizer_x(m.get());
  return {std::exp(gsl_vector_get(best, 0)), gsl_vector_get(best, 1)};
}

std::pair<double, double> solve_datum(const FOracle& f, double x, Sheet sheet,
                                      std::pair<double, double> guess, double tol) {
  HodographOptions ho;
  ho.sheet = sheet;
  ho.tol = tol;
  ho.singular_tol = 0.0;
  try {
    const HodographPoint p = solve_hodograph(f, x, 0.0, 0.0, guess, ho);
    return {p.u, p.v};
  } catch (const ConvergenceError&) {
  } catch (const SingularError&) {
  }
  const auto polished = simplex_solve(f, x, sheet, guess);
  try {
    const HodographPoint p = solve_hodograph(f, x, 0.0, 0.0, polished, ho);
    return {p.u, p.v};
  } catch (const Error&) {
    throw ConvergenceError("initial data: no root of x = f_u, f_v = 0 at x = " + std::to_string(x), x);
  }
}

}  // namespace

InitialData::InitialData(const FOracle& f, const InitialDataOptions& opts)
    : left_(opts.left_tail), right_(opts.right_tail) {
  if (!(opts.core_lo < opts.core_hi)) throw DomainError("InitialData: empty core interval");
  if (opts.x_start < opts.core_lo || opts.x_start > opts.core_hi)
    throw DomainError("InitialData: x_start outside the core interval");
  nodes_ = cheb::lobatto_points(opts.n_core, opts.core_lo, opts.core_hi);
  const int n = static_cast<int>(nodes_.size());
  std::vector<double> lu(n), v(n);

  int start = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(nodes_[i] - opts.x_start) < std::abs(nodes_[start] - opts.x_start)) start = i;

  // Nodes are descending: increasing index walks left.
  auto walk = [&](int first, int step, std::pair<double, double> prev,
                  std::pair<double, double> prev2, int count) {
    for (int i = first; i >= 0 && i < n; i += step, ++count) {
      std::pair<double, double> guess = prev;
      if (count >= 2) {
        const double l = 2.0 * std::log(prev.first) - std::log(prev2.first);
        guess = {std::exp(l), 2.0 * prev.second - prev2.second};
      }
      const Sheet sheet = nodes_[i] > opts.x_start ? opts.right_sheet : opts.left_sheet;
      const auto sol = solve_datum(f, nodes_[i], sheet, guess, opts.tol);
      lu[i] = std::log(sol.first);
      v[i] = sol.second;
      prev2 = prev;
      prev = sol;
    }
  };
  walk(start, 1, opts.guess, opts.guess, 0);
  const std::pair<double, double> at_start{std::exp(lu[start]), v[start]};
  walk(start - 1, -1, at_start, at_start, 1);

  const std::vector<double> S =
      cheb::cumulative_integral(v, opts.core_lo, opts.core_hi, opts.x_start);
  S_lo_ = S.back();
  S_hi_ = S.front();
  lu_interp_.emplace(nodes_, lu);
  v_interp_.emplace(nodes_, v);
  S_interp_.emplace(nodes_, S);

  auto mismatch = [&](const Tail& tail, int i) {
    const UV t = tail.uv(nodes_[i]);
    return std::max(std::abs(t.u / std::exp(lu[i]) - 1.0), std::abs(t.v - v[i]));
  };
  if (left_) splice_mismatch_ = std::max(splice_mismatch_, mismatch(*left_, n - 1));
  if (right_) splice_mismatch_ = std::max(splice_mismatch_, mismatch(*right_, 0));
}

UV InitialData::uv(double x) const {
  if (x < lower()) {
    if (!left_) throw DomainError("InitialData: x left of the data interval");
    return left_->uv(x);
  }
  if (x > upper()) {
    if (!right_) throw DomainError("InitialData: x right of the data interval");
    return right_->uv(x);
  }
  return {std::exp((*lu_interp_)(x)), (*v_interp_)(x)};
}

double InitialData::phase(double x) const {
  if (x < lower()) {
    if (!left_) throw DomainError("InitialData: x left of the data interval");
    return S_lo_ + left_->phase(x);
  }
  if (x > upper()) {
    if (!right_) throw DomainError("InitialData: x right of the data interval");
    return S_hi_ + right_->phase(x);
  }
  return (*S_interp_)(x);
}

InitialDataCurve InitialData::sample(std::span<const double> x) const {
  InitialDataCurve c;
  c.x.assign(x.begin(), x.end());
  c.u.resize(x.size());
  c.v.resize(x.size());
  c.S.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const UV p = uv(x[i]);
    c.u[i] = p.u;
    c.v[i] = p.v;
    c.S[i] = phase(x[i]);
  }
  return c;
}

std::pair<double, double> nonsymmetric_tail_velocities(double alpha) {
  if (alpha == 0.0) return {2.0, -2.0};
  return {(std::sqrt(1.0 + 4.0 * alpha) - 1.0) / alpha, (std::sqrt(1.0 - 4.0 * alpha) - 1.0) / alpha};
}

namespace {

// Leading exponential tails of the nonsymmetric family.
Tail nonsymmetric_left(double alpha, double edge) {
  const double vp = nonsymmetric_tail_velocities(alpha).first;
  const double g = 1.0 + alpha * vp, c = 1.0 / vp + 0.5 * alpha;
  auto xi = [=](double x) { return (x - alpha * vp) / g; };
  auto prim = [=](double x) {
    const double z = xi(x);
    return vp * x + 2.0 * vp * vp * std::exp(2.0 * z) * (alpha * (0.5 * z - 0.25) - 0.5 * c);
  };
  Tail t;
  t.uv = [=](double x) {
    const double z = xi(x);
    const double u = vp * vp * std::exp(2.0 * z);
    return UV{u, vp + 2.0 * u * (alpha * z - c) / g};
  };
  t.phase = [=](double x) { return prim(x) - prim(edge); };
  return t;
}

Tail nonsymmetric_right(double alpha, double edge) {
  const double vm = nonsymmetric_tail_velocities(alpha).second;
  const double g = 1.0 + alpha * vm, c = 1.0 / vm + 0.5 * alpha;
  auto ell = [=](double x) { return (x + alpha * vm) / g; };
  auto prim = [=](double x) {
    const double L = ell(x);
    return vm * x + 2.0 * vm * vm * std::exp(-2.0 * L) * (0.5 * c + 0.5 * alpha * L + 0.25 * alpha);
  };
  Tail t;
  t.uv = [=](double x) {
    const double L = ell(x);
    const double u = vm * vm * std::exp(-2.0 * L);
    return UV{u, vm - 2.0 * u * (c + alpha * L) / g};
  };
  t.phase = [=](double x) { return prim(x) - prim(edge); };
  return t;
}

}  // namespace

InitialDataOptions initial_data_options(const std::string& family, double A0, double mu,
                                        double alpha, double L) {
  InitialDataOptions o;
  if (family == "nonsymmetric") {
    o.core_lo = -15.0;
    o.core_hi = 11.0;
    o.n_core = 511;
    o.guess = {1.0, 0.0};
    o.left_tail = nonsymmetric_left(alpha, o.core_lo);
    o.right_tail = nonsymmetric_right(alpha, o.core_hi);
    return o;
  }
  if (family != "satsuma_yajima" && family != "symmetric_mu" && family != "tvz_mu2")
    throw DomainError("initial_data_options: unknown family " + family);
  (void)mu;
  o.core_lo = -L;
  o.core_hi = L;
  // just below the peak value: u = A0^2 at x = 0 is the branch point of f
  o.guess = {0.99 * (family == "tvz_mu2" ? 1.0 : A0 * A0), 0.0};
  return o;
}

InitialDataCurve reconstruct_initial_data(const FOracle& f, std::span<const double> x_grid,
                                          const InitialDataOptions& opts) {
  return InitialData(f, opts).sample(x_grid);
}

}  // namespace nlscrit::hodograph
