#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>

#include "nlscrit/errors.hpp"
#include "nlscrit/painleve.hpp"

namespace nlscrit::painleve {

namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;

void pi_rhs(const State& y, State& dy, double zeta) {
  dy[0] = y[1];
  dy[1] = 6.0 * y[0] * y[0] - zeta;
}

State series_state(double start) {
  if (start < 10.0) throw DomainError("pole search: start must be >= 10");
  const SeriesValue sv = evaluate_series(series_coefficients(30), cplx(start, 0.0));
  return {sv.value.real(), sv.derivative.real()};
}

auto make_stepper(const PoleSearchOptions& opts) {
  return odeint::make_dense_output(opts.abs_tol, opts.rel_tol,
                                   odeint::runge_kutta_dopri5<State>());
}

}  // namespace

PoleReport locate_first_real_pole(double start, double threshold, const PoleSearchOptions& opts) {
  if (!(threshold > 1.0)) throw DomainError("pole search: threshold must exceed 1");
  if (!(opts.left_bound < start)) throw DomainError("pole search: left_bound must be < start");

  auto stepper = make_stepper(opts);
  stepper.initialize(series_state(start), start, -1e-3);
  State x{};
  while (true) {
    stepper.do_step(pi_rhs);
    const double t_new = stepper.current_time(), t_old = stepper.previous_time();
    const State& cur = stepper.current_state();
    if (!std::isfinite(cur[0]) || std::abs(cur[0]) > threshold) {
      // |Omega| crosses the threshold inside [t_new, t_old]; bisect the dense output.
      double lo = t_new, hi = t_old;
      while (hi - lo > 1e-15 * (1.0 + std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        stepper.calc_state(mid, x);
        if (std::abs(x[0]) > threshold) lo = mid; else hi = mid;
        if (mid == lo && mid == hi) break;
      }
      stepper.calc_state(hi, x);
      if (x[0] <= 0.0) throw ConvergenceError("pole search: blow-up is not a double pole", x[0]);
      const double from_value = hi - 1.0 / std::sqrt(x[0]);
      const double from_slope = hi + 2.0 * x[0] / x[1];
      PoleReport rep;
      rep.pole_location = from_value;
      rep.blowup_threshold = threshold;
      rep.laurent_check = std::abs(from_value - from_slope);
      const double w = hi - from_value;
      rep.bracket_lo = from_value - w;
      rep.bracket_hi = hi;
      return rep;
    }
    if (t_new <= opts.left_bound)
      throw ConvergenceError("no pole found", std::abs(cur[0]));
  }
}

double max_abs_rightward(double start, double stop, const PoleSearchOptions& opts) {
  if (!(stop > start)) throw DomainError("max_abs_rightward: stop must exceed start");
  auto stepper = make_stepper(opts);
  stepper.initialize(series_state(start), start, 1e-3);
  double m = std::abs(stepper.current_state()[0]);
  State x{};
  while (stepper.current_time() < stop) {
    stepper.do_step(pi_rhs);
    const double t = std::min(stepper.current_time(), stop);
    stepper.calc_state(t, x);
    if (!std::isfinite(x[0])) throw ConvergenceError("max_abs_rightward: blow-up", m);
    m = std::max(m, std::abs(x[0]));
  }
  return m;
}

cplx rotate_tritronquee(int n, cplx zeta, const std::function<cplx(cplx)>& omega0) {
  if (n < -2 || n > 2) throw DomainError("rotate_tritronquee: n must lie in {-2..2}");
  if (n == 0) return omega0(zeta);
  const double th = 2.0 * std::numbers::pi * n / 5.0;
  return std::polar(1.0, 2.0 * th) * omega0(std::polar(1.0, th) * zeta);
}

}  // namespace nlscrit::painleve
