#include <cmath>
#include <numbers>

#include "doctest.h"
#include "nlscrit/errors.hpp"
#include "nlscrit/multiscale.hpp"

using namespace nlscrit;
using namespace nlscrit::multiscale;

namespace {

const hodograph::CriticalPoint& sy_cp() {
  static const auto cp = hodograph::find_critical_point(hodograph::satsuma_yajima(1.0), {2.01, 0.01});
  return cp;
}

}  // namespace

TEST_CASE("chart at the critical point") {
  const auto& cp = sy_cp();
  const double eps = 0.05;
  const ConjectureChart ch(cp, eps);
  CHECK(std::abs(ch.zeta(cp.x0, cp.t0)) < 1e-12);
  CHECK(std::abs(ch.center(cp.t0) - cp.x0) < 1e-14);

  OmegaCache cache;
  const auto omega = cache.evaluator(0.0, ch.line_direction());
  const double omega0 = -0.18755430834049;
  CHECK(std::abs(omega(0.0) - omega0) < 1e-9);
  const hodograph::UV at = conjecture_field(ch, cp.x0, cp.t0, omega);
  const double expected = cp.u0 + 2.0 * std::pow(eps, 0.4) * std::pow(3.0 * cp.r * std::sqrt(cp.u0), 0.4) * omega0;
  CHECK(std::abs(at.u - expected) < 1e-9);
  CHECK(std::abs(at.v) < 1e-9);
  CHECK(cache.size() == 1);
  cache.evaluator(0.0, ch.line_direction());
  CHECK(cache.size() == 1);

  // zeta moves along line_direction as x increases
  const cplx dz = ch.zeta(cp.x0 + 1e-3, 0.4) - ch.zeta(cp.x0, 0.4);
  CHECK(std::abs(dz / std::abs(dz) - ch.line_direction()) < 1e-12);
  CHECK(std::abs(std::abs(dz) / 1e-3 - ch.zeta_per_x()) < 1e-9);
}

TEST_CASE("epsilon scaling of the chart") {
  const auto& cp = sy_cp();
  const ConjectureChart a(cp, 0.05), b(cp, 0.1);
  CHECK(std::abs(b.prefactor() / a.prefactor() - std::pow(2.0, 0.4)) < 1e-13);
  const cplx za = a.zeta(0.1, 0.45), zb = b.zeta(0.1, 0.45);
  CHECK(std::abs(zb / za - std::pow(2.0, -0.8)) < 1e-13);
}

TEST_CASE("sector condition at the critical time") {
  for (double alpha : {0.0, 0.1}) {
    const auto f = alpha == 0.0 ? hodograph::satsuma_yajima(1.0) : hodograph::nonsymmetric(alpha);
    const auto cp = hodograph::find_critical_point(f, alpha == 0.0 ? std::pair{2.01, 0.01} : std::pair{3.3, -1.5});
    const ConjectureChart ch(cp, 0.05);
    for (int k = -100; k <= 100; ++k) {
      const double x = ch.center(cp.t0) + 0.01 * k;
      if (x == cp.x0) continue;
      CHECK(std::abs(std::arg(ch.zeta(x, cp.t0))) <= 0.7 * std::numbers::pi + 1e-6);
    }
  }
  hodograph::CriticalPoint bad = sy_cp();
  bad.psi = 2.0;
  CHECK_THROWS_AS(ConjectureChart(bad, 0.05), DomainError);
  CHECK_THROWS_AS(ConjectureChart(sy_cp(), 0.0), DomainError);
}

TEST_CASE("t schedule") {
  const auto& cp = sy_cp();
  const TSchedule s = t_schedule(cp, 0.04, 0.1);
  CHECK(std::abs(s.t_plus - 0.4924425000506214) < 1e-10);
  CHECK(std::abs(s.t_minus - 0.5076734983315072) < 1e-10);
  CHECK(s.t_plus < cp.t0);
  CHECK(s.t_minus > cp.t0);
  CHECK_THROWS_AS(t_schedule(cp, 0.04, 1e3), DomainError);
}

TEST_CASE("large-zeta agreement with the local solution") {
  const auto& cp = sy_cp();
  const double eps = 1e-3, T = -0.05;
  const ConjectureChart ch(cp, eps);
  const auto series = painleve::series_coefficients(30);
  const OmegaEvaluator omega = [&](cplx z) { return painleve::evaluate_series(series, z).value; };
  for (double dx : {-0.05, 0.0, 0.05}) {
    const double x = cp.x0 + cp.v0 * T + dx, t = cp.t0 + T;
    REQUIRE(std::abs(ch.zeta(x, t)) >= 20.0);
    const hodograph::UV c = conjecture_field(ch, x, t, omega);
    const hodograph::UV l = hodograph::local_solution(cp, x, 0.0, t);
    CHECK(std::abs(c.u - l.u) <= 0.05 * std::abs(l.u - cp.u0));
    if (dx != 0.0) CHECK(std::abs(c.v - l.v) <= 0.05 * std::abs(l.v - cp.v0));
  }
}

TEST_CASE("semiclassical continuation") {
  const auto f = hodograph::satsuma_yajima(1.0);
  const auto opts = hodograph::initial_data_options("satsuma_yajima", 1.0, 0.0, 0.0, nls::kDefaultHalfPeriod);
  const hodograph::InitialData data(f, opts);
  const std::vector<double> xs{-1.5, -0.4, 0.25, 1.0, 2.0};
  const auto at0 = semiclassical_solution(f, data, opts, sy_cp(), xs, 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(std::abs(at0[i].u - data.uv(xs[i]).u) < 1e-14);

  const double t = 0.3;
  const auto sol = semiclassical_solution(f, data, opts, sy_cp(), xs, t);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    hodograph::HodographOptions ho;
    ho.sheet = xs[i] > opts.x_start ? opts.right_sheet : opts.left_sheet;
    const auto p = hodograph::solve_hodograph(f, xs[i], t, 0.0, {sol[i].u, sol[i].v}, ho);
    CHECK(std::abs(p.u - sol[i].u) < 1e-10);
    CHECK(std::abs(p.v - sol[i].v) < 1e-10);
  }
  // odd symmetry of v for even data
  const std::vector<double> pm{-0.7, 0.7};
  const auto s2 = semiclassical_solution(f, data, opts, sy_cp(), pm, t);
  CHECK(std::abs(s2[0].u - s2[1].u) < 1e-10);
  CHECK(std::abs(s2[0].v + s2[1].v) < 1e-10);
  CHECK_THROWS_AS(semiclassical_solution(f, data, opts, sy_cp(), pm, -0.1), DomainError);
}

TEST_CASE("window guards") {
  nls::WaveField w;
  w.epsilon = 0.1;
  w.t = 0.5;
  w.psi.resize(256);
  for (int j = 0; j < w.N(); ++j) w.psi[j] = 1.0 / std::cosh(w.x(j));
  const ConjectureChart ch(sy_cp(), 0.1);
  OmegaCache cache(12.0, 401);
  CHECK_THROWS_AS(compare_window(w, ch, 1e3, cache), DomainError);
  CHECK_THROWS_AS(compare_window(w, ch, 0.0, cache), DomainError);
  const ComparisonReport r = compare_window(w, ch, 1.0, cache);
  CHECK(std::abs(r.half_width - std::pow(0.1, 0.8)) < 1e-15);
  CHECK_FALSE(r.linf_u_semicl.has_value());
  for (const auto& row : r.rows) CHECK(std::abs(row.x - r.center) <= r.half_width);
}
