#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nlscrit/errors.hpp"
#include "nlscrit/hodograph.hpp"

using namespace nlscrit;
using namespace nlscrit::hodograph;
using cplx = std::complex<double>;

namespace {

std::vector<std::pair<std::string, FOracle>> catalog() {
  return {{"satsuma_yajima", satsuma_yajima(1.0)},
          {"symmetric_mu(0.5)", symmetric_mu(1.0, 0.5)},
          {"symmetric_mu(2)", symmetric_mu(1.0, 2.0)},
          {"tvz_mu2", tvz_mu2()},
          {"nonsymmetric(0.1)", nonsymmetric(0.1)}};
}

struct NonsymmetricClosedForm {
  double u0, v0, x0, t0, r, psi;
  explicit NonsymmetricClosedForm(double a) {
    const double q = std::sqrt(1.0 - 16.0 * a * a);
    u0 = 4.0 * (1.0 - 16.0 * a * a);
    v0 = -16.0 * a;
    x0 = 0.5 * std::log((1.0 + 4.0 * a) / (1.0 - 4.0 * a));
    t0 = 0.25 - 0.5 * a * std::log((1.0 + 4.0 * a) / (1.0 - 4.0 * a));
    r = 8.0 * u0;
    psi = -std::atan(a * q / (0.125 - 4.0 * a * a));
  }
};

}  // namespace

TEST_CASE("catalog potentials solve f_vv + u f_uu = 0") {
  for (const auto& [name, f] : catalog()) {
    CAPTURE(name);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        const double u = 0.5 + 3.5 * i / 19.0, v = -2.0 + 4.0 * j / 19.0;
        const Partials p = f.partials(u, v);
        const double scale = std::abs(p(0, 2)) + std::abs(u * p(2, 0)) + 1.0;
        worst = std::max(worst, std::abs(f.pde_residual(u, v)) / scale);
      }
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("partials agree with finite differences") {
  for (const auto& [name, f] : catalog()) {
    CAPTURE(name);
    const double u = 1.7, v = 0.3, h = 1e-5;
    const Partials p = f.partials(u, v);
    const Partials pu = f.partials(u + h, v), mu = f.partials(u - h, v);
    const Partials pv = f.partials(u, v + h), mv = f.partials(u, v - h);
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; i + j <= 4; ++j) {
        const double du = (pu(i, j) - mu(i, j)) / (2.0 * h);
        const double dv = (pv(i, j) - mv(i, j)) / (2.0 * h);
        CHECK(std::abs(du - p(i + 1, j)) <= 1e-6 * (std::abs(p(i + 1, j)) + 1.0));
        CHECK(std::abs(dv - p(i, j + 1)) <= 1e-6 * (std::abs(p(i, j + 1)) + 1.0));
      }
  }
}

TEST_CASE("catalog special values") {
  CHECK(std::abs(tvz_mu2().partials(4.0, 0.0)(0, 1) + 1.0) < 1e-14);
  const FOracle n0 = nonsymmetric(0.0), t = tvz_mu2();
  for (double u : {0.5, 2.0, 5.0})
    for (double v : {-1.0, 0.4}) CHECK(std::abs(n0.value(u, v) - t.value(u, v)) < 1e-14);
  CHECK_THROWS_AS(satsuma_yajima(-1.0), DomainError);
  CHECK_THROWS_AS(symmetric_mu(1.0, -0.1), DomainError);
  CHECK_THROWS_AS(nonsymmetric(0.25), DomainError);
  CHECK_THROWS_AS(satsuma_yajima(1.0).partials(-1.0, 0.0), DomainError);
}

TEST_CASE("hodograph solve") {
  const FOracle sy = satsuma_yajima(1.0);
  HodographOptions ho;
  ho.sheet = Sheet::upper;
  const auto p = solve_hodograph(sy, 1.0, 0.0, 0.0, {0.5, 0.0}, ho);
  CHECK(std::abs(p.u - 1.0 / std::pow(std::cosh(1.0), 2)) < 1e-12);
  CHECK(std::abs(p.v) < 1e-12);

  const CriticalPoint cp = find_critical_point(sy, {2.01, 0.01});
  CHECK_THROWS_AS(solve_hodograph(sy, cp.x0, cp.t0, cp.s0, {cp.u0 + 1e-3, 1e-3}), SingularError);
}

TEST_CASE("critical points") {
  const CriticalPoint sy = find_critical_point(satsuma_yajima(1.0), {2.01, 0.01});
  CHECK(std::abs(sy.u0 - 2.0) < 1e-8);
  CHECK(std::abs(sy.v0) < 1e-8);
  CHECK(std::abs(sy.x0) < 1e-8);
  CHECK(std::abs(sy.t0 - 0.5) < 1e-8);
  CHECK(std::abs(sy.r - 4.0) < 1e-8);
  CHECK(std::abs(sy.psi) < 1e-8);
  CHECK(std::abs(sy.s0) < 1e-8);

  for (const FOracle& f : {tvz_mu2(), symmetric_mu(1.0, 2.0)}) {
    const CriticalPoint c = find_critical_point(f, {4.01, 0.01});
    CHECK(std::abs(c.u0 - 4.0) < 1e-8);
    CHECK(std::abs(c.v0) < 1e-8);
    CHECK(std::abs(c.x0) < 1e-8);
    CHECK(std::abs(c.t0 - 0.25) < 1e-8);
    CHECK(std::abs(c.r - 32.0) < 1e-8);
    CHECK(std::abs(c.psi) < 1e-8);
  }

  const CriticalPoint mu = find_critical_point(symmetric_mu(1.0, 0.5), {2.51, 0.01});
  CHECK(std::abs(mu.u0 - 2.5) < 1e-8);
  CHECK(std::abs(mu.r - std::pow(2.5, 3) / 2.0) < 1e-8);

  for (double a : {0.05, 0.1, 0.15}) {
    CAPTURE(a);
    const NonsymmetricClosedForm e(a);
    const CriticalPoint c = find_critical_point(nonsymmetric(a), {e.u0 - 0.06, e.v0 + 0.1});
    CHECK(std::abs(c.u0 - e.u0) < 1e-8);
    CHECK(std::abs(c.v0 - e.v0) < 1e-8);
    CHECK(std::abs(c.x0 - e.x0) < 1e-8);
    CHECK(std::abs(c.t0 - e.t0) < 1e-8);
    CHECK(std::abs(c.r - e.r) < 1e-8);
    CHECK(std::abs(c.psi - e.psi) < 1e-8);
    CHECK(std::abs(c.s0) < 1e-8);
    // (1/r) e^{-i psi} = f_uuv + i sqrt(u0) f_uuu
    CHECK(std::abs(std::polar(1.0 / c.r, -c.psi) - cplx(c.f_uuv, std::sqrt(c.u0) * c.f_uuu)) < 1e-10);
  }
  // beyond alpha^2 = 1/32 the arctan form picks the wrong half plane
  const NonsymmetricClosedForm e(0.2);
  const CriticalPoint c = find_critical_point(nonsymmetric(0.2), {e.u0 - 0.06, e.v0 + 0.1});
  CHECK(std::cos(c.psi) < 0.0);
  CHECK(std::abs(std::tan(c.psi) - std::tan(e.psi)) < 1e-8);
}

TEST_CASE("local R, P0, Q0") {
  for (double psi : {0.0, 0.4, -1.2}) {
    const auto z = local_R_P0_Q0(0.0, 0.0, psi);
    CHECK(std::abs(z.R - std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(z.P0) < 1e-14);
    CHECK(std::abs(z.Q0) < 1e-14);
  }
  const auto a = local_R_P0_Q0(1.0, 0.0, 0.0), b = local_R_P0_Q0(-1.0, 0.0, 0.0);
  CHECK(std::abs(a.R - std::sqrt(1.0 + std::sqrt(2.0))) < 1e-14);
  CHECK(std::abs(a.R - b.R) < 1e-14);
  CHECK(std::abs(a.Q0 + b.Q0) < 1e-14);
  CHECK(std::abs(a.P0 - b.P0) < 1e-14);
  CHECK_THROWS_AS(local_R_P0_Q0(0.0, -1.0, 0.0), SingularError);
}

TEST_CASE("quadratic root identity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> X(-3.0, 3.0), T(-1.0, -0.01), R(1.0, 30.0), P(-1.4, 1.4);
  double worst = 0.0, worst_pq = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double x = X(rng), s = X(rng), tb = T(rng), r = R(rng), psi = P(rng);
    const cplx w = quadratic_root_w(x, s, psi, tb, r);
    const cplx a = std::polar(1.0 / r, -psi);
    const cplx z = 0.5 * r * tb * tb * cplx(s, x);
    worst = std::max(worst, std::abs(tb * w + 0.5 * a * w * w - z) / (1.0 + std::abs(z)));
    const auto q = local_R_P0_Q0(x, s, psi);
    worst_pq = std::max(worst_pq, std::abs(w - r * tb * cplx(q.P0, q.Q0)) / (1.0 + std::abs(w)));
  }
  CHECK(worst <= 1e-12);
  CHECK(worst_pq <= 1e-12);
  CHECK(quadratic_root_w(0.0, 0.0, 0.3, -0.5, 4.0) == cplx(0.0, 0.0));
  CHECK_THROWS_AS(quadratic_root_w(0.1, 0.1, 0.0, 0.5, 4.0), DomainError);
}

TEST_CASE("local solution") {
  const FOracle sy = satsuma_yajima(1.0);
  const CriticalPoint cp = find_critical_point(sy, {2.01, 0.01});
  const double T = -0.1;
  const UV at = local_solution(cp, cp.x0 + cp.v0 * T, cp.s0 + cp.u0 * T, cp.t0 + T);
  CHECK(std::abs(at.u - cp.u0) < 1e-14);
  CHECK(std::abs(at.v - cp.v0) < 1e-14);

  // maximum at X = S tan psi = 0, below u0
  double best_x = 1.0, best_u = -1.0;
  for (int k = -200; k <= 200; ++k) {
    const double X = 0.02 * k;
    const double x = cp.x0 + X * cp.r * T * T / (2.0 * std::sqrt(cp.u0));
    const UV p = local_solution(cp, x, 0.0, cp.t0 + T);
    CHECK(p.u < cp.u0);
    if (p.u > best_u) {
      best_u = p.u;
      best_x = X;
    }
  }
  CHECK(std::abs(best_x) < 1e-12);

  // against the exact solve: T = -0.01, X = 0.5, S = 0
  const double Ts = -0.01;
  const double x = cp.x0 + 0.5 * cp.r * Ts * Ts / (2.0 * std::sqrt(cp.u0));
  const UV loc = local_solution(cp, x, cp.s0 + cp.u0 * Ts, cp.t0 + Ts);
  const auto ex = solve_hodograph(sy, x, cp.t0 + Ts, cp.s0 + cp.u0 * Ts, {loc.u, loc.v});
  CHECK(std::abs(loc.u - ex.u) / ex.u <= 0.05);
  CHECK_THROWS_AS(local_solution(cp, 0.0, 0.0, cp.t0 + 0.1), DomainError);
}

TEST_CASE("far field and cusp") {
  const CriticalPoint cp = find_critical_point(nonsymmetric(0.1), {3.3, -1.5});
  const double T = -0.05;
  for (int side : {1, -1}) {
    CAPTURE(side);
    const double X = side * 1e3;
    const double xl = X * cp.r * T * T / (2.0 * std::sqrt(cp.u0));
    const UV loc = local_solution(cp, cp.x0 + cp.v0 * T + xl, cp.s0 + cp.u0 * T, cp.t0 + T);
    const UV ff = far_field(cp, xl, T, side);
    CHECK(std::abs(ff.u - loc.u) <= 0.02 * std::abs(loc.u - cp.u0));
    CHECK(std::abs(ff.v - loc.v) <= 0.02 * std::abs(loc.v - cp.v0));
  }
  CHECK(far_field(cp, 1e6, T, 1).u < 0.0);
  CHECK_THROWS_AS(far_field(cp, 1.0, T, 0), DomainError);

  const CriticalPoint sy = find_critical_point(satsuma_yajima(1.0), {2.01, 0.01});
  CHECK(cusp_profile(sy, 0.0) == sy.u0);
  CHECK(std::abs(cusp_profile(sy, 0.01) - 1.8) < 1e-12);
  CHECK(std::abs(cusp_profile(sy, -0.01) - 1.8) < 1e-12);
}

TEST_CASE("umbilic stationary points") {
  const auto p = umbilic_stationary_points(-0.5, 0.0);
  CHECK(std::abs(std::abs(p[0].first) - 1.0) < 1e-14);
  CHECK(std::abs(p[0].first + p[1].first) < 1e-14);
  CHECK(std::abs(p[0].second) < 1e-14);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const double ap = d(rng), am = d(rng);
    for (const auto& [U, V] : umbilic_stationary_points(ap, am)) {
      CHECK(std::abs(0.5 * (U * U - V * V) + ap) <= 1e-12);
      CHECK(std::abs(-U * V + am) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(umbilic_stationary_points(0.0, 0.0), SingularError);
}

TEST_CASE("initial data reconstruction") {
  const double L = 10.0 * std::numbers::pi;
  SUBCASE("satsuma_yajima") {
    const InitialData d(satsuma_yajima(1.0), initial_data_options("satsuma_yajima", 1.0, 0.0, 0.0, L));
    double err = 0.0;
    for (int k = 0; k <= 1000; ++k) {
      const double x = -5.0 + 0.01 * k;
      err = std::max(err, std::abs(d.uv(x).u - 1.0 / std::pow(std::cosh(x), 2)) + std::abs(d.uv(x).v));
    }
    CHECK(err <= 1e-8);
  }
  SUBCASE("symmetric_mu 2") {
    const FOracle f = symmetric_mu(1.0, 2.0);
    const auto opts = initial_data_options("symmetric_mu", 1.0, 2.0, 0.0, L);
    const InitialData d(f, opts);
    double err = 0.0, serr = 0.0;
    for (int k = 0; k <= 100; ++k) {
      const double x = -5.0 + 0.1 * k;
      const UV p = d.uv(x);
      err = std::max({err, std::abs(p.u - 1.0 / std::pow(std::cosh(x), 2)), std::abs(p.v + 2.0 * std::tanh(x))});
      serr = std::max(serr, std::abs(d.phase(x) + 2.0 * std::log(std::cosh(x))));
    }
    CHECK(err <= 1e-8);
    CHECK(serr <= 1e-8);
    // round trip through the hodograph solve at t = 0
    HodographOptions ho;
    ho.sheet = Sheet::upper;
    const UV p = d.uv(1.3);
    const auto q = solve_hodograph(f, 1.3, 0.0, 0.0, {p.u * 1.01, p.v + 0.01}, ho);
    CHECK(std::abs(q.u - p.u) <= 1e-8);
    CHECK(std::abs(q.v - p.v) <= 1e-8);
  }
  SUBCASE("nonsymmetric tails") {
    const double a = 0.1;
    const InitialData d(nonsymmetric(a), initial_data_options("nonsymmetric", 1.0, 0.0, a, L));
    const auto [vp, vm] = nonsymmetric_tail_velocities(a);
    CHECK(std::abs(vp - (std::sqrt(1.0 + 4.0 * a) - 1.0) / a) < 1e-15);
    CHECK(std::abs(d.uv(-31.0).v - vp) < 1e-12);
    CHECK(std::abs(d.uv(31.0).v - vm) < 1e-12);
    CHECK(d.splice_mismatch() < 1e-8);
    // S' = v across the splice points
    for (double x : {-20.0, -15.0, 0.0, 11.0, 14.0}) {
      const double h = 1e-4;
      CHECK(std::abs((d.phase(x + h) - d.phase(x - h)) / (2.0 * h) - d.uv(x).v) < 1e-6);
    }
    const auto z = nonsymmetric_tail_velocities(0.0);
    CHECK(z.first == 2.0);
    CHECK(z.second == -2.0);
  }
}
