#include <cmath>

#include "doctest.h"
#include "nlscrit/errors.hpp"
#include "nlscrit/nls_solver.hpp"

using namespace nlscrit;
using namespace nlscrit::nls;

namespace {

WaveField sech_field(double eps, int N) {
  WaveField f;
  f.epsilon = eps;
  f.psi.resize(N);
  for (int j = 0; j < N; ++j) f.psi[j] = 1.0 / std::cosh(f.x(j));
  return f;
}

double max_diff(const WaveField& a, const WaveField& b) {
  double m = 0.0;
  for (int j = 0; j < a.N(); ++j) m = std::max(m, std::abs(a.psi[j] - b.psi[j]));
  return m;
}

}  // namespace

TEST_CASE("grid defaults") {
  CHECK(default_grid_size(0.1) == 8192);
  CHECK(default_grid_size(0.06) == 8192);
  CHECK(default_grid_size(0.05) == 16384);
  CHECK(default_grid_size(0.03) == 32768);
  CHECK(std::abs(default_time_step(0.05) - 1e-4) < 1e-18);
  const auto x = uniform_grid(2.0, 8);
  CHECK(x.size() == 8);
  CHECK(x.front() == -2.0);
  CHECK(std::abs(x.back() - 1.5) < 1e-15);
}

TEST_CASE("plane wave evolves exactly") {
  const double eps = 0.1, A = 0.7, k = 0.5;
  WaveField f;
  f.epsilon = eps;
  f.psi.resize(1024);
  for (int j = 0; j < f.N(); ++j) f.psi[j] = A * std::polar(1.0, k * f.x(j) / eps);
  for (Scheme s : {Scheme::strang, Scheme::yoshida4}) {
    EvolutionConfig c;
    c.t_end = 0.2;
    c.dt = 1e-3;
    c.scheme = s;
    const WaveField g = evolve(f, c).field;
    const double omega = 0.5 * k * k - A * A;
    double err = 0.0;
    for (int j = 0; j < g.N(); ++j)
      err = std::max(err, std::abs(g.psi[j] - A * std::polar(1.0, (k * g.x(j) - omega * g.t) / eps)));
    CHECK(err <= 1e-10);
    CHECK(std::abs(g.t - 0.2) < 1e-14);

    const Madelung m = to_madelung(g);
    for (int j = 0; j < g.N(); j += 37) {
      CHECK(std::abs(m.u[j] - A * A) < 1e-10);
      CHECK(std::abs(m.v[j] - k) < 1e-10);
    }
  }
}

TEST_CASE("Madelung round trip") {
  const double eps = 0.1, L = kDefaultHalfPeriod;
  const int N = 4096;
  hodograph::InitialDataCurve c;
  c.x = uniform_grid(L, N);
  for (double x : c.x) {
    c.u.push_back(1.0 / std::pow(std::cosh(x), 2));
    c.v.push_back(0.5 * std::tanh(x));
    c.S.push_back(0.5 * std::log(std::cosh(x)));
  }
  const WaveField f = from_madelung(c, eps, L);
  const Madelung m = to_madelung(f);
  for (int j = 0; j < N; ++j) {
    CHECK(std::abs(m.u[j] - c.u[j]) <= 1e-9);
    if (c.u[j] > 1e-6) CHECK(std::abs(m.v[j] - c.v[j]) <= 1e-9);
  }
  CHECK(fourier_tail(f) < 1e-13);

  hodograph::InitialDataCurve bad = c;
  bad.x[3] += 1e-3;
  CHECK_THROWS_AS(from_madelung(bad, eps, L), DomainError);
  hodograph::InitialDataCurve coarse;
  coarse.x = uniform_grid(L, 256);
  for (double x : coarse.x) {
    coarse.u.push_back(1.0 / std::pow(std::cosh(x), 2));
    coarse.v.push_back(0.5 * std::tanh(x));
    coarse.S.push_back(0.5 * std::log(std::cosh(x)));
  }
  CHECK_THROWS_AS(from_madelung(coarse, 0.01, L), ResolutionError);
}

TEST_CASE("Krasny filter") {
  WaveField f = sech_field(0.1, 1024);
  f.psi[100] += 1e-15;
  const WaveField g = krasny_filter(f, 1e-13);
  const WaveField h = krasny_filter(g, 1e-13);
  CHECK(max_diff(g, h) <= 1e-15);
  for (const auto& c : fourier_coefficients(g)) CHECK((std::abs(c) < 1e-16 || std::abs(c) >= 1e-13 * (1 - 1e-9)));
  CHECK(fourier_tail(g) < 1e-13);
  CHECK(max_diff(f, g) < 1e-10);
}

TEST_CASE("interpolation and spectral derivative") {
  const WaveField f = sech_field(0.1, 2048);
  for (double x : {0.0, 0.3137, -1.77}) CHECK(std::abs(interpolate(f, x) - 1.0 / std::cosh(x)) < 1e-12);
  const auto d = spectral_derivative(f.psi, f.L);
  for (int j = 0; j < f.N(); j += 17) {
    const double x = f.x(j);
    CHECK(std::abs(d[j] + std::tanh(x) / std::cosh(x)) < 1e-10);
  }
}

TEST_CASE("epsilon floor") {
  EvolutionConfig c;
  c.t_end = 1e-3;
  c.dt = 1e-4;
  CHECK_THROWS_AS(evolve(sech_field(0.02, 1024), c), DomainError);
  c.allow_small_epsilon = true;
  CHECK_NOTHROW(evolve(sech_field(0.02, 1024), c));
  WaveField odd = sech_field(0.1, 1000);
  CHECK_THROWS_AS(evolve(odd, c), DomainError);
}

TEST_CASE("time step self-convergence and invariants") {
  const WaveField f = sech_field(0.1, 4096);
  auto run = [&](Scheme s, double dt) {
    EvolutionConfig c;
    c.t_end = 0.2;
    c.dt = dt;
    c.scheme = s;
    c.snap_times = {0.1};
    return evolve(f, c);
  };
  const auto s1 = run(Scheme::strang, 2e-3), s2 = run(Scheme::strang, 1e-3), s3 = run(Scheme::strang, 5e-4);
  const double ratio = max_diff(s1.field, s2.field) / max_diff(s2.field, s3.field);
  CHECK(ratio > 3.5);
  CHECK(ratio < 4.5);
  const auto y1 = run(Scheme::yoshida4, 1.6e-2), y2 = run(Scheme::yoshida4, 8e-3), y3 = run(Scheme::yoshida4, 4e-3);
  CHECK(max_diff(y1.field, y2.field) / max_diff(y2.field, y3.field) > 10.0);

  REQUIRE(s3.snapshots.size() == 1);
  CHECK(std::abs(s3.snapshots[0].t - 0.1) < 1e-14);
  const auto& tr = y3.trace;
  REQUIRE(tr.size() >= 2);
  for (const auto& row : tr) {
    CHECK(std::abs(row.mass / tr.front().mass - 1.0) < 1e-12);
    CHECK(std::abs(row.hamiltonian / tr.front().hamiltonian - 1.0) < 1e-9);
  }

  // even data stay even
  const WaveField& g = y3.field;
  const int N = g.N();
  double asym = 0.0;
  for (int j = 1; j < N; ++j) asym = std::max(asym, std::abs(g.psi[j] - g.psi[N - j]));
  CHECK(asym <= 1e-9);
}
