#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "nlscrit/deformed_integrals.hpp"
#include "nlscrit/errors.hpp"

using namespace nlscrit;
using namespace nlscrit::deformed;

namespace {

FieldJet random_jet(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(0.3, 3.0), any(-2.0, 2.0);
  return {pos(rng), any(rng), any(rng), any(rng), any(rng), any(rng)};
}

}  // namespace

TEST_CASE("NLS Hamiltonian density truncates") {
  const auto f = hodograph::nls_hamiltonian();
  std::mt19937_64 rng(11);
  for (int k = 0; k < 1000; ++k) {
    const FieldJet j = random_jet(rng);
    const DensityBlocks b = density_blocks(f, j);
    CHECK(std::abs(b.order0 - 0.5 * (j.u * j.v * j.v - j.u * j.u)) <= 1e-12);
    CHECK(std::abs(b.order2 - j.u_x * j.u_x / (8.0 * j.u)) <= 1e-12);
    CHECK(std::abs(b.order4) <= 1e-12);
  }
}

TEST_CASE("Toda Hamiltonian coefficients") {
  const auto g = hodograph::toda_hamiltonian();
  std::mt19937_64 rng(12);
  for (int k = 0; k < 1000; ++k) {
    const FieldJet j = random_jet(rng);
    const double u = j.u, ux = j.u_x, vx = j.v_x, uxx = j.u_xx, vxx = j.v_xx;
    const DensityBlocks b = density_blocks(g, j);
    const double e2 = -(ux * ux + 2.0 * u * vx * vx) / (24.0 * u * u);
    const double e4 = -(uxx * uxx / (240.0 * std::pow(u, 3)) + vxx * vxx / (60.0 * u * u) +
                        uxx * vx * vx / (40.0 * std::pow(u, 3)) - std::pow(ux, 4) / (144.0 * std::pow(u, 5)) -
                        ux * ux * vx * vx / (24.0 * std::pow(u, 4)) + std::pow(vx, 4) / (360.0 * std::pow(u, 3)));
    CHECK(std::abs(b.order2 - e2) <= 1e-12 * (1.0 + std::abs(e2)));
    CHECK(std::abs(b.order4 - e4) <= 1e-12 * (1.0 + std::abs(e4)));
  }
}

TEST_CASE("quadratic-in-u potentials have no eps^4 block") {
  // f = a u^2 + b u v^2 + c u + d v^2 + e uv + v: polynomial of degree <= 2 in u
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const double a = c(rng), b = c(rng), cc = c(rng), e = c(rng);
    const hodograph::FOracle f("poly", {}, [=](const Jet& u, const Jet& v, hodograph::Sheet) {
      return a * u * u + b * u * v * v + cc * u * v + e * v * v * v;
    });
    for (int k = 0; k < 200; ++k) CHECK(std::abs(density_blocks(f, random_jet(rng)).order4) <= 1e-12);
  }
}

TEST_CASE("density at eps = 0 and errors") {
  const auto g = hodograph::toda_hamiltonian();
  const FieldJet j{1.3, 0.2, 0.5, -0.4, 0.1, 0.7};
  CHECK(deformed_density(g, j, 0.0) == g.value(1.3, 0.2));
  const DensityBlocks b = density_blocks(g, j);
  CHECK(std::abs(deformed_density(g, j, 0.1) - (b.order0 + 1e-2 * b.order2 + 1e-4 * b.order4)) < 1e-15);
  CHECK_THROWS_AS(deformed_density(g, {0.0, 0.0, 0.0, 0.0, 0.0, 0.0}, 0.1), DomainError);
  CHECK_THROWS_AS(deformed_density(g, j, -0.1), DomainError);
}

TEST_CASE("NLS functionals") {
  SUBCASE("plane wave") {
    const double eps = 0.1, A = 0.7, k = 0.5;  // k / eps = 5 is a multiple of pi / L
    nls::WaveField f;
    f.epsilon = eps;
    f.psi.resize(1024);
    for (int j = 0; j < f.N(); ++j) f.psi[j] = A * std::polar(1.0, k * f.x(j) / eps);
    const Functionals F = nls_functionals(f);
    const double len = 2.0 * f.L;
    CHECK(std::abs(F.mass - A * A * len) < 1e-11);
    const double H = len * (0.5 * A * A * k * k - 0.5 * std::pow(A, 4));
    CHECK(std::abs(F.hamiltonian_wave - H) < 1e-11);
    CHECK(std::abs(F.hamiltonian_madelung - H) < 1e-11);
    CHECK(F.madelung_reliable);
  }
  SUBCASE("zero field") {
    nls::WaveField f;
    f.psi.assign(256, 0.0);
    const Functionals F = nls_functionals(f);
    CHECK(F.mass == 0.0);
    CHECK(F.hamiltonian_wave == 0.0);
    CHECK_FALSE(F.madelung_reliable);
  }
  SUBCASE("sech profile: Madelung and wave forms agree") {
    nls::WaveField f;
    f.epsilon = 0.1;
    f.psi.resize(1 << 13);
    for (int j = 0; j < f.N(); ++j) f.psi[j] = 1.0 / std::cosh(f.x(j));
    const Functionals F = nls_functionals(f);
    CHECK(std::abs(F.mass - 2.0) < 1e-12);
    CHECK(std::abs(F.hamiltonian_wave - (0.005 * 2.0 / 3.0 - 2.0 / 3.0)) < 1e-12);
    CHECK(std::abs(F.hamiltonian_madelung / F.hamiltonian_wave - 1.0) <= 1e-8);
  }
}
