#include <cmath>
#include <numbers>

#include "nlscrit/errors.hpp"
#include "nlscrit/hodograph.hpp"

namespace nlscrit::hodograph {

using cplx = std::complex<double>;

Sheet opposite(Sheet s) {
  switch (s) {
    case Sheet::upper: return Sheet::lower;
    case Sheet::lower: return Sheet::upper;
    default: return Sheet::principal;
  }
}

cplx sheet_sqrt(cplx w, Sheet s) {
  constexpr double q = std::numbers::pi / 4.0;
  switch (s) {
    case Sheet::upper: return std::polar(1.0, q) * std::sqrt(w * std::polar(1.0, -2.0 * q));
    case Sheet::lower: return std::polar(1.0, -q) * std::sqrt(w * std::polar(1.0, 2.0 * q));
    default: return std::sqrt(w);
  }
}

Partials::Partials(const Jet& jet) {
  std::array<double, Jet::kOrder + 1> fact{};
  fact[0] = 1.0;
  for (int k = 1; k <= Jet::kOrder; ++k) fact[k] = fact[k - 1] * k;
  for (int d = 0; d <= Jet::kOrder; ++d)
    for (int j = 0; j <= d; ++j)
      d_[Jet::index(d - j, j)] = jet.coeff(d - j, j).real() * fact[d - j] * fact[j];
}

FOracle::FOracle(std::string name, Domain domain, Expression expr)
    : name_(std::move(name)), domain_(domain), expr_(std::move(expr)) {}

Partials FOracle::partials(double u, double v, Sheet sheet) const {
  if (!domain_.contains(u, v)) throw DomainError(name_ + ": (u, v) outside the domain");
  return Partials(expr_(Jet::variable_u(u), Jet::variable_v(v), sheet));
}

double FOracle::value(double u, double v, Sheet sheet) const { return partials(u, v, sheet)(0, 0); }

double FOracle::pde_residual(double u, double v, Sheet sheet) const {
  const Partials p = partials(u, v, sheet);
  return p(0, 2) + u * p(2, 0);
}

namespace {

Jet sheet_sqrt(const Jet& w, Sheet s) { return sqrt_with_root(w, hodograph::sheet_sqrt(w.value(), s)); }

// e + D with D^2 = e^2 + u, through u / (D - e) when e + D cancels.
Jet root_sum(const Jet& e, const Jet& D, const Jet& u) {
  if (std::abs(e.value() + D.value()) < std::abs(D.value() - e.value())) return u / (D - e);
  return e + D;
}

}  // namespace

FOracle satsuma_yajima(double A0) {
  if (!(A0 > 0.0)) throw DomainError("satsuma_yajima: A0 must be positive");
  return FOracle("satsuma_yajima", Domain{}, [A0](const Jet& u, const Jet& v, Sheet s) {
    const Jet eta = -0.5 * v + Jet(cplx(0.0, A0));
    const Jet D = sheet_sqrt(u + eta * eta, s);
    return eta * D + u * log(root_sum(eta, D, u) / sqrt(u));
  });
}

FOracle symmetric_mu(double A0, double mu) {
  if (!(A0 > 0.0)) throw DomainError("symmetric_mu: A0 must be positive");
  if (!(mu >= 0.0)) throw DomainError("symmetric_mu: mu must be non-negative");
  const cplx M = std::sqrt(cplx(mu * mu / 4.0 - A0 * A0));
  return FOracle("symmetric_mu", Domain{}, [mu, M](const Jet& u, const Jet& v, Sheet s) {
    const Jet ep = -0.5 * v + Jet(M), em = -0.5 * v - Jet(M);
    const Jet Dp = sheet_sqrt(ep * ep + u, s);
    const Jet Dm = sheet_sqrt(em * em + u, opposite(s));
    return 0.5 * mu * v - 0.25 * (v - 2.0 * M) * Dp - 0.25 * (v + 2.0 * M) * Dm -
           0.5 * u * log(u) + 0.5 * u * (log(root_sum(ep, Dp, u)) + log(root_sum(em, Dm, u)));
  });
}

namespace {

Jet tvz_f1(const Jet& u, const Jet& v, const Jet& Q, const Jet& L) { return v - 0.5 * v * Q + u * L; }

}  // namespace

FOracle tvz_mu2() {
  return FOracle("tvz_mu2", Domain{}, [](const Jet& u, const Jet& v, Sheet) {
    const Jet Q = sqrt(0.25 * v * v + u);
    return tvz_f1(u, v, Q, log(root_sum(-0.5 * v, Q, u) / sqrt(u)));
  });
}

FOracle nonsymmetric(double alpha) {
  if (!(std::abs(alpha) < 0.25)) throw DomainError("nonsymmetric: need |alpha| < 1/4");
  return FOracle("nonsymmetric", Domain{}, [alpha](const Jet& u, const Jet& v, Sheet) {
    const Jet Q = sqrt(0.25 * v * v + u);
    const Jet L = log(root_sum(-0.5 * v, Q, u) / sqrt(u));
    const Jet f2 = 2.0 * u * Q - (2.0 / 3.0) * Q * Q * Q + u * v * L;
    return tvz_f1(u, v, Q, L) + alpha * f2;
  });
}

FOracle nls_hamiltonian() {
  return FOracle("nls_hamiltonian", Domain{}, [](const Jet& u, const Jet& v, Sheet) {
    return 0.5 * (u * v * v - u * u);
  });
}

FOracle toda_hamiltonian() {
  return FOracle("toda_hamiltonian", Domain{}, [](const Jet& u, const Jet& v, Sheet) {
    return -0.5 * v * v + u * (log(u) - 1.0);
  });
}

}  // namespace nlscrit::hodograph
