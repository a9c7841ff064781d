#include <cmath>

#include "nlscrit/errors.hpp"
#include "nlscrit/hodograph.hpp"

namespace nlscrit::hodograph {

using cplx = std::complex<double>;

LocalCoords local_coords(const CriticalPoint& cp, double x, double s, double t) {
  const double tb = t - cp.t0;
  if (tb == 0.0) throw DomainError("local_coords: t equals t0");
  const double xb = x - cp.x0, sb = s - cp.s0;
  const double d = cp.r * tb * tb;
  return {2.0 * std::sqrt(cp.u0) * (xb - cp.v0 * tb) / d, 2.0 * (sb - cp.u0 * tb) / d, tb};
}

LocalRPQ local_R_P0_Q0(double X, double S, double psi) {
  const double c = std::cos(psi), s = std::sin(psi);
  if (c == 0.0) throw DomainError("local_R_P0_Q0: cos psi = 0");
  const double delta2 = (S + c) * (S + c) + (X + s) * (X + s);
  if (delta2 == 0.0) throw SingularError("local_R_P0_Q0: (S + cos psi, X + sin psi) = 0");
  const double inner = 1.0 + X * s + S * c + std::sqrt(delta2);
  const double R = (c > 0.0 ? 1.0 : -1.0) * std::sqrt(std::max(inner, 0.0));
  if (R == 0.0) throw SingularError("local_R_P0_Q0: input on the square-root cut");
  const double k = X * c - S * s;
  const double P0 = (R * c - k * s / R) / std::sqrt(2.0) - c;
  const double Q0 = (k * c / R + R * s) / std::sqrt(2.0) - s;
  return {R, P0, Q0};
}

UV local_solution(const CriticalPoint& cp, double x, double s, double t) {
  const LocalCoords lc = local_coords(cp, x, s, t);
  if (!(lc.T < 0.0)) throw DomainError("local_solution: requires t < t0");
  const LocalRPQ q = local_R_P0_Q0(lc.X, lc.S, cp.psi);
  return {cp.u0 + cp.r * lc.T * q.P0, cp.v0 + cp.r * lc.T * q.Q0 / std::sqrt(cp.u0)};
}

cplx quadratic_root_w(double X, double S, double psi, double tbar, double r) {
  if (!(tbar < 0.0)) throw DomainError("quadratic_root_w: requires tbar < 0");
  const cplx e = std::polar(1.0, psi);
  const cplx arg = 1.0 + std::conj(e) * cplx(S, X);
  if (arg == cplx(0.0)) throw SingularError("quadratic_root_w: branch point");
  return r * tbar * e * (std::sqrt(arg) - 1.0);
}

UV far_field(const CriticalPoint& cp, double x, double tbar, int side) {
  if (side != 1 && side != -1) throw DomainError("far_field: side must be +1 or -1");
  const double sp = std::sin(cp.psi), cs = std::cos(cp.psi);
  const double amp = std::sqrt(cp.r * std::abs(x));
  const double q = std::pow(cp.u0, 0.25);
  const double u = -amp * q * std::sqrt(1.0 - side * sp) + cp.u0 - cp.r * tbar * cs;
  const double v = -side * amp / q * (cs > 0.0 ? 1.0 : -1.0) * std::sqrt(1.0 + side * sp) + cp.v0 -
                   cp.r / std::sqrt(cp.u0) * tbar * sp;
  return {u, v};
}

double cusp_profile(const CriticalPoint& cp, double xhat) {
  const double sp = std::sin(cp.psi);
  return cp.u0 - std::sqrt(cp.r * std::abs(xhat)) * std::sqrt(xhat > 0.0 ? 1.0 - sp : 1.0 + sp);
}

std::array<std::pair<double, double>, 2> umbilic_stationary_points(double a_plus,
                                                                   double a_minus) {
  if (a_plus == 0.0 && a_minus == 0.0)
    throw SingularError("umbilic_stationary_points: degenerate (umbilic point)");
  const cplx c = std::sqrt(-2.0 * cplx(a_plus, a_minus));  // U - iV
  return {{{c.real(), -c.imag()}, {-c.real(), c.imag()}}};
}

}  // namespace nlscrit::hodograph
