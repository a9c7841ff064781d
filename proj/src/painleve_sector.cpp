#include <Eigen/Dense>
#include <cmath>

#include "nlscrit/chebyshev.hpp"
#include "nlscrit/errors.hpp"
#include "nlscrit/painleve.hpp"

namespace nlscrit::painleve {

cplx SectorSolution::evaluate(double rho, double ph) const {
  if (rho < r.back() || rho > r.front() || ph < phi.back() || ph > phi.front())
    throw DomainError("SectorSolution: point outside the sector");
  std::vector<cplx> radial(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::span<const cplx> row(omega.data() + i * phi.size(), phi.size());
    radial[i] = cheb::interpolate(phi, row, ph);
  }
  return cheb::interpolate(r, radial, rho);
}

SectorSolution solve_sector(const SectorOptions& opts) {
  if (!(opts.radius > 10.0)) throw DomainError("solve_sector: radius must exceed 10");
  if (!(opts.phi_max > 0.0 && opts.phi_max < kSectorAngle))
    throw DomainError("solve_sector: phi_max must lie in (0, 4pi/5)");
  const int nr = opts.n_radial, na = opts.n_angular;
  if (nr < 4 || na < 4) throw DomainError("solve_sector: grid too small");

  const double R = opts.radius, P = opts.phi_max;
  SectorSolution sol;
  sol.r = cheb::lobatto_points(nr, 0.0, R);
  sol.phi = cheb::lobatto_points(na, -P, P);
  const Eigen::MatrixXd Dr = cheb::diff_matrix(nr, 0.0, R);
  const Eigen::MatrixXd Dp = cheb::diff_matrix(na, -P, P);
  const Eigen::MatrixXd Dr2 = Dr * Dr;
  const Eigen::MatrixXd Dp2 = Dp * Dp;

  // The ray arg zeta = P is the half y > 0 of the line zeta = e^{iP} y; the
  // ray arg zeta = -P follows by conjugation.
  const TritronqueeLine edge =
      solve_line(ComplexLine::make(std::polar(1.0, P), 0.0, 2.0 * R, 8001), opts.line);
  const AsymptoticSeries series = series_coefficients(opts.line.series_terms);
  sol.boundary_provenance = {"rho=R: optimally truncated series",
                             "phi=+phi_max: line solve along e^{i phi_max} y",
                             "phi=-phi_max: conjugate of the +phi_max line solve",
                             "rho=0: line solve value at zeta=0"};

  const double corner =
      std::abs(edge.evaluate(R) - evaluate_series(series, std::polar(R, P), opts.line.series).value);
  sol.corner_mismatch = corner;
  if (corner > opts.corner_tol)
    throw DomainError("solve_sector: corner mismatch between series and line data");

  const int mr = nr + 1, ma = na + 1, M = mr * ma;
  auto idx = [ma](int i, int j) { return i * ma + j; };
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M, M);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(M);
  const cplx origin = edge.evaluate(0.0);

  for (int i = 0; i < mr; ++i) {
    const double rho = sol.r[i];
    for (int j = 0; j < ma; ++j) {
      const int row = idx(i, j);
      const double ph = sol.phi[j];
      if (i == 0) {
        A(row, row) = 1.0;
        rhs[row] = evaluate_series(series, std::polar(R, ph), opts.line.series).value;
      } else if (i == nr) {
        A(row, row) = 1.0;
        rhs[row] = origin;
      } else if (j == 0) {
        A(row, row) = 1.0;
        rhs[row] = edge.evaluate(rho);
      } else if (j == na) {
        A(row, row) = 1.0;
        rhs[row] = std::conj(edge.evaluate(rho));
      } else {
        for (int k = 0; k < mr; ++k)
          A(row, idx(k, j)) += rho * rho * Dr2(i, k) + rho * Dr(i, k);
        for (int l = 0; l < ma; ++l) A(row, idx(i, l)) += Dp2(j, l);
      }
    }
  }

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const Eigen::VectorXd re = lu.solve(Eigen::VectorXd(rhs.real()));
  const Eigen::VectorXd im = lu.solve(Eigen::VectorXd(rhs.imag()));
  sol.omega.resize(M);
  for (int k = 0; k < M; ++k) sol.omega[k] = cplx(re[k], im[k]);

  for (const cplx& w : sol.omega) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
      throw ConvergenceError("solve_sector: non-finite field", 0.0);
    sol.max_abs = std::max(sol.max_abs, std::abs(w));
  }

  // Along a ray, d/drho = e^{i phi} d/dzeta.
  for (int j = 1; j < na; ++j) {
    Eigen::VectorXcd col(mr);
    for (int i = 0; i < mr; ++i) col[i] = sol.at(i, j);
    const Eigen::VectorXcd d2 = Dr2.cast<cplx>() * col;
    for (int i = 1; i < nr; ++i) {
      const cplx z = std::polar(sol.r[i], sol.phi[j]);
      const cplx res = std::polar(1.0, -2.0 * sol.phi[j]) * d2[i] - 6.0 * col[i] * col[i] + z;
      sol.pi_residual = std::max(sol.pi_residual, std::abs(res));
    }
  }
  return sol;
}

}  // namespace nlscrit::painleve
