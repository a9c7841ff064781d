#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <optional>

#include "nlscrit/errors.hpp"
#include "nlscrit/painleve.hpp"

namespace nlscrit::painleve {

ComplexLine ComplexLine::make(cplx a, cplx b, double y0, int n_points) {
  const double s = std::abs(a);
  if (s == 0.0) throw DomainError("ComplexLine: direction must be nonzero");
  if (!(y0 > 0.0)) throw DomainError("ComplexLine: half_length must be positive");
  if (n_points < 16) throw DomainError("ComplexLine: need at least 16 points");
  a /= s;
  if (a.imag() < 0.0 || (a.imag() == 0.0 && a.real() < 0.0)) a = -a;
  ComplexLine line;
  line.direction = a;
  line.offset = b;
  line.half_length = y0 * s;
  line.n_points = n_points;
  return line;
}

bool ComplexLine::endpoints_valid(double min_radius) const {
  for (double y : {-half_length, half_length}) {
    const cplx z = zeta(y);
    if (std::abs(z) < min_radius) return false;
    if (std::abs(std::arg(z)) >= kSectorAngle) return false;
  }
  return true;
}

namespace {

using SpMat = Eigen::SparseMatrix<cplx>;
using Vec = Eigen::VectorXcd;

// Residual of the P-I system on a uniform mesh: Omega' = P, P' = a^2 (6 Omega^2 - zeta).
struct Collocation {
  cplx a2;
  cplx a;
  cplx b;
  double y0;
  int n;
  double h;
  cplx left_bc;
  cplx right_bc;

  double node(int i) const { return -y0 + h * i; }
  cplx zeta(double y) const { return a * y + b; }

  void rhs(double y, cplx om, cplx p, cplx& f0, cplx& f1) const {
    f0 = p;
    f1 = a2 * (6.0 * om * om - zeta(y));
  }

  Vec residual(const Vec& u) const {
    Vec r(2 * n);
    r[0] = u[0] - left_bc;
    for (int i = 0; i + 1 < n; ++i) {
      const double yi = node(i), yj = node(i + 1), ym = yi + 0.5 * h;
      const cplx oi = u[2 * i], pi = u[2 * i + 1];
      const cplx oj = u[2 * i + 2], pj = u[2 * i + 3];
      cplx fi0, fi1, fj0, fj1, fm0, fm1;
      rhs(yi, oi, pi, fi0, fi1);
      rhs(yj, oj, pj, fj0, fj1);
      const cplx om = 0.5 * (oi + oj) - h / 8.0 * (fj0 - fi0);
      const cplx pm = 0.5 * (pi + pj) - h / 8.0 * (fj1 - fi1);
      rhs(ym, om, pm, fm0, fm1);
      r[1 + 2 * i] = oj - oi - h / 6.0 * (fi0 + 4.0 * fm0 + fj0);
      r[2 + 2 * i] = pj - pi - h / 6.0 * (fi1 + 4.0 * fm1 + fj1);
    }
    r[2 * n - 1] = u[2 * (n - 1)] - right_bc;
    return r;
  }

  SpMat jacobian(const Vec& u) const {
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(static_cast<std::size_t>(8) * n + 2);
    trip.emplace_back(0, 0, 1.0);
    for (int i = 0; i + 1 < n; ++i) {
      const cplx oi = u[2 * i], pi = u[2 * i + 1];
      const cplx oj = u[2 * i + 2], pj = u[2 * i + 3];
      cplx fi0, fi1, fj0, fj1;
      rhs(node(i), oi, pi, fi0, fi1);
      rhs(node(i + 1), oj, pj, fj0, fj1);
      const cplx om = 0.5 * (oi + oj) - h / 8.0 * (fj0 - fi0);
      // J(Omega) = [[0, 1], [c, 0]], c = 12 a^2 Omega
      const cplx ci = 12.0 * a2 * oi, cj = 12.0 * a2 * oj, cm = 12.0 * a2 * om;
      // dYm/dYi = I/2 + h/8 Ji ; dYm/dYj = I/2 - h/8 Jj
      const Eigen::Matrix2cd I = Eigen::Matrix2cd::Identity();
      Eigen::Matrix2cd Ji, Jj, Jm;
      Ji << 0.0, 1.0, ci, 0.0;
      Jj << 0.0, 1.0, cj, 0.0;
      Jm << 0.0, 1.0, cm, 0.0;
      const Eigen::Matrix2cd dmi = 0.5 * I + h / 8.0 * Ji;
      const Eigen::Matrix2cd dmj = 0.5 * I - h / 8.0 * Jj;
      const Eigen::Matrix2cd Ai = -I - h / 6.0 * (Ji + 4.0 * Jm * dmi);
      const Eigen::Matrix2cd Aj = I - h / 6.0 * (Jj + 4.0 * Jm * dmj);
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          trip.emplace_back(1 + 2 * i + r, 2 * i + c, Ai(r, c));
          trip.emplace_back(1 + 2 * i + r, 2 * i + 2 + c, Aj(r, c));
        }
      }
    }
    trip.emplace_back(2 * n - 1, 2 * (n - 1), 1.0);
    SpMat m(2 * n, 2 * n);
    m.setFromTriplets(trip.begin(), trip.end());
    m.makeCompressed();
    return m;
  }
};

struct NewtonResult {
  Vec u;
  bool converged;
  double residual;
};

NewtonResult newton(const Collocation& col, Vec u, int max_iter) {
  Eigen::SparseLU<SpMat> lu;
  bool analyzed = false;
  Vec r = col.residual(u);
  double rn = r.cwiseAbs().maxCoeff();
  for (int it = 0; it < max_iter; ++it) {
    SpMat jac = col.jacobian(u);
    if (!analyzed) {
      lu.analyzePattern(jac);
      analyzed = true;
    }
    lu.factorize(jac);
    if (lu.info() != Eigen::Success) return {u, false, rn};
    const Vec delta = lu.solve(-r);
    if (!delta.allFinite()) return {u, false, rn};

    double lambda = 1.0;
    Vec trial;
    Vec rt;
    double rtn = 0.0;
    for (int k = 0; k < 12; ++k) {
      trial = u + lambda * delta;
      rt = col.residual(trial);
      rtn = rt.cwiseAbs().maxCoeff();
      if (std::isfinite(rtn) && rtn < (1.0 - 0.25 * lambda) * rn) break;
      lambda *= 0.5;
    }
    if (!std::isfinite(rtn)) return {u, false, rn};
    const double step = lambda * delta.cwiseAbs().maxCoeff();
    const double scale = 1.0 + u.cwiseAbs().maxCoeff();
    u = std::move(trial);
    r = std::move(rt);
    rn = rtn;
    if (lambda == 1.0 && step <= 1e-13 * scale) return {u, true, rn};
    if (rn <= 1e-14 * scale && step <= 1e-10 * scale) return {u, true, rn};
  }
  return {u, false, rn};
}

Vec asymptotic_guess(const Collocation& col) {
  Vec u(2 * col.n);
  for (int i = 0; i < col.n; ++i) u[2 * i] = -leading_sqrt(col.zeta(col.node(i)));
  for (int i = 0; i < col.n; ++i) {
    const int l = std::max(i - 1, 0), r = std::min(i + 1, col.n - 1);
    u[2 * i + 1] = (u[2 * r] - u[2 * l]) / (col.h * (r - l));
  }
  return u;
}

cplx hermite(double t, double h, cplx o0, cplx p0, cplx o1, cplx p1) {
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * o0 + (t3 - 2 * t2 + t) * h * p0 + (-2 * t3 + 3 * t2) * o1 +
         (t3 - t2) * h * p1;
}

cplx hermite_slope(double t, double h, cplx o0, cplx p0, cplx o1, cplx p1) {
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * o0 + (6 * t - 6 * t2) * o1) / h + (3 * t2 - 4 * t + 1) * p0 +
         (3 * t2 - 2 * t) * p1;
}

// Samples a previous solution (or the asymptotic guess outside it) on a new mesh.
Vec transfer(const Collocation& col, const Collocation* prev, const Vec* prev_u) {
  Vec u = asymptotic_guess(col);
  if (prev == nullptr) return u;
  for (int i = 0; i < col.n; ++i) {
    const double y = col.node(i);
    if (y < -prev->y0 || y > prev->y0) continue;
    int k = static_cast<int>(std::floor((y + prev->y0) / prev->h));
    k = std::clamp(k, 0, prev->n - 2);
    const double t = (y - prev->node(k)) / prev->h;
    const Vec& pu = *prev_u;
    u[2 * i] = hermite(t, prev->h, pu[2 * k], pu[2 * k + 1], pu[2 * k + 2], pu[2 * k + 3]);
    u[2 * i + 1] =
        hermite_slope(t, prev->h, pu[2 * k], pu[2 * k + 1], pu[2 * k + 2], pu[2 * k + 3]);
  }
  return u;
}

Collocation make_collocation(const ComplexLine& line, double y0, int n,
                             const AsymptoticSeries& series, const SeriesOptions& sopts) {
  Collocation col;
  col.a = line.direction;
  col.a2 = line.direction * line.direction;
  col.b = line.offset;
  col.y0 = y0;
  col.n = n;
  col.h = 2.0 * y0 / (n - 1);
  col.left_bc = evaluate_series(series, col.zeta(-y0), sopts).value;
  col.right_bc = evaluate_series(series, col.zeta(y0), sopts).value;
  return col;
}

std::optional<Vec> continuation_solve(const ComplexLine& line, const AsymptoticSeries& series,
                                      const LineSolveOptions& opts, int n_final) {
  SeriesOptions relaxed = opts.series;
  relaxed.min_radius = 0.0;
  const double density = (n_final - 1) / (2.0 * line.half_length);
  std::optional<Collocation> prev;
  Vec prev_u;
  double y0 = std::min(3.0, line.half_length);
  while (true) {
    const bool last = y0 >= line.half_length;
    const int n = std::max(64, static_cast<int>(std::ceil(2.0 * y0 * density)) + 1);
    Collocation col = make_collocation(line, y0, last ? n_final : n, series,
                                       last ? opts.series : relaxed);
    Vec guess = transfer(col, prev ? &*prev : nullptr, prev ? &prev_u : nullptr);
    NewtonResult res = newton(col, guess, opts.max_newton);
    if (!res.converged) return std::nullopt;
    if (last) return res.u;
    prev = col;
    prev_u = std::move(res.u);
    y0 = std::min(1.5 * y0, line.half_length);
  }
}

std::vector<double> pi_residual(const ComplexLine& line, const std::vector<double>& y,
                                const std::vector<cplx>& om, const std::vector<cplx>& p) {
  const int n = static_cast<int>(y.size());
  const double h = y[1] - y[0];
  const cplx a2 = line.direction * line.direction;
  std::vector<double> res(n);
  for (int i = 0; i < n; ++i) {
    cplx d;
    if (i >= 2 && i <= n - 3) {
      d = (p[i - 2] - 8.0 * p[i - 1] + 8.0 * p[i + 1] - p[i + 2]) / (12.0 * h);
    } else if (i == 0) {
      d = (-25.0 * p[0] + 48.0 * p[1] - 36.0 * p[2] + 16.0 * p[3] - 3.0 * p[4]) / (12.0 * h);
    } else if (i == 1) {
      d = (-3.0 * p[0] - 10.0 * p[1] + 18.0 * p[2] - 6.0 * p[3] + p[4]) / (12.0 * h);
    } else if (i == n - 2) {
      d = (3.0 * p[n - 1] + 10.0 * p[n - 2] - 18.0 * p[n - 3] + 6.0 * p[n - 4] - p[n - 5]) /
          (12.0 * h);
    } else {
      d = (25.0 * p[n - 1] - 48.0 * p[n - 2] + 36.0 * p[n - 3] - 16.0 * p[n - 4] +
           3.0 * p[n - 5]) /
          (12.0 * h);
    }
    res[i] = std::abs(d / a2 - 6.0 * om[i] * om[i] + line.zeta(y[i]));
  }
  return res;
}

}  // namespace

TritronqueeLine::TritronqueeLine(ComplexLine line, std::vector<double> y,
                                 std::vector<cplx> omega, std::vector<cplx> omega_y)
    : line_(line), y_(std::move(y)), omega_(std::move(omega)), omega_y_(std::move(omega_y)) {
  residual_ = pi_residual(line_, y_, omega_, omega_y_);
}

double TritronqueeLine::residual_norm() const {
  return *std::max_element(residual_.begin(), residual_.end());
}

double TritronqueeLine::interior_residual(int skip) const {
  double m = 0.0;
  for (std::size_t i = skip; i + skip < residual_.size(); ++i) m = std::max(m, residual_[i]);
  return m;
}

cplx TritronqueeLine::evaluate(double y) const {
  const double y0 = line_.half_length;
  if (!(y >= -y0 && y <= y0)) throw DomainError("TritronqueeLine: y outside [-y0, y0]");
  const int n = static_cast<int>(y_.size());
  const double h = y_[1] - y_[0];
  int k = static_cast<int>(std::floor((y + y0) / h));
  k = std::clamp(k, 0, n - 2);
  if (y == y_[k]) return omega_[k];
  if (y == y_[k + 1]) return omega_[k + 1];
  const double t = (y - y_[k]) / h;
  return hermite(t, h, omega_[k], omega_y_[k], omega_[k + 1], omega_y_[k + 1]);
}

cplx TritronqueeLine::evaluate_zeta(cplx zeta) const {
  const cplx rel = std::conj(line_.direction) * (zeta - line_.offset);
  if (std::abs(rel.imag()) > 1e-9 * (1.0 + std::abs(rel)))
    throw DomainError("TritronqueeLine: zeta is not on the line");
  return evaluate(rel.real());
}

void TritronqueeLine::write_csv(std::ostream& os) const {
  os << "y,re_zeta,im_zeta,re_omega,im_omega,residual\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < y_.size(); ++i) {
    const cplx z = line_.zeta(y_[i]);
    os << y_[i] << ',' << z.real() << ',' << z.imag() << ',' << omega_[i].real() << ','
       << omega_[i].imag() << ',' << residual_[i] << '\n';
  }
}

TritronqueeLine solve_line(const ComplexLine& line, const LineSolveOptions& opts) {
  if (!(opts.tol > 0.0)) throw DomainError("solve_line: tol must be positive");
  if (!line.endpoints_valid(opts.series.min_radius))
    throw DomainError("solve_line: line endpoints outside the asymptotic region");
  const AsymptoticSeries series = series_coefficients(opts.series_terms);

  int n = line.n_points;
  Collocation col = make_collocation(line, line.half_length, n, series, opts.series);
  NewtonResult res = newton(col, asymptotic_guess(col), opts.max_newton);
  if (!res.converged) {
    auto cont = continuation_solve(line, series, opts, n);
    if (!cont)
      throw ConvergenceError("solve_line: Newton failed (line near a pole or poor guess)",
                             res.residual);
    res.u = *cont;
  }

  auto unpack = [&line](const Collocation& c, const Vec& u) {
    std::vector<double> y(c.n);
    std::vector<cplx> om(c.n), p(c.n);
    for (int i = 0; i < c.n; ++i) {
      y[i] = c.node(i);
      om[i] = u[2 * i];
      p[i] = u[2 * i + 1];
    }
    return TritronqueeLine(ComplexLine{line.direction, line.offset, line.half_length, c.n},
                           std::move(y), std::move(om), std::move(p));
  };

  TritronqueeLine sol = unpack(col, res.u);
  while (opts.refine && sol.interior_residual() > opts.tol && 2 * n - 1 <= opts.max_points) {
    Collocation fine = make_collocation(line, line.half_length, 2 * n - 1, series, opts.series);
    NewtonResult fr = newton(fine, transfer(fine, &col, &res.u), opts.max_newton);
    if (!fr.converged) throw ConvergenceError("solve_line: refinement failed", fr.residual);
    n = 2 * n - 1;
    col = fine;
    res = std::move(fr);
    sol = unpack(col, res.u);
  }
  return sol;
}

}  // namespace nlscrit::painleve
