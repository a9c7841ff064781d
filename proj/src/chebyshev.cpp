#include "nlscrit/chebyshev.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace nlscrit::cheb {

std::vector<double> lobatto_points(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("lobatto_points: n must be >= 1");
  std::vector<double> x(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double t = std::cos(std::numbers::pi * j / n);
    x[j] = 0.5 * (a + b) + 0.5 * (b - a) * t;
  }
  return x;
}

Eigen::MatrixXd diff_matrix(int n, double a, double b) {
  std::vector<double> t(n + 1);
  for (int j = 0; j <= n; ++j) t[j] = std::cos(std::numbers::pi * j / n);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n + 1, n + 1);
  auto c = [n](int i) { return (i == 0 || i == n) ? 2.0 : 1.0; };
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      d(i, j) = c(i) / c(j) * sign / (t[i] - t[j]);
    }
  }
  // negative-sum trick keeps the diagonal accurate
  for (int i = 0; i <= n; ++i) d(i, i) = -d.row(i).sum();
  return d * (2.0 / (b - a));
}

std::vector<double> coefficients(std::span<const double> values) {
  const int n = static_cast<int>(values.size()) - 1;
  std::vector<double> c(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double w = (j == 0 || j == n) ? 0.5 : 1.0;
      s += w * values[j] * std::cos(std::numbers::pi * j * k / n);
    }
    c[k] = 2.0 * s / n;
  }
  c[0] *= 0.5;
  c[n] *= 0.5;
  return c;
}

namespace {

double clenshaw(std::span<const double> c, double t) {
  double b1 = 0.0, b2 = 0.0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) {
    const double b0 = 2.0 * t * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + c[0];
}

}  // namespace

std::vector<double> cumulative_integral(std::span<const double> values, double a,
                                        double b, double anchor) {
  const int n = static_cast<int>(values.size()) - 1;
  const auto c = coefficients(values);
  // integrate the series term by term; one extra degree
  std::vector<double> ci(n + 2, 0.0);
  for (int k = 1; k <= n + 1; ++k) {
    const double prev = c[k - 1] * (k - 1 == 0 ? 2.0 : 1.0);
    const double next = (k + 1 <= n) ? c[k + 1] : 0.0;
    ci[k] = (prev - next) / (2.0 * k);
  }
  const double half = 0.5 * (b - a);
  for (double& v : ci) v *= half;
  const double t_anchor = (2.0 * anchor - a - b) / (b - a);
  ci[0] = -clenshaw(ci, t_anchor);
  std::vector<double> out(n + 1);
  for (int j = 0; j <= n; ++j) out[j] = clenshaw(ci, std::cos(std::numbers::pi * j / n));
  return out;
}

Interpolant::Interpolant(std::vector<double> nodes, std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values)) {
  const int n = static_cast<int>(nodes_.size()) - 1;
  weights_.resize(n + 1);
  for (int j = 0; j <= n; ++j) {
    weights_[j] = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j == n) weights_[j] *= 0.5;
  }
}

double Interpolant::operator()(double x) const {
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    const double d = x - nodes_[j];
    if (d == 0.0) return values_[j];
    const double w = weights_[j] / d;
    num += w * values_[j];
    den += w;
  }
  return num / den;
}

std::complex<double> interpolate(std::span<const double> nodes,
                                 std::span<const std::complex<double>> values, double x) {
  const int n = static_cast<int>(nodes.size()) - 1;
  std::complex<double> num = 0.0;
  double den = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double d = x - nodes[j];
    if (d == 0.0) return values[j];
    double w = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j == n) w *= 0.5;
    w /= d;
    num += w * values[j];
    den += w;
  }
  return num / den;
}

}  // namespace nlscrit::cheb
