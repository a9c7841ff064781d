#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

namespace nlscrit::cheb {

/// Chebyshev-Lobatto points cos(j pi / n), j = 0..n, mapped to [a, b].
/// Ordered from b down to a, as in the usual collocation convention.
std::vector<double> lobatto_points(int n, double a = -1.0, double b = 1.0);

/// Spectral differentiation matrix on lobatto_points(n, a, b).
Eigen::MatrixXd diff_matrix(int n, double a = -1.0, double b = 1.0);

/// Chebyshev coefficients c_0..c_n of the interpolant through values sampled
/// on lobatto_points(n).
std::vector<double> coefficients(std::span<const double> values);

/// Antiderivative of the interpolant, sampled on the same nodes, vanishing
/// at x = anchor.
std::vector<double> cumulative_integral(std::span<const double> values, double a,
                                        double b, double anchor);

/// Barycentric evaluator for data on lobatto_points(n, a, b).
class Interpolant {
 public:
  Interpolant(std::vector<double> nodes, std::vector<double> values);

  double operator()(double x) const;
  double lower() const { return nodes_.back(); }
  double upper() const { return nodes_.front(); }

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
  std::vector<double> weights_;
};

/// Barycentric interpolation of complex data on Chebyshev nodes; used by the
/// sector solver to sample its field off-grid.
std::complex<double> interpolate(std::span<const double> nodes,
                                 std::span<const std::complex<double>> values, double x);

}  // namespace nlscrit::cheb
