#include "nlscrit/scaling.hpp"

#include <cmath>

#include "nlscrit/errors.hpp"

namespace nlscrit::harness {

ScalingFit fit_scaling(std::span<const double> epsilons, std::span<const double> errors) {
  if (epsilons.size() != errors.size()) throw DomainError("fit_scaling: length mismatch");
  const std::size_t n = epsilons.size();
  if (n < 3) throw DomainError("fit_scaling: need at least 3 points");
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(epsilons[i] > 0.0) || !(errors[i] > 0.0))
      throw DomainError("fit_scaling: inputs must be positive");
    x[i] = std::log(epsilons[i]);
    y[i] = std::log(errors[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_scaling: all epsilons equal");
  ScalingFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  fit.correlation = syy == 0.0 ? 1.0 : sxy / std::sqrt(sxx * syy);
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - fit.intercept - fit.exponent * x[i];
    ssr += e * e;
  }
  fit.std_error = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
  fit.epsilons.assign(epsilons.begin(), epsilons.end());
  fit.errors.assign(errors.begin(), errors.end());
  return fit;
}

}  // namespace nlscrit::harness
