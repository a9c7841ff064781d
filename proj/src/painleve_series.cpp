#include <cmath>
#include <limits>

#include "nlscrit/errors.hpp"
#include "nlscrit/painleve.hpp"

namespace nlscrit::painleve {

AsymptoticSeries series_coefficients(int K) {
  if (K < 0) throw DomainError("series_coefficients: K must be non-negative");
  std::vector<double> a(K + 1);
  a[0] = 1.0;
  const double scale = 1.0 / (8.0 * std::sqrt(6.0));
  for (int k = 0; k < K; ++k) {
    double conv = 0.0;
    for (int m = 1; m <= k; ++m) conv += a[m] * a[k + 1 - m];
    a[k + 1] = (25.0 * k * k - 1.0) * scale * a[k] - 0.5 * conv;
  }
  return {std::move(a)};
}

cplx leading_sqrt(cplx zeta) { return std::sqrt(zeta / 6.0); }

SeriesValue evaluate_series(const AsymptoticSeries& series, cplx zeta,
                            const SeriesOptions& opts) {
  const double r = std::abs(zeta);
  if (r < opts.min_radius)
    throw DomainError("evaluate_series: |zeta| below the asymptotic radius");
  if (std::abs(std::arg(zeta)) >= kSectorAngle)
    throw DomainError("evaluate_series: zeta outside |arg zeta| < 4pi/5");

  const auto& a = series.coefficients;
  const int K = series.capacity();
  const cplx root = std::sqrt(zeta);
  // The recurrence generates the coefficients of the expansion in -zeta^{-5/2}.
  const cplx step = -1.0 / std::pow(root, 5);

  cplx sum = a[0];
  cplx dsum = 0.5 * a[0];  // sum of a_k (1/2 - 5k/2) zeta^{-5k/2}
  cplx power = 1.0;
  double prev = std::abs(a[0]);
  int kept = 0;
  double omitted = 0.0;
  for (int k = 1; k <= K; ++k) {
    power *= step;
    const cplx term = a[k] * power;
    const double mag = std::abs(term);
    omitted = mag;
    if (mag > prev) break;
    if (mag < std::numeric_limits<double>::epsilon() * std::abs(sum)) break;
    sum += term;
    dsum += (0.5 - 2.5 * k) * term;
    prev = mag;
    kept = k;
  }
  const double inv6 = 1.0 / std::sqrt(6.0);
  SeriesValue out;
  out.value = -root * inv6 * sum;
  out.derivative = -inv6 * dsum / root;
  out.truncation = kept;
  out.omitted = omitted * std::abs(root) * inv6;
  return out;
}

}  // namespace nlscrit::painleve
