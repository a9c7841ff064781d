#pragma once

#include <span>
#include <vector>

namespace nlscrit::harness {

/// error ~ C eps^a, fitted by least squares on (ln eps, ln error).
struct ScalingFit {
  double exponent;
  double intercept;    ///< ln C
  double correlation;  ///< Pearson r of the log-log data
  double std_error;    ///< standard error of the slope
  std::vector<double> epsilons;
  std::vector<double> errors;
};

/// Throws DomainError for non-positive inputs, mismatched lengths or fewer than 3 points.
ScalingFit fit_scaling(std::span<const double> epsilons, std::span<const double> errors);

}  // namespace nlscrit::harness
