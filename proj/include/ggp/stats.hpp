#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ggp/rng.hpp"

namespace ggp {

/// sup_x |F_n(x) - F(x)| for a continuous cdf. Throws EmptyInput.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov distance.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// KS distance for integer-valued data against a continuous cdf with continuity
/// correction: max over integers k of |F_n(k) - F(k + 1/2)|.
double ks_lattice(const std::vector<double>& sample, const std::function<double(double)>& cdf);

double standard_normal_cdf(double x);
double gumbel_cdf(double x);

struct SummaryStats {
  std::size_t n = 0;
  double mean = 0.0;
  /// Unbiased; 0 when n < 2.
  double variance = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  /// KS distance of the standardized sample against N(0, 1).
  double ks_normal = 0.0;
  /// 1.96 sqrt(variance / n).
  double mean_ci95 = 0.0;
  /// Normal-theory standard error of the variance, variance sqrt(2/(n-1)).
  double variance_se = 0.0;
};

SummaryStats summarize(const std::vector<double>& sample);

double median(std::vector<double> sample);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool overlaps(const Interval& o) const { return !(hi < o.lo || o.hi < lo); }
};

/// Percentile bootstrap 95% interval for the median.
Interval bootstrap_median_ci(const std::vector<double>& sample, int resamples, RngStream& rng);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double slope_se = 0.0;
};

/// Ordinary least squares y = intercept + slope x (at least 2 distinct x).
LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace ggp
