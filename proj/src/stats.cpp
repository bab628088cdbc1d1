#include "ggp/stats.hpp"

#include <algorithm>
#include <cmath>

#include "ggp/error.hpp"

namespace ggp {

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double gumbel_cdf(double x) { return std::exp(-std::exp(-x)); }

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw Error(ErrorCode::EmptyInput, "KS statistic of an empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptyInput, "KS statistic of an empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

double ks_lattice(const std::vector<double>& sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw Error(ErrorCode::EmptyInput, "KS statistic of an empty sample");
  std::vector<long long> k(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) k[i] = std::llround(sample[i]);
  std::sort(k.begin(), k.end());
  const double n = static_cast<double>(k.size());
  double d = 0.0;
  // Below the smallest value the empirical cdf is 0.
  d = std::max(d, cdf(k.front() - 0.5));
  for (std::size_t i = 0; i < k.size();) {
    std::size_t j = i;
    while (j < k.size() && k[j] == k[i]) ++j;
    d = std::max(d, std::abs(j / n - cdf(k[i] + 0.5)));
    // Integers strictly between observed values keep F_n flat.
    if (j < k.size() && k[j] > k[i] + 1) d = std::max(d, std::abs(j / n - cdf(k[j] - 0.5)));
    i = j;
  }
  return d;
}

SummaryStats summarize(const std::vector<double>& sample) {
  if (sample.empty()) throw Error(ErrorCode::EmptyInput, "summary of an empty sample");
  SummaryStats s;
  s.n = sample.size();
  const double n = static_cast<double>(s.n);
  double mean = 0.0;
  for (double x : sample) mean += x;
  mean /= n;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double x : sample) {
    const double e = x - mean;
    m2 += e * e;
    m3 += e * e * e;
    m4 += e * e * e * e;
  }
  s.mean = mean;
  if (s.n < 2) return s;
  s.variance = m2 / (n - 1.0);
  s.mean_ci95 = 1.96 * std::sqrt(s.variance / n);
  s.variance_se = s.variance * std::sqrt(2.0 / (n - 1.0));
  const double pop_var = m2 / n;
  if (pop_var > 0.0) {
    s.skewness = (m3 / n) / std::pow(pop_var, 1.5);
    s.excess_kurtosis = (m4 / n) / (pop_var * pop_var) - 3.0;
    const double sd = std::sqrt(s.variance);
    std::vector<double> z(sample);
    for (double& x : z) x = (x - mean) / sd;
    s.ks_normal = ks_statistic(std::move(z), standard_normal_cdf);
  }
  return s;
}

double median(std::vector<double> sample) {
  if (sample.empty()) throw Error(ErrorCode::EmptyInput, "median of an empty sample");
  const std::size_t m = sample.size() / 2;
  std::nth_element(sample.begin(), sample.begin() + m, sample.end());
  const double hi = sample[m];
  if (sample.size() % 2 == 1) return hi;
  const double lo = *std::max_element(sample.begin(), sample.begin() + m);
  return 0.5 * (lo + hi);
}

Interval bootstrap_median_ci(const std::vector<double>& sample, int resamples, RngStream& rng) {
  if (sample.empty()) throw Error(ErrorCode::EmptyInput, "bootstrap of an empty sample");
  if (resamples < 10) throw Error(ErrorCode::InvalidArgument, "need at least 10 bootstrap resamples");
  std::vector<double> meds(resamples);
  std::vector<double> buf(sample.size());
  const double n = static_cast<double>(sample.size());
  for (int b = 0; b < resamples; ++b) {
    for (double& x : buf) {
      auto idx = static_cast<std::size_t>(rng.uniform() * n);
      x = sample[std::min(idx, sample.size() - 1)];
    }
    meds[b] = median(buf);
  }
  std::sort(meds.begin(), meds.end());
  const auto at = [&](double q) {
    const double pos = q * (resamples - 1);
    const auto i = static_cast<std::size_t>(std::floor(pos));
    const double t = pos - i;
    return i + 1 < meds.size() ? (1 - t) * meds[i] + t * meds[i + 1] : meds[i];
  };
  return {at(0.025), at(0.975)};
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "linear fit needs matching samples of size >= 2");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::DegenerateInput, "linear fit needs distinct x values");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  const double sse = std::max(0.0, syy - f.slope * sxy);
  f.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  f.slope_se = x.size() > 2 ? std::sqrt(sse / (n - 2.0) / sxx) : 0.0;
  return f;
}

}  // namespace ggp
