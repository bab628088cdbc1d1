#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ggp/error.hpp"
#include "ggp/rng.hpp"
#include "ggp/stats.hpp"

using namespace ggp;

TEST_CASE("ks statistic of a uniform grid") {
  std::vector<double> x;
  const int n = 100;
  for (int i = 0; i < n; ++i) x.push_back((i + 0.5) / n);
  const double ks = ks_statistic(x, [](double t) { return std::clamp(t, 0.0, 1.0); });
  CHECK(ks == doctest::Approx(0.5 / n));
  CHECK_THROWS_AS(ks_statistic({}, gumbel_cdf), Error);
  CHECK(ks_statistic(std::vector<double>(50, 0.0), standard_normal_cdf) >= 0.5);
}

TEST_CASE("ks of 1e4 gumbel draws") {
  RngStream rng(19, 0);
  std::vector<double> x(10000);
  for (auto& v : x) v = -std::log(rng.exponential());
  CHECK(ks_statistic(x, gumbel_cdf) < 0.02);
}

TEST_CASE("ks of normal samples respects the DKW bound") {
  RngStream rng(7, 0);
  std::vector<double> x(1000000);
  for (auto& v : x) v = rng.normal();
  // DKW: P(ks > eps) <= 2 exp(-2 n eps^2); eps = 0.003 gives < 1e-7.
  CHECK(ks_statistic(x, standard_normal_cdf) < 0.003);
  const auto st = summarize(x);
  CHECK(std::abs(st.mean) < 0.004);
  CHECK(std::abs(st.variance - 1.0) < 0.006);
  CHECK(std::abs(st.skewness) < 0.01);
  CHECK(std::abs(st.excess_kurtosis) < 0.04);
  CHECK(st.ks_normal < 0.003);
}

TEST_CASE("two-sample ks") {
  CHECK(ks_two_sample({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(ks_two_sample({0, 0, 0}, {1, 1}) == 1.0);
  CHECK(ks_two_sample({1, 2}, {2, 3}) == doctest::Approx(0.5));
}

TEST_CASE("lattice ks removes the discreteness bias") {
  RngStream rng(3, 0);
  std::vector<double> x(20000);
  for (auto& v : x) v = static_cast<double>(rng.poisson(400.0));
  const auto st = summarize(x);
  const double sd = std::sqrt(st.variance);
  auto cdf = [&](double t) { return standard_normal_cdf((t - st.mean) / sd); };
  const double raw = ks_statistic(x, cdf);
  const double lat = ks_lattice(x, cdf);
  CHECK(lat < raw);
  CHECK(lat < 0.02);
}

TEST_CASE("summary of a constant sample") {
  const auto st = summarize(std::vector<double>(10, 3.0));
  CHECK(st.mean == 3.0);
  CHECK(st.variance == 0.0);
  CHECK(st.skewness == 0.0);
  CHECK(st.mean_ci95 == 0.0);
  const auto one = summarize({5.0});
  CHECK(one.n == 1);
  CHECK(one.variance == 0.0);
}

TEST_CASE("cdfs") {
  CHECK(standard_normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(standard_normal_cdf(1.96) == doctest::Approx(0.9750021).epsilon(1e-6));
  CHECK(gumbel_cdf(0.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(gumbel_cdf(-50.0) == 0.0);
}

TEST_CASE("median and bootstrap interval") {
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 2, 3}) == 2.5);
  RngStream rng(11, 0);
  std::vector<double> x(2000);
  for (auto& v : x) v = rng.exponential();
  RngStream boot(11, 1);
  const auto ci = bootstrap_median_ci(x, 1000, boot);
  CHECK(ci.lo < median(x));
  CHECK(ci.hi > median(x));
  CHECK(ci.lo < std::log(2.0));
  CHECK(ci.hi > std::log(2.0));
  CHECK(ci.hi - ci.lo < 0.2);
  CHECK(Interval{0, 1}.overlaps({0.5, 2}));
  CHECK_FALSE(Interval{0, 1}.overlaps({1.5, 2}));
}

TEST_CASE("linear regression") {
  const auto f = linear_fit({0, 1, 2, 3}, {1, 3, 5, 7});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK(f.slope_se == doctest::Approx(0.0).epsilon(1e-12));
  const auto g = linear_fit({0, 1, 2, 3}, {0, 1, 1, 0});
  CHECK(g.slope == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(g.r2 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS(linear_fit({1, 1}, {0, 1}));
}
