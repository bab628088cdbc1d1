#include "ggp/sampling.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <algorithm>
#include <cmath>
#include <limits>

#include "ggp/error.hpp"

namespace ggp {

namespace {

void check_shape_params(double alpha, double beta) {
  if (!(alpha > -1.0)) throw Error(ErrorCode::AlphaOutOfRange, "alpha must be > -1");
  if (!(beta >= 1.0)) throw Error(ErrorCode::BetaOutOfRange, "beta must be >= 1");
}

double radius_from_gamma(double g, double beta) { return std::pow(beta * g, 1.0 / beta); }

}  // namespace

void validate_window(const ScaledWindow& window) {
  if (!(window.spatial_radius > 0.0) || !std::isfinite(window.spatial_radius)) {
    throw Error(ErrorCode::InvalidArgument, "window spatial_radius must be > 0");
  }
  if (!std::isfinite(window.h_max)) throw Error(ErrorCode::InvalidArgument, "window h_max must be finite");
  if (!(window.h_min < window.h_max)) {
    throw Error(ErrorCode::InvalidArgument, "window h_min must be < h_max");
  }
}

double window_mass(int d, const ScaledWindow& window) {
  validate_window(window);
  const double spatial = unit_ball_volume(d - 1) * std::pow(window.spatial_radius, d - 1);
  const double lo = std::isinf(window.h_min) ? 0.0 : std::exp(window.h_min);
  return spatial * (std::exp(window.h_max) - lo);
}

double sample_radius(RngStream& rng, int d, double alpha, double beta) {
  const double shape = (d + alpha) / beta;
  // (beta G)^(1/beta) = exp((log beta + log G)/beta); log space keeps tiny shapes finite.
  return std::exp((std::log(beta) + rng.log_gamma_variate(shape)) / beta);
}

double radial_probability(int d, double alpha, double beta, double r_lo, double r_hi) {
  const double shape = (d + alpha) / beta;
  const double g_lo = std::pow(std::max(r_lo, 0.0), beta) / beta;
  const double q_lo = boost::math::gamma_q(shape, g_lo);
  const double q_hi =
      std::isinf(r_hi) ? 0.0 : boost::math::gamma_q(shape, std::pow(r_hi, beta) / beta);
  return q_lo - q_hi;
}

double sample_radius_between(RngStream& rng, int d, double alpha, double beta, double r_lo,
                             double r_hi) {
  if (!(r_lo >= 0.0) || !(r_hi > r_lo)) {
    throw Error(ErrorCode::InvalidArgument, "radial shell needs 0 <= r_lo < r_hi");
  }
  const double shape = (d + alpha) / beta;
  const double q_lo = boost::math::gamma_q(shape, std::pow(r_lo, beta) / beta);
  const double q_hi =
      std::isinf(r_hi) ? 0.0 : boost::math::gamma_q(shape, std::pow(r_hi, beta) / beta);
  // Work with upper-tail probabilities: the shells of interest sit far out.
  const double q = q_hi + rng.uniform() * (q_lo - q_hi);
  const double g = boost::math::gamma_q_inv(shape, q);
  return std::clamp(radius_from_gamma(g, beta), r_lo, r_hi);
}

void sample_direction(RngStream& rng, int d, double* out) {
  for (;;) {
    double norm2 = 0.0;
    for (int j = 0; j < d; ++j) {
      out[j] = rng.normal();
      norm2 += out[j] * out[j];
    }
    if (norm2 > 1e-300) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (int j = 0; j < d; ++j) out[j] *= inv;
      return;
    }
  }
}

std::vector<double> sample_direction(RngStream& rng, int d) {
  if (d < 1) throw Error(ErrorCode::DimensionTooSmall, "direction dimension must be >= 1");
  std::vector<double> u(d);
  sample_direction(rng, d, u.data());
  return u;
}

void sample_in_ball(RngStream& rng, int k, double radius, double* out) {
  if (k == 0) return;
  sample_direction(rng, k, out);
  const double r = radius * std::pow(rng.uniform(), 1.0 / k);
  for (int j = 0; j < k; ++j) out[j] *= r;
}

PointCloud sample_polytope_input(RngStream& rng, const ModelParams& params) {
  const int d = params.d;
  const auto n = rng.poisson(params.lambda);
  std::vector<double> coords(n * d);
  double* p = coords.data();
  for (std::uint64_t i = 0; i < n; ++i, p += d) {
    const double r = sample_radius(rng, d, params.alpha, params.beta);
    sample_direction(rng, d, p);
    for (int j = 0; j < d; ++j) p[j] *= r;
  }
  return PointCloud(d, std::move(coords));
}

PointCloud sample_polytope_shell(RngStream& rng, const ModelParams& params, double r_lo,
                                 double r_hi) {
  const int d = params.d;
  const double mass = params.lambda * radial_probability(d, params.alpha, params.beta, r_lo, r_hi);
  const auto n = rng.poisson(mass);
  std::vector<double> coords(n * d);
  double* p = coords.data();
  for (std::uint64_t i = 0; i < n; ++i, p += d) {
    const double r = sample_radius_between(rng, d, params.alpha, params.beta, r_lo, r_hi);
    sample_direction(rng, d, p);
    for (int j = 0; j < d; ++j) p[j] *= r;
  }
  return PointCloud(d, std::move(coords));
}

std::vector<ScaledPoint> sample_limit_process(RngStream& rng, int d, const ScaledWindow& window) {
  if (d < 2) throw Error(ErrorCode::DimensionTooSmall, "d must be >= 2");
  const double mass = window_mass(d, window);
  const auto n = rng.poisson(mass);
  // Height law on (h_min, h_max] has CDF proportional to e^h - e^(h_min).
  const double floor_ratio =
      std::isinf(window.h_min) ? 0.0 : std::exp(window.h_min - window.h_max);
  std::vector<ScaledPoint> out(n);
  for (auto& w : out) {
    w.v.resize(d - 1);
    sample_in_ball(rng, d - 1, window.spatial_radius, w.v.data());
    const double u = rng.uniform();
    w.h = window.h_max + std::log(floor_ratio + u * (1.0 - floor_ratio));
  }
  return out;
}

double gumbel_scale(long long n, double beta) {
  return std::pow(beta * std::log(static_cast<double>(n)), (beta - 1.0) / beta);
}

double gumbel_centering(long long n, double alpha, double beta) {
  check_shape_params(alpha, beta);
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
  const double c = normalization(1, alpha, beta).c_star;
  const double bl = beta * std::log(static_cast<double>(n));
  return std::pow(bl, 1.0 / beta) +
         (beta * std::log(c) - (beta - alpha - 1.0) * std::log(bl)) /
             (beta * std::pow(bl, (beta - 1.0) / beta));
}

double sample_standardized_max(RngStream& rng, long long n, double alpha, double beta) {
  const double a_n = gumbel_centering(n, alpha, beta);
  const double shape = (1.0 + alpha) / beta;
  const auto positives = rng.binomial(static_cast<std::uint64_t>(n), 0.5);
  double m = 0.0;
  const double log_u = std::log(rng.uniform());
  if (positives > 0) {
    // Largest of K iid |X|: upper-tail probability 1 - U^(1/K).
    const double q = -std::expm1(log_u / static_cast<double>(positives));
    m = radius_from_gamma(boost::math::gamma_q_inv(shape, q), beta);
  } else {
    // All draws negative: the maximum is minus the smallest |X|.
    const double p = -std::expm1(log_u / static_cast<double>(n));
    m = -radius_from_gamma(boost::math::gamma_p_inv(shape, p), beta);
  }
  return gumbel_scale(n, beta) * (m - a_n);
}

double sample_standardized_max_direct(RngStream& rng, long long n, double alpha, double beta) {
  const double a_n = gumbel_centering(n, alpha, beta);
  double m = -std::numeric_limits<double>::infinity();
  for (long long i = 0; i < n; ++i) {
    const double r = sample_radius(rng, 1, alpha, beta);
    const double x = rng.uniform() < 0.5 ? -r : r;
    m = std::max(m, x);
  }
  return gumbel_scale(n, beta) * (m - a_n);
}

}  // namespace ggp
