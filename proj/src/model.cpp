#include "ggp/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ggp/error.hpp"

namespace ggp {

ModelParams validate_params(int d, double alpha, double beta, double lambda) {
  if (d < 2) {
    throw Error(ErrorCode::DimensionTooSmall, "d must be >= 2, got " + std::to_string(d));
  }
  if (!std::isfinite(alpha) || alpha <= -1.0) {
    throw Error(ErrorCode::AlphaOutOfRange, "alpha must be > -1");
  }
  if (!std::isfinite(beta) || beta < 1.0) {
    throw Error(ErrorCode::BetaOutOfRange, "beta must be >= 1");
  }
  if (!std::isfinite(lambda) || lambda <= 0.0) {
    throw Error(ErrorCode::NonpositiveIntensity, "lambda must be > 0");
  }
  return ModelParams{d, alpha, beta, lambda};
}

double unit_ball_volume(int j) {
  if (j < 0) throw Error(ErrorCode::InvalidArgument, "unit ball dimension must be >= 0");
  const double half = 0.5 * j;
  return std::exp(half * std::log(std::numbers::pi) - std::lgamma(half + 1.0));
}

double unit_sphere_area(int m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "sphere ambient dimension must be >= 1");
  const double half = 0.5 * m;
  return 2.0 * std::exp(half * std::log(std::numbers::pi) - std::lgamma(half));
}

NormalizationConstants normalization(int d, double alpha, double beta) {
  if (d < 1) throw Error(ErrorCode::DimensionTooSmall, "d must be >= 1");
  if (!(alpha > -1.0)) throw Error(ErrorCode::AlphaOutOfRange, "alpha must be > -1");
  if (!(beta >= 1.0)) throw Error(ErrorCode::BetaOutOfRange, "beta must be >= 1");

  NormalizationConstants out;
  // int_0^inf r^(k) e^(-r^beta/beta) dr = beta^((k+1)/beta - 1) Gamma((k+1)/beta)
  const double shape = (d + alpha) / beta;
  const double log_radial = (shape - 1.0) * std::log(beta) + std::lgamma(shape);
  const double log_z = std::log(unit_sphere_area(d)) + log_radial;
  out.z_total = std::exp(log_z);
  out.c_star = std::exp(-log_z / d);
  out.c_closed_form = std::exp(((beta - alpha - 1.0) / beta) * std::log(beta) - std::log(2.0) -
                         std::lgamma((alpha + 1.0) / beta));
  out.constants_agree = std::abs(out.c_star - out.c_closed_form) <= 1e-12 * out.c_star;
  out.kappa.resize(d + 1);
  for (int j = 0; j <= d; ++j) out.kappa[j] = unit_ball_volume(j);
  return out;
}

NormalizationConstants normalization(const ModelParams& params) {
  return normalization(params.d, params.alpha, params.beta);
}

double critical_radius(const ModelParams& params, ConstantMode mode) {
  const auto norm = normalization(params);
  const double c = mode == ConstantMode::closed_form ? norm.c_closed_form : norm.c_star;
  const double beta = params.beta;
  const double beta_log_lambda = beta * std::log(params.lambda);
  if (!(beta_log_lambda > 0.0)) {
    throw Error(ErrorCode::IntensityTooSmall, "beta log(lambda) must be positive");
  }
  const double e = beta * (params.d + 1) - 2.0 * params.d - 2.0 * params.alpha;
  // (E/2) log(c^(-2 beta d / E) beta log lambda) expanded so that E = 0 is harmless.
  const double bracket =
      beta_log_lambda + beta * params.d * std::log(c) - 0.5 * e * std::log(beta_log_lambda);
  if (!(bracket > 0.0)) {
    throw Error(ErrorCode::IntensityTooSmall, "critical radius bracket is non-positive");
  }
  const double r = std::pow(bracket, 1.0 / beta);
  if (r < 1.0) throw Error(ErrorCode::IntensityTooSmall, "critical radius below 1");
  return r;
}

double intensity_prefactor_exponent(const ModelParams& params) {
  const double e = params.beta * (params.d + 1) - 2.0 * params.d - 2.0 * params.alpha;
  return e / (2.0 * params.beta);
}

double log_intensity_at_radius(const ModelParams& params, double r) {
  const auto norm = normalization(params);
  return std::log(params.lambda) + params.d * std::log(norm.c_star) + params.alpha * std::log(r) -
         std::pow(r, params.beta) / params.beta;
}

}  // namespace ggp
