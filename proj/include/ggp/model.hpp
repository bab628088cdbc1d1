#pragma once

#include <vector>

namespace ggp {

/// One Generalized Gamma Polytope ensemble: points in R^d with density
/// proportional to |x|^alpha exp(-|x|^beta / beta), Poisson(lambda) many.
struct ModelParams {
  int d = 2;
  double alpha = 0.0;
  double beta = 2.0;
  double lambda = 1.0;
};

/// Rejects d < 2, alpha <= -1, beta < 1, lambda <= 0 (and non-finite values)
/// with an Error naming the violated constraint.
ModelParams validate_params(int d, double alpha, double beta, double lambda);

struct NormalizationConstants {
  /// Integral of |x|^alpha exp(-|x|^beta/beta) over R^d.
  double z_total = 0.0;
  /// z_total^(-1/d): the per-dimension constant that makes the density integrate to one.
  double c_star = 0.0;
  /// beta^((beta-alpha-1)/beta) / (2 Gamma((alpha+1)/beta)), the closed-form constant
  /// whose d-th power is often quoted as the normalizer. It only is one for d = 1
  /// and for special (alpha, beta) such as the Gaussian case.
  double c_closed_form = 0.0;
  /// Whether c_star and c_closed_form agree to 1e-12 relative.
  bool constants_agree = false;
  /// kappa[j] = volume of the j-dimensional unit ball, 0 <= j <= d.
  std::vector<double> kappa;
};

NormalizationConstants normalization(const ModelParams& params);

/// Same as above but accepts d >= 1, which covers the one-dimensional density
/// used by the Gumbel maxima.
NormalizationConstants normalization(int d, double alpha, double beta);

enum class ConstantMode { closed_form, corrected };

/// The radius R_lambda that the polytope boundary tracks:
///   R^beta = beta log(lambda) + beta d log(c) - (E/2) log(beta log(lambda)),
///   E = beta(d+1) - 2d - 2 alpha,
/// with c = c_star (corrected, default) or c_closed_form. Throws IntensityTooSmall when
/// the bracket is non-positive or R < 1.
double critical_radius(const ModelParams& params, ConstantMode mode = ConstantMode::corrected);

/// kappa_j = pi^(j/2) / Gamma(j/2 + 1).
double unit_ball_volume(int j);

/// Surface area of the unit sphere S^(m-1) in R^m (m >= 1; S^0 has "area" 2).
double unit_sphere_area(int m);

/// The exponent E/(2 beta) appearing in the rescaled intensity prefactor.
double intensity_prefactor_exponent(const ModelParams& params);

/// log of lambda * phi(x) at |x| = r using c_star; r > 0.
double log_intensity_at_radius(const ModelParams& params, double r);

}  // namespace ggp
