#pragma once

#include <vector>

#include "ggp/model.hpp"
#include "ggp/point.hpp"

namespace ggp {

/// Inverse of the exponential map at the north pole u0 = e_d of S^(d-1).
/// Returns a (d-1)-vector whose norm is the geodesic distance from u0 to u.
/// The antipode -u0 maps to the sentinel (0, ..., 0, pi).
std::vector<double> exp_inverse(const double* u, int d);

/// Exponential map at u0: v in R^(d-1) (|v| <= pi) to a unit d-vector.
void exp_map(const double* v, int d, double* u);
std::vector<double> exp_map(const std::vector<double>& v);

/// Geodesic distance between unit vectors, 2 atan2(|u - w|, |u + w|).
double sphere_distance(const double* u, const double* w, int d);

/// The scaling transform T_lambda for fixed parameters and radius R:
///   T(x) = (R^(beta/2) exp^{-1}(x/|x|), R^beta (1 - |x|/R)),   T(o) = (o, R^beta),
/// a bijection from R^d onto W = R^(beta/2) B_{d-1}(o, pi) x (-inf, R^beta].
class Scaling {
 public:
  /// Throws IntensityTooSmall unless r_lambda >= 1.
  Scaling(const ModelParams& params, double r_lambda);
  /// Uses critical_radius(params) with the corrected constant.
  explicit Scaling(const ModelParams& params);

  const ModelParams& params() const noexcept { return params_; }
  int d() const noexcept { return params_.d; }
  double r_lambda() const noexcept { return r_; }
  /// R^beta, the height scale.
  double height_scale() const noexcept { return r_beta_; }
  /// R^(beta/2), the spatial scale.
  double spatial_scale() const noexcept { return r_half_; }

  bool in_window(const ScaledPoint& w) const;

  ScaledPoint transform(const double* x) const;
  /// Throws OutsideWindow when w is not in W.
  std::vector<double> inverse_transform(const ScaledPoint& w) const;

  /// Density of the intensity measure of T(P_lambda) at w, computed exactly as
  /// lambda phi(T^{-1} w) |det D T^{-1}(w)|:
  ///   lambda c^d r^(alpha+d-1) e^(-r^beta/beta) R^(1-beta) R^(-beta(d-1)/2) (sin t / t)^(d-2),
  /// with r = R (1 - h/R^beta) and t = |v| / R^(beta/2). Throws OutsideWindow.
  double rescaled_intensity(const ScaledPoint& w) const;
  double log_rescaled_intensity(const ScaledPoint& w) const;

  /// The intensity's commonly quoted large-lambda form with the unknown
  /// constant dropped: (sin t / t)^(d-2) (beta log lambda)^(E/(2 beta)) R^(-E/2)
  /// e^h (1 - h/R^beta)^(d-1+alpha). Diagnostic only.
  double approximate_intensity(const ScaledPoint& w) const;

  /// Geodesic distance between exp(v1/R^(beta/2)) and exp(v2/R^(beta/2)).
  double geodesic_distance(const std::vector<double>& v1, const std::vector<double>& v2) const;

 private:
  ModelParams params_;
  double r_ = 1.0;
  double r_beta_ = 1.0;
  double r_half_ = 1.0;
  double log_lambda_cd_ = 0.0;
};

enum class GrainOrientation { up, down };

/// Curved finite-lambda analogue of a paraboloid grain with apex (v', h').
struct QuasiGrain {
  ScaledPoint apex;
  GrainOrientation orientation = GrainOrientation::up;
  double r_lambda = 1.0;
  double beta = 2.0;
};

/// Boundary height at spatial location v, with t the geodesic distance between
/// the images of v' and v:
///   up:   R^beta (1 - cos t) + h' cos t
///   down: R^beta - (R^beta - h') / cos t      (CosineDegenerate for t >= pi/2).
double grain_boundary(const QuasiGrain& g, const std::vector<double>& v);

}  // namespace ggp
