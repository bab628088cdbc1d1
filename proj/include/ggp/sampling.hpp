#pragma once

#include <vector>

#include "ggp/model.hpp"
#include "ggp/point.hpp"
#include "ggp/rng.hpp"

namespace ggp {

/// Window B_{d-1}(o, L) x (h_min, h_max] of the rescaled space. h_min may be
/// -infinity (the intensity e^h keeps the mass finite).
struct ScaledWindow {
  double spatial_radius = 1.0;
  double h_min = 0.0;
  double h_max = 0.0;
};

void validate_window(const ScaledWindow& window);

/// Expected number of points of the e^h process in the window, for ambient dimension d.
double window_mass(int d, const ScaledWindow& window);

/// Radius with density proportional to r^(d-1+alpha) exp(-r^beta/beta):
/// r = (beta G)^(1/beta), G ~ Gamma((d+alpha)/beta). Also valid for d = 1.
double sample_radius(RngStream& rng, int d, double alpha, double beta);

/// Radius from the same law conditioned on r in [r_lo, r_hi] (r_hi may be +inf), by inverting the
/// regularized incomplete gamma function.
double sample_radius_between(RngStream& rng, int d, double alpha, double beta, double r_lo,
                             double r_hi);

/// P(r_lo <= r <= r_hi) for the radial law above.
double radial_probability(int d, double alpha, double beta, double r_lo, double r_hi);

/// Uniform direction on S^(d-1), written to out[0..d).
void sample_direction(RngStream& rng, int d, double* out);
std::vector<double> sample_direction(RngStream& rng, int d);

/// Uniform point in the k-dimensional ball of radius L.
void sample_in_ball(RngStream& rng, int k, double radius, double* out);

/// Poisson(lambda) many iid points from the generalized gamma density.
PointCloud sample_polytope_input(RngStream& rng, const ModelParams& params);

/// The restriction of the same Poisson process to the shell r_lo <= |x| <= r_hi.
PointCloud sample_polytope_shell(RngStream& rng, const ModelParams& params, double r_lo,
                                 double r_hi);

/// Poisson process with intensity e^h dv dh on the window.
std::vector<ScaledPoint> sample_limit_process(RngStream& rng, int d, const ScaledWindow& window);

/// Centering a_n of the maximum of n samples from the symmetric 1-d density
/// c |x|^alpha exp(-|x|^beta/beta).
double gumbel_centering(long long n, double alpha, double beta);

/// (beta log n)^((beta-1)/beta), the scale of the same maximum.
double gumbel_scale(long long n, double beta);

/// Standardized maximum (beta log n)^((beta-1)/beta) (M_n - a_n) of n iid draws.
/// The maximum is drawn from its exact law: the number K of positive draws is
/// Binomial(n, 1/2) and the largest of K iid |X| is F^{-1}(U^(1/K)).
double sample_standardized_max(RngStream& rng, long long n, double alpha, double beta);

/// Same quantity computed by literally drawing all n values. Slow; used to
/// cross-check the exact-law shortcut.
double sample_standardized_max_direct(RngStream& rng, long long n, double alpha, double beta);

}  // namespace ggp
