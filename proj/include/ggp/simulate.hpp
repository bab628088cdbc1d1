#pragma once

#include <optional>
#include <vector>

#include "ggp/hull.hpp"
#include "ggp/model.hpp"
#include "ggp/point.hpp"
#include "ggp/rng.hpp"

namespace ggp {

/// Radius below which points sit at rescaled height above h_cut:
/// R (1 - h_cut / R^beta), or 0 when R_lambda is undefined or the value is not positive.
double shell_radius(const ModelParams& params, double h_cut);

/// A realization of the input process reduced to the points that can matter
/// for its convex hull. Points with |x| >= r0 are always drawn. Points with
/// |x| < r0 are drawn only when the hull of the outer points fails to contain
/// B(o, r0); otherwise they are inside the hull whatever their positions, so
/// the hull has exactly the law of the hull of the full process.
struct HullSample {
  PointCloud points;
  /// Present when the points are full-dimensional.
  std::optional<Polytope> hull;
  int affine_dim = -1;
  double r0 = 0.0;
  bool inner_sampled = false;
};

HullSample sample_hull(RngStream& rng, const ModelParams& params, double h_cut);

/// Draws the points with |x| < r0 that sample_hull skipped (no-op when already
/// drawn) and rebuilds the hull. Used when a statistic other than the hull
/// could depend on them.
void add_inner_points(RngStream& rng, const ModelParams& params, HullSample& sample);

/// Whether B(o, r) lies inside p.
bool contains_ball(const Polytope& p, double r);

struct Functionals {
  /// V[i], i = 0..d.
  std::vector<double> V;
  /// f[j], j = 0..d-1.
  std::vector<long long> f;
};

/// Intrinsic volumes and face numbers of conv(points) in R^d. Lower-dimensional
/// hulls are measured in their affine hull (V_i = 0 for i above that dimension,
/// f_j = 0 for j at or above it). An empty set gives all zeros. V_i with
/// 1 <= i <= k-2 uses the Kubota estimator with kubota_dirs directions.
Functionals polytope_functionals(const PointCloud& points, const std::optional<Polytope>& hull,
                                 int kubota_dirs, RngStream& rng);

}  // namespace ggp
