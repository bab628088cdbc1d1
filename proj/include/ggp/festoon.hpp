#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ggp/hull.hpp"
#include "ggp/model.hpp"
#include "ggp/point.hpp"
#include "ggp/rescale.hpp"

namespace ggp {

/// (v, h + |v|^2/2). Under this map the downward paraboloid
/// {h <= h0 - |v - v0|^2/2} becomes the half-space {s <= <v0, v> + h0 - |v0|^2/2},
/// so a point sits on the boundary of an empty downward paraboloid exactly when
/// its lift is on the lower convex hull of the lifted points.
struct LiftedPoint {
  std::vector<double> v;
  double s = 0.0;
};
LiftedPoint lift(const ScaledPoint& w);

/// One lower facet of the lifted hull: s = <slope, v> + intercept above its cell.
struct LowerFacet {
  std::vector<double> slope;
  double intercept = 0.0;
  /// Indices into Festoon::points().
  std::vector<std::size_t> vertices;
};

/// Extreme points of a point set in R^(d-1) x R and the boundary of the region
/// covered by downward paraboloids with empty interior.
class Festoon {
 public:
  /// Throws EmptyInput for an empty set and InvalidArgument for mixed dimensions.
  explicit Festoon(std::vector<ScaledPoint> points);

  int spatial_dim() const noexcept { return k_; }
  const std::vector<ScaledPoint>& points() const noexcept { return points_; }
  /// Sorted indices of the extreme points. Among points sharing a spatial
  /// location only the lowest (then the first) can be extreme.
  const std::vector<std::size_t>& extreme_indices() const noexcept { return extreme_; }
  const std::vector<LowerFacet>& lower_facets() const noexcept { return facets_; }

  /// Whether v lies in the spatial convex hull of the extreme points (with a
  /// relative tolerance of 1e-9).
  bool in_support(const std::vector<double>& v) const;

  /// Height of the boundary at v: lower-hull height minus |v|^2/2.
  /// Throws OutsideSupport when !in_support(v).
  double phi(const std::vector<double>& v) const;

  /// An upper bound on phi over its support (exact when the spatial dimension is 1).
  double max_height_bound() const;

 private:
  double lifted_height(const std::vector<double>& y) const;
  std::vector<double> reduce(const std::vector<double>& v, bool& inside) const;

  std::vector<ScaledPoint> points_;
  int k_ = 0;
  std::vector<std::size_t> extreme_;
  std::vector<LowerFacet> facets_;
  // Spatial support: affine frame (origin + orthonormal columns) of the unique
  // spatial locations, and the support polytope in frame coordinates.
  int j_ = 0;
  std::vector<double> origin_;
  std::vector<std::vector<double>> frame_;
  std::vector<std::vector<double>> support_normals_;
  std::vector<double> support_offsets_;
  double scale_ = 1.0;
  // Lower facets in frame coordinates, used for evaluation.
  std::vector<LowerFacet> reduced_facets_;
};

Festoon extreme_points(const std::vector<ScaledPoint>& points);

double phi_boundary(const Festoon& f, const std::vector<double>& v);

/// min over w of h_w + |v - v_w|^2/2. Throws EmptyInput.
double psi_boundary(const std::vector<ScaledPoint>& points, const std::vector<double>& v);

/// min over w of the up quasi-grain boundary with apex w.
double psi_lambda_boundary(const std::vector<ScaledPoint>& points, const std::vector<double>& v,
                           const ModelParams& params, double r_lambda);

/// Height of T(boundary of p) above v: R^beta (1 - rho(u)/R), u = exp(v / R^(beta/2)).
/// Throws OriginOutside unless the origin is interior to p.
double rescaled_hull_boundary(const Polytope& p, const std::vector<double>& v,
                              const ModelParams& params, double r_lambda);
double rescaled_hull_boundary(const Polytope& p, const std::vector<double>& v, const Scaling& s);

/// max |f - g| over the points of a grid_n^k grid on [-L, L]^k that lie in B_k(o, L).
double sup_distance(const std::function<double(const std::vector<double>&)>& f,
                    const std::function<double(const std::vector<double>&)>& g, int k, double L,
                    int grid_n);

/// The grid used by sup_distance.
std::vector<std::vector<double>> ball_grid(int k, double L, int grid_n);

}  // namespace ggp
