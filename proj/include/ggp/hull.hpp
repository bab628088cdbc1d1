#pragma once

#include <cstddef>
#include <vector>

#include "ggp/point.hpp"
#include "ggp/predicates.hpp"
#include "ggp/rng.hpp"

namespace ggp {

struct Facet {
  /// Outward unit normal.
  std::vector<double> normal;
  double offset = 0.0;
  /// Indices into Polytope::vertices of the vertices lying on this facet.
  std::vector<int> vertices;
};

/// Full-dimensional convex polytope. Facets are maximal: coplanar boundary
/// simplices are merged, so a cube has 6 facets. The boundary triangulation is
/// kept for volume and surface computations.
struct Polytope {
  int dim = 0;
  PointCloud vertices;
  /// Index of each vertex in the cloud the hull was built from. Among exact
  /// duplicates the smallest index is reported.
  std::vector<std::size_t> source_index;
  std::vector<Facet> facets;
  /// f_vector[j] = number of j-dimensional faces, 0 <= j < dim.
  std::vector<long long> f_vector;
  /// Boundary (dim-1)-simplices, as indices into vertices.
  std::vector<std::vector<int>> simplices;
  /// Centroid of the vertices, an interior point.
  std::vector<double> interior;

  std::size_t num_vertices() const noexcept { return vertices.size(); }
};

/// Convex hull of a full-dimensional cloud (dim 1..kMaxHullDim). Throws
/// DegenerateInput when the points lie in a proper affine subspace.
Polytope convex_hull(const PointCloud& cloud);

/// Just the vertex indices (sorted), without facet bookkeeping where that is cheaper.
std::vector<std::size_t> hull_vertex_indices(const PointCloud& cloud);

/// Dimension of the affine hull of the cloud (-1 for an empty cloud).
int affine_dimension(const PointCloud& cloud);

/// Coordinates of the cloud in an orthonormal frame of its affine hull, so the
/// result is full-dimensional in affine_dimension(cloud) dims.
PointCloud project_to_affine_hull(const PointCloud& cloud);

double volume(const Polytope& p);
double surface_area(const Polytope& p);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// i-th intrinsic volume. i = dim and i = dim-1 are exact (volume and half the
/// surface area, std_error 0); 1 <= i < dim-1 uses the Kubota formula
/// V_i = C(d,i) kappa_d / (kappa_i kappa_{d-i}) E[vol_i(projection onto a
/// uniform random i-subspace)] with n_directions orthonormalized Gaussian frames.
Estimate intrinsic_volume(const Polytope& p, int i, int n_directions, RngStream& rng);

/// Same Monte Carlo estimator without the exact shortcuts (used to cross-check them).
Estimate kubota_estimate(const Polytope& p, int i, int n_directions, RngStream& rng);

/// rho(u) = max{t >= 0 : t u in p}. Throws OriginOutside unless the origin is interior.
double radial_function(const Polytope& p, const double* u);

/// Whether the origin is strictly inside p.
bool contains_origin_interior(const Polytope& p);

/// x_index is a vertex iff it is not in the convex hull of the remaining
/// points, decided by a phase-one simplex LP with tolerance 1e-9.
bool is_vertex_lp(const PointCloud& cloud, std::size_t index);

/// Ball criterion: x is a vertex iff the ball B(x/2, |x|/2) is not covered by
/// the balls B(y/2, |y|/2) of the other points. Decided on 10 * 4^(d-1)
/// deterministic points of the candidate ball's boundary sphere, so it is an
/// approximate oracle. Exact duplicates of x make it return false.
bool is_vertex_ball(const PointCloud& cloud, std::size_t index);

/// Deterministic, roughly uniform points on S^(d-1) (flat, count * d entries).
std::vector<double> sphere_design(int d, int count);

}  // namespace ggp
