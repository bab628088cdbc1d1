#include "ggp/simulate.hpp"

#include <cmath>
#include <limits>

#include "ggp/error.hpp"
#include "ggp/sampling.hpp"

namespace ggp {

double shell_radius(const ModelParams& params, double h_cut) {
  double r = 0.0;
  try {
    r = critical_radius(params);
  } catch (const Error&) {
    return 0.0;
  }
  const double r0 = r * (1.0 - h_cut / std::pow(r, params.beta));
  return r0 > 0.0 ? r0 : 0.0;
}

bool contains_ball(const Polytope& p, double r) {
  if (p.facets.empty()) return false;
  for (const auto& f : p.facets) {
    if (!(f.offset >= r)) return false;
  }
  return true;
}

namespace {

void build_hull(HullSample& s, int d) {
  s.affine_dim = affine_dimension(s.points);
  s.hull.reset();
  if (s.affine_dim == d) s.hull = convex_hull(s.points);
}

}  // namespace

HullSample sample_hull(RngStream& rng, const ModelParams& params, double h_cut) {
  HullSample out;
  out.r0 = shell_radius(params, h_cut);
  const double inf = std::numeric_limits<double>::infinity();
  out.points = out.r0 > 0.0 ? sample_polytope_shell(rng, params, out.r0, inf)
                            : sample_polytope_input(rng, params);
  out.inner_sampled = out.r0 == 0.0;
  build_hull(out, params.d);
  if (!out.inner_sampled && !(out.hull && contains_ball(*out.hull, out.r0))) {
    add_inner_points(rng, params, out);
  }
  return out;
}

void add_inner_points(RngStream& rng, const ModelParams& params, HullSample& sample) {
  if (sample.inner_sampled) return;
  const PointCloud inner = sample_polytope_shell(rng, params, 0.0, sample.r0);
  for (std::size_t i = 0; i < inner.size(); ++i) sample.points.push_back(inner[i]);
  sample.inner_sampled = true;
  build_hull(sample, params.d);
}

Functionals polytope_functionals(const PointCloud& points, const std::optional<Polytope>& hull,
                                 int kubota_dirs, RngStream& rng) {
  const int d = points.dim();
  Functionals out;
  out.V.assign(d + 1, 0.0);
  out.f.assign(d, 0);
  if (points.empty()) return out;
  out.V[0] = 1.0;
  std::optional<Polytope> local;
  const Polytope* p = nullptr;
  int k = d;
  if (hull && hull->dim == d) {
    p = &*hull;
  } else {
    k = affine_dimension(points);
    if (k == 0) {
      out.f[0] = 1;
      return out;
    }
    local = convex_hull(k == d ? points : project_to_affine_hull(points));
    p = &*local;
  }
  for (int j = 0; j < k && j < d; ++j) out.f[j] = p->f_vector[j];
  for (int i = 1; i <= k; ++i) {
    out.V[i] = intrinsic_volume(*p, i, i >= k - 1 ? 1 : kubota_dirs, rng).value;
  }
  return out;
}

}  // namespace ggp
