#include "ggp/festoon.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ggp/error.hpp"
#include "ggp/predicates.hpp"

namespace ggp {

namespace {

double sq_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return s;
}

}  // namespace

LiftedPoint lift(const ScaledPoint& w) { return {w.v, w.h + 0.5 * sq_norm(w.v)}; }

Festoon::Festoon(std::vector<ScaledPoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw Error(ErrorCode::EmptyInput, "festoon of an empty point set");
  k_ = static_cast<int>(points_[0].v.size());
  if (k_ < 1 || k_ + 1 > kMaxHullDim) {
    throw Error(ErrorCode::InvalidArgument, "spatial dimension out of range");
  }
  for (const auto& w : points_) {
    if (static_cast<int>(w.v.size()) != k_) {
      throw Error(ErrorCode::InvalidArgument, "points of mixed dimension");
    }
  }

  // One candidate per spatial location: the lowest point, then the first.
  std::vector<std::size_t> order(points_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points_[a].v != points_[b].v) return points_[a].v < points_[b].v;
    if (points_[a].h != points_[b].h) return points_[a].h < points_[b].h;
    return a < b;
  });
  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || points_[order[i]].v != points_[order[i - 1]].v) cand.push_back(order[i]);
  }
  const std::size_t m = cand.size();

  scale_ = 1.0;
  for (std::size_t c : cand) {
    for (double x : points_[c].v) scale_ = std::max(scale_, std::abs(x));
  }

  // Affine frame of the spatial locations.
  origin_ = points_[cand[0]].v;
  j_ = 0;
  frame_.clear();
  if (m > 1) {
    Eigen::MatrixXd diffs(k_, m - 1);
    for (std::size_t i = 1; i < m; ++i) {
      for (int r = 0; r < k_; ++r) diffs(r, i - 1) = points_[cand[i]].v[r] - origin_[r];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(diffs);
    qr.setThreshold(1e-12);
    j_ = static_cast<int>(qr.rank());
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(k_, j_);
    for (int c = 0; c < j_; ++c) {
      frame_.emplace_back(k_);
      for (int r = 0; r < k_; ++r) frame_.back()[r] = q(r, c);
    }
  }

  std::vector<std::vector<double>> y(m, std::vector<double>(j_));
  std::vector<double> s(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& w = points_[cand[i]];
    for (int c = 0; c < j_; ++c) {
      double acc = 0.0;
      for (int r = 0; r < k_; ++r) acc += frame_[c][r] * (w.v[r] - origin_[r]);
      y[i][c] = acc;
    }
    s[i] = w.h + 0.5 * sq_norm(w.v);
  }

  support_normals_.clear();
  support_offsets_.clear();
  reduced_facets_.clear();

  if (j_ == 0) {
    extreme_ = {cand[0]};
    reduced_facets_.push_back({{}, s[0], {cand[0]}});
  } else if (j_ == 1) {
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      if (y[a][0] != y[b][0]) return y[a][0] < y[b][0];
      return s[a] < s[b];
    });
    std::vector<std::size_t> chain;
    for (std::size_t t = 0; t < idx.size(); ++t) {
      const std::size_t i = idx[t];
      if (!chain.empty() && y[chain.back()][0] == y[i][0]) continue;
      const double pi[2] = {y[i][0], s[i]};
      while (chain.size() >= 2) {
        const std::size_t a = chain[chain.size() - 2];
        const std::size_t b = chain.back();
        const double pa[2] = {y[a][0], s[a]};
        const double pb[2] = {y[b][0], s[b]};
        if (orient2d(pa, pb, pi) > 0) break;
        chain.pop_back();
      }
      chain.push_back(i);
    }
    for (std::size_t t = 0; t < chain.size(); ++t) extreme_.push_back(cand[chain[t]]);
    if (chain.size() == 1) {
      reduced_facets_.push_back({{0.0}, s[chain[0]], {cand[chain[0]]}});
    }
    for (std::size_t t = 0; t + 1 < chain.size(); ++t) {
      const std::size_t a = chain[t];
      const std::size_t b = chain[t + 1];
      const double slope = (s[b] - s[a]) / (y[b][0] - y[a][0]);
      reduced_facets_.push_back({{slope}, s[a] - slope * y[a][0], {cand[a], cand[b]}});
    }
    support_normals_ = {{-1.0}, {1.0}};
    support_offsets_ = {-y[chain.front()][0], y[chain.back()][0]};
  } else {
    // Lower hull of the lifted points via the hull of the points and copies
    // raised by M: facets made only of original points are exactly the lower ones.
    const double smin = *std::min_element(s.begin(), s.end());
    const double smax = *std::max_element(s.begin(), s.end());
    const double lift_up = (smax - smin) + 1.0;
    PointCloud cloud(j_ + 1);
    cloud.reserve(2 * m);
    std::vector<double> row(j_ + 1);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < m; ++i) {
        std::copy(y[i].begin(), y[i].end(), row.begin());
        row[j_] = s[i] + (pass == 0 ? 0.0 : lift_up);
        cloud.push_back(row);
      }
    }
    const Polytope hull = convex_hull(cloud);
    std::vector<char> is_ext(m, 0);
    for (const auto& f : hull.facets) {
      bool lower = true;
      for (int vi : f.vertices) {
        if (hull.source_index[vi] >= m) {
          lower = false;
          break;
        }
      }
      if (!lower) continue;
      const double ns = f.normal[j_];
      LowerFacet lf;
      lf.slope.resize(j_);
      for (int c = 0; c < j_; ++c) lf.slope[c] = -f.normal[c] / ns;
      lf.intercept = f.offset / ns;
      for (int vi : f.vertices) {
        const std::size_t src = hull.source_index[vi];
        is_ext[src] = 1;
        lf.vertices.push_back(cand[src]);
      }
      std::sort(lf.vertices.begin(), lf.vertices.end());
      reduced_facets_.push_back(std::move(lf));
    }
    PointCloud spatial(j_);
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_ext[i]) continue;
      extreme_.push_back(cand[i]);
      spatial.push_back(y[i]);
    }
    const Polytope support = convex_hull(spatial);
    for (const auto& f : support.facets) {
      support_normals_.push_back(f.normal);
      support_offsets_.push_back(f.offset);
    }
  }
  std::sort(extreme_.begin(), extreme_.end());

  // Facets in the original spatial coordinates.
  facets_.clear();
  for (const auto& rf : reduced_facets_) {
    LowerFacet f;
    f.slope.assign(k_, 0.0);
    for (int c = 0; c < j_; ++c) {
      for (int r = 0; r < k_; ++r) f.slope[r] += frame_[c][r] * rf.slope[c];
    }
    double shift = 0.0;
    for (int r = 0; r < k_; ++r) shift += f.slope[r] * origin_[r];
    f.intercept = rf.intercept - shift;
    f.vertices = rf.vertices;
    facets_.push_back(std::move(f));
  }
}

std::vector<double> Festoon::reduce(const std::vector<double>& v, bool& inside) const {
  if (static_cast<int>(v.size()) != k_) {
    throw Error(ErrorCode::InvalidArgument, "spatial dimension mismatch");
  }
  std::vector<double> y(j_);
  std::vector<double> resid(k_);
  for (int r = 0; r < k_; ++r) resid[r] = v[r] - origin_[r];
  for (int c = 0; c < j_; ++c) {
    double acc = 0.0;
    for (int r = 0; r < k_; ++r) acc += frame_[c][r] * (v[r] - origin_[r]);
    y[c] = acc;
    for (int r = 0; r < k_; ++r) resid[r] -= acc * frame_[c][r];
  }
  const double tol = 1e-9 * std::max(scale_, 1.0);
  inside = std::sqrt(sq_norm(resid)) <= tol;
  for (std::size_t f = 0; inside && f < support_normals_.size(); ++f) {
    double acc = 0.0;
    for (int c = 0; c < j_; ++c) acc += support_normals_[f][c] * y[c];
    if (acc > support_offsets_[f] + tol) inside = false;
  }
  return y;
}

bool Festoon::in_support(const std::vector<double>& v) const {
  bool inside = false;
  reduce(v, inside);
  return inside;
}

double Festoon::lifted_height(const std::vector<double>& y) const {
  if (j_ == 1 && reduced_facets_.size() > 1) {
    // Facets are ordered along the line; each one is valid from its left vertex.
    std::size_t lo = 0;
    std::size_t hi = reduced_facets_.size();
    const double yy = y[0];
    // The maximum over facets of a convex chain equals the active segment; search
    // for it through the slope ordering (slopes increase along the chain).
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      const auto& a = reduced_facets_[mid - 1];
      const auto& b = reduced_facets_[mid];
      // Breakpoint between a and b.
      const double x = (a.intercept - b.intercept) / (b.slope[0] - a.slope[0]);
      if (yy < x) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    const auto& f = reduced_facets_[lo];
    return f.slope[0] * yy + f.intercept;
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& f : reduced_facets_) {
    double val = f.intercept;
    for (int c = 0; c < j_; ++c) val += f.slope[c] * y[c];
    best = std::max(best, val);
  }
  return best;
}

double Festoon::phi(const std::vector<double>& v) const {
  bool inside = false;
  const auto y = reduce(v, inside);
  if (!inside) throw Error(ErrorCode::OutsideSupport, "v is outside the festoon support");
  return lifted_height(y) - 0.5 * sq_norm(v);
}

double Festoon::max_height_bound() const {
  // On a facet, phi = <a, v> + b - |v|^2/2 peaks at v = a with value b + |a|^2/2.
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& f : facets_) {
    if (k_ == 1 && f.vertices.size() == 2) {
      const double lo = std::min(points_[f.vertices[0]].v[0], points_[f.vertices[1]].v[0]);
      const double hi = std::max(points_[f.vertices[0]].v[0], points_[f.vertices[1]].v[0]);
      const double v = std::clamp(f.slope[0], lo, hi);
      best = std::max(best, f.slope[0] * v + f.intercept - 0.5 * v * v);
      continue;
    }
    best = std::max(best, f.intercept + 0.5 * sq_norm(f.slope));
  }
  for (std::size_t i : extreme_) best = std::max(best, points_[i].h);
  return best;
}

Festoon extreme_points(const std::vector<ScaledPoint>& points) { return Festoon(points); }

double phi_boundary(const Festoon& f, const std::vector<double>& v) { return f.phi(v); }

double psi_boundary(const std::vector<ScaledPoint>& points, const std::vector<double>& v) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "envelope of an empty point set");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& w : points) {
    if (w.v.size() != v.size()) throw Error(ErrorCode::InvalidArgument, "spatial dimension mismatch");
    double d2 = 0.0;
    for (std::size_t r = 0; r < v.size(); ++r) d2 += (v[r] - w.v[r]) * (v[r] - w.v[r]);
    best = std::min(best, w.h + 0.5 * d2);
  }
  return best;
}

double psi_lambda_boundary(const std::vector<ScaledPoint>& points, const std::vector<double>& v,
                           const ModelParams& params, double r_lambda) {
  if (points.empty()) throw Error(ErrorCode::EmptyInput, "envelope of an empty point set");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& w : points) {
    const QuasiGrain g{w, GrainOrientation::up, r_lambda, params.beta};
    best = std::min(best, grain_boundary(g, v));
  }
  return best;
}

double rescaled_hull_boundary(const Polytope& p, const std::vector<double>& v, const Scaling& s) {
  if (static_cast<int>(v.size()) != s.d() - 1 || p.dim != s.d()) {
    throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  }
  std::vector<double> t(v);
  for (double& c : t) c /= s.spatial_scale();
  const auto u = exp_map(t);
  const double rho = radial_function(p, u.data());
  return s.height_scale() * (1.0 - rho / s.r_lambda());
}

double rescaled_hull_boundary(const Polytope& p, const std::vector<double>& v,
                              const ModelParams& params, double r_lambda) {
  return rescaled_hull_boundary(p, v, Scaling(params, r_lambda));
}

std::vector<std::vector<double>> ball_grid(int k, double L, int grid_n) {
  if (k < 1 || grid_n < 1 || !(L >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "grid needs k >= 1, grid_n >= 1, L >= 0");
  }
  std::vector<std::vector<double>> out;
  std::vector<int> idx(k, 0);
  const double step = grid_n > 1 ? 2.0 * L / (grid_n - 1) : 0.0;
  while (true) {
    std::vector<double> v(k);
    double n2 = 0.0;
    for (int r = 0; r < k; ++r) {
      v[r] = grid_n > 1 ? -L + step * idx[r] : 0.0;
      n2 += v[r] * v[r];
    }
    if (n2 <= L * L * (1.0 + 1e-12)) out.push_back(std::move(v));
    int r = 0;
    while (r < k && ++idx[r] == grid_n) idx[r++] = 0;
    if (r == k) break;
  }
  return out;
}

double sup_distance(const std::function<double(const std::vector<double>&)>& f,
                    const std::function<double(const std::vector<double>&)>& g, int k, double L,
                    int grid_n) {
  double best = 0.0;
  for (const auto& v : ball_grid(k, L, grid_n)) best = std::max(best, std::abs(f(v) - g(v)));
  return best;
}

}  // namespace ggp
