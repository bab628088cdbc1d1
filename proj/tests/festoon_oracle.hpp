#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "ggp/point.hpp"

namespace ggp::oracle {

inline double sq(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s += c * c;
  return s;
}

// Brute-force extremality: w_i is extreme iff the set of apex locations v0 whose
// downward paraboloid through w_i contains no other point in its interior has
// non-empty interior. Each other point w_j contributes the half-space
// <v_i - v_j, v0> >= s_i - s_j; the cell is found by clipping a large box.
inline bool brute_extreme(const std::vector<ScaledPoint>& pts, std::size_t i) {
  const int k = static_cast<int>(pts[i].v.size());
  const double si = pts[i].h + sq(pts[i].v) / 2.0;
  if (k == 1) {
    double lo = -1e9;
    double hi = 1e9;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (j == i) continue;
      const double a = pts[i].v[0] - pts[j].v[0];
      const double b = si - (pts[j].h + sq(pts[j].v) / 2.0);
      if (a == 0.0) {
        if (b > 0.0 || (b == 0.0 && j < i)) return false;
        continue;
      }
      if (a > 0.0) lo = std::max(lo, b / a);
      else hi = std::min(hi, b / a);
    }
    return lo < hi - 1e-12;
  }
  using P = std::pair<double, double>;
  std::vector<P> poly{{-1e7, -1e7}, {1e7, -1e7}, {1e7, 1e7}, {-1e7, 1e7}};
  for (std::size_t j = 0; j < pts.size() && !poly.empty(); ++j) {
    if (j == i) continue;
    const double ax = pts[i].v[0] - pts[j].v[0];
    const double ay = pts[i].v[1] - pts[j].v[1];
    const double b = si - (pts[j].h + sq(pts[j].v) / 2.0);
    if (ax == 0.0 && ay == 0.0) {
      if (b > 0.0 || (b == 0.0 && j < i)) return false;
      continue;
    }
    auto val = [&](const P& p) { return ax * p.first + ay * p.second - b; };
    std::vector<P> out;
    for (std::size_t t = 0; t < poly.size(); ++t) {
      const P& p = poly[t];
      const P& q = poly[(t + 1) % poly.size()];
      const double fp = val(p);
      const double fq = val(q);
      if (fp >= 0.0) out.push_back(p);
      if ((fp >= 0.0) != (fq >= 0.0)) {
        const double t0 = fp / (fp - fq);
        out.push_back({p.first + t0 * (q.first - p.first), p.second + t0 * (q.second - p.second)});
      }
    }
    poly = std::move(out);
  }
  if (poly.size() < 3) return false;
  double area = 0.0;
  for (std::size_t t = 0; t < poly.size(); ++t) {
    const P& p = poly[t];
    const P& q = poly[(t + 1) % poly.size()];
    area += p.first * q.second - q.first * p.second;
  }
  return std::abs(area) > 1e-14;
}

// Lower-hull height by brute force: min over segments / triangles containing v
// of the interpolated lifted height.
inline double brute_phi(const std::vector<ScaledPoint>& pts, const std::vector<double>& v) {
  const std::size_t n = pts.size();
  double best = std::numeric_limits<double>::infinity();
  auto s_of = [&](std::size_t i) { return pts[i].h + sq(pts[i].v) / 2.0; };
  if (v.size() == 1) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        const double va = pts[a].v[0];
        const double vb = pts[b].v[0];
        if (a == b) {
          if (va == v[0]) best = std::min(best, s_of(a));
          continue;
        }
        if (!(va <= v[0] && v[0] <= vb) || va == vb) continue;
        const double t = (v[0] - va) / (vb - va);
        best = std::min(best, (1 - t) * s_of(a) + t * s_of(b));
      }
    }
  } else {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        for (std::size_t c = b + 1; c < n; ++c) {
          const double x1 = pts[b].v[0] - pts[a].v[0], y1 = pts[b].v[1] - pts[a].v[1];
          const double x2 = pts[c].v[0] - pts[a].v[0], y2 = pts[c].v[1] - pts[a].v[1];
          const double det = x1 * y2 - x2 * y1;
          if (std::abs(det) < 1e-14) continue;
          const double px = v[0] - pts[a].v[0], py = v[1] - pts[a].v[1];
          const double l1 = (px * y2 - x2 * py) / det;
          const double l2 = (x1 * py - px * y1) / det;
          if (l1 < -1e-12 || l2 < -1e-12 || l1 + l2 > 1 + 1e-12) continue;
          best = std::min(best, (1 - l1 - l2) * s_of(a) + l1 * s_of(b) + l2 * s_of(c));
        }
      }
    }
  }
  return best - sq(v) / 2.0;
}

}  // namespace ggp::oracle
