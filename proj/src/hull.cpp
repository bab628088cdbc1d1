#include "ggp/hull.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "ggp/error.hpp"

namespace ggp {

namespace {

// Distinct points of a cloud in lexicographic order, each tagged with the
// smallest input index carrying those coordinates.
struct Deduped {
  int d = 0;
  std::vector<const double*> pts;
  std::vector<std::size_t> source;
};

Deduped dedupe(const PointCloud& cloud) {
  Deduped out;
  out.d = cloud.dim();
  const int d = out.d;
  const auto& c = cloud.coords();
  std::vector<std::size_t> order(cloud.size());
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    const double* pa = c.data() + a * d;
    const double* pb = c.data() + b * d;
    for (int j = 0; j < d; ++j) {
      if (pa[j] != pb[j]) return pa[j] < pb[j];
    }
    return a < b;
  };
  std::sort(order.begin(), order.end(), less);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const double* p = c.data() + order[k] * d;
    if (!out.pts.empty() && std::equal(p, p + d, out.pts.back())) continue;
    out.pts.push_back(p);
    out.source.push_back(order[k]);
  }
  return out;
}

double dot(const double* a, const double* b, int d) {
  double s = 0.0;
  for (int j = 0; j < d; ++j) s += a[j] * b[j];
  return s;
}

// Greedy maximal affinely independent subset: repeatedly take the point
// farthest (in floating point) from the current affine span, confirming
// independence exactly.
std::vector<int> affine_basis(const std::vector<const double*>& pts, int d) {
  std::vector<int> chosen;
  if (pts.empty()) return chosen;
  chosen.push_back(0);
  std::vector<std::vector<double>> basis;  // orthonormal span of chosen - base
  const double* base = pts[0];
  std::vector<char> rejected(pts.size(), 0);
  rejected[0] = 1;
  std::vector<double> dist(pts.size());
  std::vector<double> tmp(d);
  while (static_cast<int>(chosen.size()) <= d) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (rejected[i]) {
        dist[i] = -1.0;
        continue;
      }
      for (int j = 0; j < d; ++j) tmp[j] = pts[i][j] - base[j];
      for (const auto& b : basis) {
        const double t = dot(tmp.data(), b.data(), d);
        for (int j = 0; j < d; ++j) tmp[j] -= t * b[j];
      }
      dist[i] = dot(tmp.data(), tmp.data(), d);
    }
    std::vector<int> order;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (dist[i] >= 0.0) order.push_back(static_cast<int>(i));
    }
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dist[a] > dist[b]; });
    int accepted = -1;
    std::vector<const double*> others;
    for (int c : chosen) {
      if (c != 0) others.push_back(pts[c]);
    }
    const int want = static_cast<int>(chosen.size());
    for (int cand : order) {
      others.push_back(pts[cand]);
      const int rank = exact_affine_rank(base, others, d);
      others.pop_back();
      if (rank == want) {
        accepted = cand;
        break;
      }
      rejected[cand] = 1;
    }
    if (accepted < 0) break;
    rejected[accepted] = 1;
    chosen.push_back(accepted);
    for (int j = 0; j < d; ++j) tmp[j] = pts[accepted][j] - base[j];
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const double t = dot(tmp.data(), b.data(), d);
        for (int j = 0; j < d; ++j) tmp[j] -= t * b[j];
      }
    }
    const double norm = std::sqrt(dot(tmp.data(), tmp.data(), d));
    std::vector<double> b(d);
    for (int j = 0; j < d; ++j) b[j] = norm > 0.0 ? tmp[j] / norm : 0.0;
    basis.push_back(std::move(b));
  }
  return chosen;
}

// Unit normal of the hyperplane through d points of R^d (float), sign arbitrary.
void hyperplane_normal(const double* const* verts, int d, double* n) {
  if (d == 2) {
    const double dx = verts[1][0] - verts[0][0];
    const double dy = verts[1][1] - verts[0][1];
    const double len = std::hypot(dx, dy);
    n[0] = dy / len;
    n[1] = -dx / len;
    return;
  }
  if (d == 3) {
    double a[3], b[3];
    for (int j = 0; j < 3; ++j) {
      a[j] = verts[1][j] - verts[0][j];
      b[j] = verts[2][j] - verts[0][j];
    }
    n[0] = a[1] * b[2] - a[2] * b[1];
    n[1] = a[2] * b[0] - a[0] * b[2];
    n[2] = a[0] * b[1] - a[1] * b[0];
    const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
    for (int j = 0; j < 3; ++j) n[j] /= len;
    return;
  }
  Eigen::MatrixXd a(d, d - 1);
  for (int i = 1; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(j, i - 1) = verts[i][j] - verts[0][j];
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  for (int j = 0; j < d; ++j) n[j] = q(j, d - 1);
}

int facet_rank(const PointCloud& verts, const std::vector<int>& ids) {
  const int d = verts.dim();
  if (ids.empty()) return -1;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(ids.size()) - 1, d);
  for (std::size_t i = 1; i < ids.size(); ++i) {
    for (int j = 0; j < d; ++j) m(i - 1, j) = verts[ids[i]][j] - verts[ids[0]][j];
  }
  if (m.rows() == 0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-10);
  return static_cast<int>(lu.rank());
}

// f-vector: for simplicial polytopes count distinct vertex subsets of facets;
// otherwise close facet vertex sets under intersection level by level.
std::vector<long long> compute_f_vector(const Polytope& p) {
  const int d = p.dim;
  std::vector<long long> f(d, 0);
  f[0] = static_cast<long long>(p.vertices.size());
  if (d == 1) return f;
  f[d - 1] = static_cast<long long>(p.facets.size());
  if (d == 2) return f;
  const bool simplicial = std::all_of(p.facets.begin(), p.facets.end(), [d](const Facet& fc) {
    return static_cast<int>(fc.vertices.size()) == d;
  });
  if (simplicial) {
    for (int j = 1; j < d - 1; ++j) {
      std::set<std::vector<int>> faces;
      std::vector<int> pick(j + 1);
      for (const auto& fc : p.facets) {
        std::vector<int> vs = fc.vertices;
        std::sort(vs.begin(), vs.end());
        std::vector<bool> mask(d, false);
        std::fill(mask.begin(), mask.begin() + j + 1, true);
        do {
          int k = 0;
          for (int t = 0; t < d; ++t) {
            if (mask[t]) pick[k++] = vs[t];
          }
          faces.insert(pick);
        } while (std::prev_permutation(mask.begin(), mask.end()));
      }
      f[j] = static_cast<long long>(faces.size());
    }
    return f;
  }
  std::vector<std::vector<int>> facet_sets;
  for (const auto& fc : p.facets) {
    auto vs = fc.vertices;
    std::sort(vs.begin(), vs.end());
    facet_sets.push_back(std::move(vs));
  }
  std::set<std::vector<int>> level(facet_sets.begin(), facet_sets.end());
  for (int k = d - 2; k >= 1; --k) {
    std::set<std::vector<int>> next;
    for (const auto& face : level) {
      for (const auto& g : facet_sets) {
        std::vector<int> inter;
        std::set_intersection(face.begin(), face.end(), g.begin(), g.end(),
                              std::back_inserter(inter));
        if (inter.size() < static_cast<std::size_t>(k + 1) || inter == face) continue;
        if (next.count(inter)) continue;
        if (facet_rank(p.vertices, inter) == k) next.insert(std::move(inter));
      }
    }
    f[k] = static_cast<long long>(next.size());
    level = std::move(next);
  }
  return f;
}

void finish_interior(Polytope& p) {
  const int d = p.dim;
  p.interior.assign(d, 0.0);
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    for (int j = 0; j < d; ++j) p.interior[j] += p.vertices[i][j];
  }
  for (int j = 0; j < d; ++j) p.interior[j] /= static_cast<double>(p.vertices.size());
}

Polytope hull_1d(const Deduped& dd) {
  if (dd.pts.size() < 2) throw Error(ErrorCode::DegenerateInput, "need two distinct points");
  Polytope p;
  p.dim = 1;
  p.vertices = PointCloud(1);
  p.vertices.push_back({dd.pts.front(), 1});
  p.vertices.push_back({dd.pts.back(), 1});
  p.source_index = {dd.source.front(), dd.source.back()};
  p.facets.push_back(Facet{{-1.0}, -dd.pts.front()[0], {0}});
  p.facets.push_back(Facet{{1.0}, dd.pts.back()[0], {1}});
  p.simplices = {{0}, {1}};
  p.f_vector = {2};
  finish_interior(p);
  return p;
}

// Andrew's monotone chain over lexicographically sorted points; strict turns
// only, so collinear boundary points are dropped. Returns CCW order.
std::vector<int> monotone_chain(const std::vector<const double*>& pts,
                                const std::vector<int>& ids) {
  const std::size_t n = ids.size();
  std::vector<int> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && orient2d(pts[hull[k - 2]], pts[hull[k - 1]], pts[ids[i]]) <= 0) --k;
    hull[k++] = ids[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i > 0; --i) {
    while (k >= t && orient2d(pts[hull[k - 2]], pts[hull[k - 1]], pts[ids[i - 1]]) <= 0) --k;
    hull[k++] = ids[i - 1];
  }
  hull.resize(k > 0 ? k - 1 : 0);
  return hull;
}

// Akl-Toussaint: drop points strictly inside the octagon of extreme points in
// eight directions. ids stay in lexicographic order.
std::vector<int> octagon_filter(const std::vector<const double*>& pts) {
  const int n = static_cast<int>(pts.size());
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  if (n < 64) return all;
  static constexpr double dirs[8][2] = {{1, 0},  {1, 1},   {0, 1},  {-1, 1},
                                        {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
  std::array<int, 8> best{};
  std::array<double, 8> score;
  score.fill(-std::numeric_limits<double>::infinity());
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < 8; ++k) {
      const double s = dirs[k][0] * pts[i][0] + dirs[k][1] * pts[i][1];
      if (s > score[k]) {
        score[k] = s;
        best[k] = i;
      }
    }
  }
  std::vector<int> poly;
  for (int k = 0; k < 8; ++k) {
    if (poly.empty() || poly.back() != best[k]) poly.push_back(best[k]);
  }
  while (poly.size() > 1 && poly.front() == poly.back()) poly.pop_back();
  if (poly.size() < 3) return all;
  // Extreme points in rotating directions come in CCW order; a polygon that is
  // not strictly convex (collinear picks) is still a valid inner region as
  // long as each edge turns left, which we verify before trusting it.
  const std::size_t m = poly.size();
  for (std::size_t k = 0; k < m; ++k) {
    if (orient2d(pts[poly[k]], pts[poly[(k + 1) % m]], pts[poly[(k + 2) % m]]) < 0) return all;
  }
  std::vector<int> keep;
  keep.reserve(n / 8);
  for (int i = 0; i < n; ++i) {
    bool inside = true;
    for (std::size_t k = 0; k < m && inside; ++k) {
      if (orient2d(pts[poly[k]], pts[poly[(k + 1) % m]], pts[i]) <= 0) inside = false;
    }
    if (!inside) keep.push_back(i);
  }
  return keep;
}

std::vector<int> hull_2d_ids(const Deduped& dd) {
  if (dd.pts.size() < 3) throw Error(ErrorCode::DegenerateInput, "need three affinely independent points");
  auto chain = monotone_chain(dd.pts, octagon_filter(dd.pts));
  if (chain.size() < 3) throw Error(ErrorCode::DegenerateInput, "points are collinear");
  return chain;
}

Polytope hull_2d(const Deduped& dd) {
  const auto chain = hull_2d_ids(dd);
  Polytope p;
  p.dim = 2;
  p.vertices = PointCloud(2);
  const int m = static_cast<int>(chain.size());
  for (int id : chain) {
    p.vertices.push_back({dd.pts[id], 2});
    p.source_index.push_back(dd.source[id]);
  }
  for (int k = 0; k < m; ++k) {
    const int a = k;
    const int b = (k + 1) % m;
    Facet f;
    f.normal.resize(2);
    const double* verts[2] = {p.vertices[a].data(), p.vertices[b].data()};
    hyperplane_normal(verts, 2, f.normal.data());
    f.offset = 0.5 * (dot(f.normal.data(), verts[0], 2) + dot(f.normal.data(), verts[1], 2));
    f.vertices = {a, b};
    p.facets.push_back(std::move(f));
    p.simplices.push_back({a, b});
  }
  p.f_vector = {m, m};
  finish_interior(p);
  return p;
}

// Quickhull over boundary simplices with exact orientation tests. A facet is
// visible from p when p lies on or above its hyperplane; points are only
// processed when strictly outside some facet, so coplanar and interior points
// never become vertices.
class QuickHull {
 public:
  QuickHull(const std::vector<const double*>& pts, int d) : pts_(pts), d_(d) {}

  void run();

  struct Simplex {
    std::array<int, kMaxHullDim> v{};
    std::array<int, kMaxHullDim> nb{};
    std::array<double, kMaxHullDim> normal{};
    double offset = 0.0;
    int sign = 1;
    std::vector<int> outside;
    int far = -1;
    double far_dist = 0.0;
    bool alive = true;
    long long visit = 0;
  };

  const std::vector<Simplex>& simplices() const { return f_; }

  int side(const Simplex& s, int p) const {
    std::array<const double*, kMaxHullDim + 1> ptr;
    for (int k = 0; k < d_; ++k) ptr[k] = pts_[s.v[k]];
    ptr[d_] = pts_[p];
    return s.sign * orientation(ptr.data(), d_);
  }

  // Vertex of simplex b opposite to its shared ridge with a.
  int opposite(int a, int b) const {
    for (int k = 0; k < d_; ++k) {
      if (f_[b].nb[k] == a) return f_[b].v[k];
    }
    throw Error(ErrorCode::DegenerateInput, "hull adjacency is inconsistent");
  }

 private:
  void set_plane(Simplex& s) const;
  void assign(int p, const std::vector<int>& candidates);

  const std::vector<const double*>& pts_;
  int d_;
  std::vector<Simplex> f_;
  std::vector<double> center_;
  long long stamp_ = 0;
};

void QuickHull::set_plane(Simplex& s) const {
  std::array<const double*, kMaxHullDim> ptr;
  for (int k = 0; k < d_; ++k) ptr[k] = pts_[s.v[k]];
  hyperplane_normal(ptr.data(), d_, s.normal.data());
  s.offset = dot(s.normal.data(), ptr[0], d_);
  if (dot(s.normal.data(), center_.data(), d_) > s.offset) {
    for (int j = 0; j < d_; ++j) s.normal[j] = -s.normal[j];
    s.offset = -s.offset;
  }
}

void QuickHull::assign(int p, const std::vector<int>& candidates) {
  for (int fi : candidates) {
    Simplex& s = f_[fi];
    if (side(s, p) > 0) {
      s.outside.push_back(p);
      const double dist = dot(s.normal.data(), pts_[p], d_) - s.offset;
      if (s.far < 0 || dist > s.far_dist) {
        s.far = p;
        s.far_dist = dist;
      }
      return;
    }
  }
}

void QuickHull::run() {
  const int d = d_;
  const auto basis = affine_basis(pts_, d);
  if (static_cast<int>(basis.size()) < d + 1) {
    throw Error(ErrorCode::DegenerateInput, "points lie in a proper affine subspace");
  }
  center_.assign(d, 0.0);
  for (int b : basis) {
    for (int j = 0; j < d; ++j) center_[j] += pts_[b][j] / (d + 1);
  }
  f_.resize(d + 1);
  for (int k = 0; k <= d; ++k) {
    Simplex& s = f_[k];
    int t = 0;
    for (int j = 0; j <= d; ++j) {
      if (j == k) continue;
      s.v[t] = basis[j];
      s.nb[t] = j;
      ++t;
    }
    s.sign = 1;
    s.sign = -side(s, basis[k]);
    set_plane(s);
  }
  std::vector<char> used(pts_.size(), 0);
  for (int b : basis) used[b] = 1;
  std::vector<int> initial(d + 1);
  std::iota(initial.begin(), initial.end(), 0);
  for (int p = 0; p < static_cast<int>(pts_.size()); ++p) {
    if (!used[p]) assign(p, initial);
  }
  std::vector<int> pending;
  for (int k = 0; k <= d; ++k) {
    if (!f_[k].outside.empty()) pending.push_back(k);
  }

  struct RidgeKey {
    std::array<int, kMaxHullDim> key;
    int facet;
    int pos;
  };

  while (!pending.empty()) {
    const int fi = pending.back();
    pending.pop_back();
    if (!f_[fi].alive || f_[fi].outside.empty()) continue;
    const int p = f_[fi].far;
    ++stamp_;
    std::vector<int> visible{fi};
    f_[fi].visit = stamp_;
    for (std::size_t q = 0; q < visible.size(); ++q) {
      const int g = visible[q];
      for (int t = 0; t < d; ++t) {
        const int n = f_[g].nb[t];
        if (f_[n].visit == stamp_ || f_[n].visit == -stamp_) continue;
        if (side(f_[n], p) >= 0) {
          f_[n].visit = stamp_;
          visible.push_back(n);
        } else {
          f_[n].visit = -stamp_;
        }
      }
    }
    std::vector<int> created;
    std::vector<RidgeKey> keys;
    for (int g : visible) {
      for (int t = 0; t < d; ++t) {
        const int n = f_[g].nb[t];
        if (f_[n].visit != -stamp_) continue;
        Simplex s;
        int k = 0;
        for (int j = 0; j < d; ++j) {
          if (j != t) s.v[k++] = f_[g].v[j];
        }
        s.v[d - 1] = p;
        s.nb[d - 1] = n;
        const int q = opposite(g, n);
        s.sign = 1;
        const int o = side(s, q);
        if (o == 0) throw Error(ErrorCode::DegenerateInput, "degenerate horizon facet");
        s.sign = -o;
        set_plane(s);
        const int id = static_cast<int>(f_.size());
        for (int j = 0; j < d; ++j) {
          if (f_[n].nb[j] == g) f_[n].nb[j] = id;
        }
        f_.push_back(std::move(s));
        created.push_back(id);
        for (int r = 0; r < d - 1; ++r) {
          RidgeKey rk;
          rk.key.fill(-1);
          int m = 0;
          for (int j = 0; j < d - 1; ++j) {
            if (j != r) rk.key[m++] = f_[id].v[j];
          }
          std::sort(rk.key.begin(), rk.key.begin() + m);
          rk.facet = id;
          rk.pos = r;
          keys.push_back(rk);
        }
      }
    }
    std::sort(keys.begin(), keys.end(), [](const RidgeKey& a, const RidgeKey& b) {
      return a.key < b.key;
    });
    for (std::size_t k = 0; k + 1 < keys.size(); k += 2) {
      if (keys[k].key != keys[k + 1].key) {
        throw Error(ErrorCode::DegenerateInput, "horizon ridges do not pair up");
      }
      f_[keys[k].facet].nb[keys[k].pos] = keys[k + 1].facet;
      f_[keys[k + 1].facet].nb[keys[k + 1].pos] = keys[k].facet;
    }
    for (int g : visible) {
      f_[g].alive = false;
      auto pts = std::move(f_[g].outside);
      f_[g].outside.clear();
      for (int q : pts) {
        if (q != p) assign(q, created);
      }
    }
    for (int id : created) {
      if (!f_[id].outside.empty()) pending.push_back(id);
    }
  }
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

Polytope hull_general(const Deduped& dd) {
  const int d = dd.d;
  QuickHull qh(dd.pts, d);
  qh.run();
  const auto& fs = qh.simplices();
  std::vector<int> alive;
  for (int i = 0; i < static_cast<int>(fs.size()); ++i) {
    if (fs[i].alive) alive.push_back(i);
  }
  std::vector<int> vertex_ids;
  for (int i : alive) {
    for (int k = 0; k < d; ++k) vertex_ids.push_back(fs[i].v[k]);
  }
  std::sort(vertex_ids.begin(), vertex_ids.end());
  vertex_ids.erase(std::unique(vertex_ids.begin(), vertex_ids.end()), vertex_ids.end());
  std::vector<int> local(dd.pts.size(), -1);
  Polytope p;
  p.dim = d;
  p.vertices = PointCloud(d);
  for (std::size_t k = 0; k < vertex_ids.size(); ++k) {
    local[vertex_ids[k]] = static_cast<int>(k);
    p.vertices.push_back({dd.pts[vertex_ids[k]], static_cast<std::size_t>(d)});
    p.source_index.push_back(dd.source[vertex_ids[k]]);
  }
  finish_interior(p);

  UnionFind uf(static_cast<int>(fs.size()));
  for (int i : alive) {
    for (int t = 0; t < d; ++t) {
      const int n = fs[i].nb[t];
      if (uf.find(i) == uf.find(n)) continue;
      if (qh.side(fs[i], qh.opposite(i, n)) == 0) uf.unite(i, n);
    }
  }
  std::vector<int> group_of(fs.size(), -1);
  std::vector<std::vector<int>> groups;
  for (int i : alive) {
    const int root = uf.find(i);
    if (group_of[root] < 0) {
      group_of[root] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[group_of[root]].push_back(i);
  }
  for (const auto& g : groups) {
    Facet f;
    std::vector<int> vs;
    for (int i : g) {
      for (int k = 0; k < d; ++k) vs.push_back(local[fs[i].v[k]]);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    f.vertices = vs;
    f.normal.resize(d);
    std::array<const double*, kMaxHullDim> ptr;
    for (int k = 0; k < d; ++k) ptr[k] = dd.pts[fs[g.front()].v[k]];
    hyperplane_normal(ptr.data(), d, f.normal.data());
    double off = 0.0;
    for (int v : vs) off += dot(f.normal.data(), p.vertices[v].data(), d);
    off /= static_cast<double>(vs.size());
    if (dot(f.normal.data(), p.interior.data(), d) > off) {
      for (double& x : f.normal) x = -x;
      off = -off;
    }
    f.offset = off;
    p.facets.push_back(std::move(f));
  }
  for (int i : alive) {
    std::vector<int> s(d);
    for (int k = 0; k < d; ++k) s[k] = local[fs[i].v[k]];
    p.simplices.push_back(std::move(s));
  }
  p.f_vector = compute_f_vector(p);
  return p;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace

Polytope convex_hull(const PointCloud& cloud) {
  const int d = cloud.dim();
  if (d < 1 || d > kMaxHullDim) {
    throw Error(ErrorCode::InvalidArgument, "hull dimension must be in [1, 8]");
  }
  const auto dd = dedupe(cloud);
  if (static_cast<int>(dd.pts.size()) < d + 1) {
    throw Error(ErrorCode::DegenerateInput, "need at least d+1 distinct points");
  }
  if (d == 1) return hull_1d(dd);
  if (d == 2) return hull_2d(dd);
  return hull_general(dd);
}

std::vector<std::size_t> hull_vertex_indices(const PointCloud& cloud) {
  std::vector<std::size_t> out;
  if (cloud.dim() == 2) {
    const auto dd = dedupe(cloud);
    for (int id : hull_2d_ids(dd)) out.push_back(dd.source[id]);
  } else {
    out = convex_hull(cloud).source_index;
  }
  std::sort(out.begin(), out.end());
  return out;
}

int affine_dimension(const PointCloud& cloud) {
  if (cloud.empty()) return -1;
  const auto dd = dedupe(cloud);
  return static_cast<int>(affine_basis(dd.pts, dd.d).size()) - 1;
}

PointCloud project_to_affine_hull(const PointCloud& cloud) {
  const int d = cloud.dim();
  const auto dd = dedupe(cloud);
  const auto basis_ids = affine_basis(dd.pts, d);
  const int k = static_cast<int>(basis_ids.size()) - 1;
  if (k < 1) throw Error(ErrorCode::DegenerateInput, "affine hull is a single point");
  const double* base = dd.pts[basis_ids[0]];
  std::vector<std::vector<double>> frame;
  std::vector<double> tmp(d);
  for (int i = 1; i <= k; ++i) {
    for (int j = 0; j < d; ++j) tmp[j] = dd.pts[basis_ids[i]][j] - base[j];
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : frame) {
        const double t = dot(tmp.data(), b.data(), d);
        for (int j = 0; j < d; ++j) tmp[j] -= t * b[j];
      }
    }
    const double norm = std::sqrt(dot(tmp.data(), tmp.data(), d));
    for (double& x : tmp) x /= norm;
    frame.push_back(tmp);
  }
  PointCloud out(k);
  out.reserve(cloud.size());
  std::vector<double> y(k);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (int a = 0; a < k; ++a) {
      double s = 0.0;
      for (int j = 0; j < d; ++j) s += (cloud[i][j] - base[j]) * frame[a][j];
      y[a] = s;
    }
    out.push_back(y);
  }
  return out;
}

double volume(const Polytope& p) {
  const int d = p.dim;
  if (d < 1 || p.simplices.empty()) throw Error(ErrorCode::DegenerateInput, "empty polytope");
  if (d == 1) return p.vertices[1][0] - p.vertices[0][0];
  double total = 0.0;
  if (d == 2) {
    for (const auto& s : p.simplices) {
      const auto a = p.vertices[s[0]];
      const auto b = p.vertices[s[1]];
      total += std::abs((a[0] - p.interior[0]) * (b[1] - p.interior[1]) -
                        (a[1] - p.interior[1]) * (b[0] - p.interior[0]));
    }
    return total / 2.0;
  }
  Eigen::MatrixXd m(d, d);
  for (const auto& s : p.simplices) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) m(i, j) = p.vertices[s[i]][j] - p.interior[j];
    }
    total += std::abs(m.partialPivLu().determinant());
  }
  return total / factorial(d);
}

double surface_area(const Polytope& p) {
  const int d = p.dim;
  if (d < 1 || p.simplices.empty()) throw Error(ErrorCode::DegenerateInput, "empty polytope");
  if (d == 1) return 2.0;
  double total = 0.0;
  Eigen::MatrixXd e(d - 1, d);
  for (const auto& s : p.simplices) {
    for (int i = 1; i < d; ++i) {
      for (int j = 0; j < d; ++j) e(i - 1, j) = p.vertices[s[i]][j] - p.vertices[s[0]][j];
    }
    const Eigen::MatrixXd gram = e * e.transpose();
    total += std::sqrt(std::max(0.0, gram.determinant()));
  }
  return total / factorial(d - 1);
}

bool contains_origin_interior(const Polytope& p) {
  const double scale = std::max(1.0, p.vertices.max_abs());
  for (const auto& f : p.facets) {
    if (!(f.offset > 1e-12 * scale)) return false;
  }
  return !p.facets.empty();
}

double radial_function(const Polytope& p, const double* u) {
  if (!contains_origin_interior(p)) {
    throw Error(ErrorCode::OriginOutside, "origin is not interior to the polytope");
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& f : p.facets) {
    const double c = dot(f.normal.data(), u, p.dim);
    if (c > 0.0) best = std::min(best, f.offset / c);
  }
  return best;
}

}  // namespace ggp
