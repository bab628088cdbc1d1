#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/prime.hpp>
#include <cmath>
#include <numbers>

#include "ggp/error.hpp"
#include "ggp/hull.hpp"

namespace ggp {

namespace {

constexpr double kLpTol = 1e-9;

// Phase one of the simplex method on  A lambda = b, lambda >= 0 with one
// artificial variable per row; Bland's rule prevents cycling. Returns the
// minimal sum of artificials.
double phase_one(std::vector<std::vector<double>> a, std::vector<double> b) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  const int total = cols + rows;
  for (int r = 0; r < rows; ++r) {
    if (b[r] < 0.0) {
      b[r] = -b[r];
      for (double& x : a[r]) x = -x;
    }
  }
  // Tableau rows: constraints then the objective (reduced costs) row.
  std::vector<std::vector<double>> t(rows + 1, std::vector<double>(total + 1, 0.0));
  std::vector<int> basis(rows);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) t[r][c] = a[r][c];
    t[r][cols + r] = 1.0;
    t[r][total] = b[r];
    basis[r] = cols + r;
  }
  for (int c = 0; c <= total; ++c) {
    double s = 0.0;
    for (int r = 0; r < rows; ++r) s += t[r][c];
    t[rows][c] = (c >= cols && c < total) ? 0.0 : -s;
  }
  const int max_iter = 50 * (total + rows) + 1000;
  for (int iter = 0; iter < max_iter; ++iter) {
    int enter = -1;
    for (int c = 0; c < total; ++c) {
      if (t[rows][c] < -kLpTol) {
        enter = c;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best = 0.0;
    for (int r = 0; r < rows; ++r) {
      if (t[r][enter] > kLpTol) {
        const double ratio = t[r][total] / t[r][enter];
        if (leave < 0 || ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
    }
    if (leave < 0) break;  // unbounded direction cannot occur in phase one
    const double piv = t[leave][enter];
    for (double& x : t[leave]) x /= piv;
    for (int r = 0; r <= rows; ++r) {
      if (r == leave || t[r][enter] == 0.0) continue;
      const double f = t[r][enter];
      for (int c = 0; c <= total; ++c) t[r][c] -= f * t[leave][c];
    }
    basis[leave] = enter;
  }
  return -t[rows][total];
}

}  // namespace

bool is_vertex_lp(const PointCloud& cloud, std::size_t index) {
  if (index >= cloud.size()) throw Error(ErrorCode::IndexOutOfRange, "point index out of range");
  const int d = cloud.dim();
  const auto x = cloud[index];
  double scale = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (int j = 0; j < d; ++j) scale = std::max(scale, std::abs(cloud[i][j] - x[j]));
  }
  if (cloud.size() == 1) return true;
  if (scale == 0.0) return false;  // every other point duplicates x
  // x in conv(others) iff sum l_k (y_k - x) = 0, sum l_k = 1, l >= 0 is feasible.
  const int m = static_cast<int>(cloud.size()) - 1;
  std::vector<std::vector<double>> a(d + 1, std::vector<double>(m));
  std::vector<double> b(d + 1, 0.0);
  int col = 0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (i == index) continue;
    for (int j = 0; j < d; ++j) a[j][col] = (cloud[i][j] - x[j]) / scale;
    a[d][col] = 1.0;
    ++col;
  }
  b[d] = 1.0;
  return phase_one(std::move(a), std::move(b)) > kLpTol;
}

std::vector<double> sphere_design(int d, int count) {
  if (d < 1 || count < 1) throw Error(ErrorCode::InvalidArgument, "sphere design needs d, count >= 1");
  std::vector<double> out(static_cast<std::size_t>(count) * d);
  if (d == 1) {
    for (int k = 0; k < count; ++k) out[k] = (k % 2 == 0) ? 1.0 : -1.0;
    return out;
  }
  if (d == 2) {
    for (int k = 0; k < count; ++k) {
      const double t = 2.0 * std::numbers::pi * (k + 0.5) / count;
      out[2 * k] = std::cos(t);
      out[2 * k + 1] = std::sin(t);
    }
    return out;
  }
  if (d == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - (2.0 * k + 1.0) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * k;
      out[3 * k] = r * std::cos(phi);
      out[3 * k + 1] = r * std::sin(phi);
      out[3 * k + 2] = z;
    }
    return out;
  }
  // Halton points pushed through the normal quantile, then normalized.
  for (int k = 0; k < count; ++k) {
    double norm2 = 0.0;
    for (int j = 0; j < d; ++j) {
      const unsigned base = boost::math::prime(j);
      double f = 1.0;
      double h = 0.0;
      for (unsigned i = static_cast<unsigned>(k) + 1; i > 0; i /= base) {
        f /= base;
        h += f * (i % base);
      }
      const double g = std::numbers::sqrt2 * boost::math::erf_inv(2.0 * h - 1.0);
      out[k * d + j] = g;
      norm2 += g * g;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (int j = 0; j < d; ++j) out[k * d + j] *= inv;
  }
  return out;
}

bool is_vertex_ball(const PointCloud& cloud, std::size_t index) {
  if (index >= cloud.size()) throw Error(ErrorCode::IndexOutOfRange, "point index out of range");
  const int d = cloud.dim();
  const auto x = cloud[index];
  double xn2 = 0.0;
  for (int j = 0; j < d; ++j) xn2 += x[j] * x[j];
  if (xn2 == 0.0) throw Error(ErrorCode::OriginPoint, "candidate point is the origin");
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (i != index && std::equal(x.begin(), x.end(), cloud[i].begin())) return false;
  }
  const double radius = 0.5 * std::sqrt(xn2);
  const int count = 10 * (1 << (2 * (d - 1)));
  const auto design = sphere_design(d, count);
  std::vector<double> z(d);
  for (int k = 0; k < count; ++k) {
    double zn2 = 0.0;
    for (int j = 0; j < d; ++j) {
      z[j] = 0.5 * x[j] + radius * design[k * d + j];
      zn2 += z[j] * z[j];
    }
    // Every ball B(y/2, |y|/2) passes through the origin; points next to it decide nothing.
    if (zn2 < 1e-18 * xn2) continue;
    bool covered = false;
    for (std::size_t i = 0; i < cloud.size() && !covered; ++i) {
      if (i == index) continue;
      // z in B(y/2, |y|/2)  <=>  |z|^2 <= <z, y>.
      double zy = 0.0;
      for (int j = 0; j < d; ++j) zy += z[j] * cloud[i][j];
      if (zn2 <= zy * (1.0 + 1e-12)) covered = true;
    }
    if (!covered) return true;
  }
  return false;
}

}  // namespace ggp
