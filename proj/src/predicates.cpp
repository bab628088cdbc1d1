#include "ggp/predicates.hpp"

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>
#include <utility>

#include "ggp/error.hpp"

namespace ggp {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Rank of a dense rational matrix by Gaussian elimination; when square the
// determinant sign is reported through det_sign.
int rational_elimination(std::vector<std::vector<Rational>>& m, int cols, int* det_sign) {
  const int rows = static_cast<int>(m.size());
  int rank = 0;
  int sign = 1;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      std::swap(m[pivot], m[rank]);
      sign = -sign;
    }
    if (m[rank][c] < 0) sign = -sign;
    for (int r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (int k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  if (det_sign) *det_sign = (rank == rows && rows == cols) ? sign : 0;
  return rank;
}

int exact_orientation(const double* const* pts, int d) {
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m[i][j] = Rational(pts[i + 1][j]) - Rational(pts[0][j]);
  }
  int sign = 0;
  rational_elimination(m, d, &sign);
  return sign;
}

}  // namespace

int orient2d(const double* a, const double* b, const double* c) {
  const double t1 = (b[0] - a[0]) * (c[1] - a[1]);
  const double t2 = (b[1] - a[1]) * (c[0] - a[0]);
  const double det = t1 - t2;
  // Shewchuk's first-stage bound for the 2x2 orientation determinant.
  const double bound = (3.0 + 16.0 * kEps) * kEps * (std::abs(t1) + std::abs(t2));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  const double* p[3] = {a, b, c};
  return exact_orientation(p, 2);
}

int orientation(const double* const* pts, int d) {
  if (d == 2) return orient2d(pts[0], pts[1], pts[2]);
  if (d < 1 || d > kMaxHullDim) {
    throw Error(ErrorCode::InvalidArgument, "orientation dimension out of range");
  }
  std::array<std::array<double, kMaxHullDim>, kMaxHullDim> m{};
  double row_norms = 1.0;
  double padded_norms = 1.0;
  for (int i = 0; i < d; ++i) {
    double r2 = 0.0;
    double e2 = 0.0;
    for (int j = 0; j < d; ++j) {
      const double x = pts[i + 1][j] - pts[0][j];
      m[i][j] = x;
      r2 += x * x;
      const double e = std::abs(pts[i + 1][j]) + std::abs(pts[0][j]);
      e2 += e * e;
    }
    const double r = std::sqrt(r2);
    row_norms *= r;
    padded_norms *= r + 2.0 * kEps * std::sqrt(e2);
  }
  double det = 1.0;
  for (int c = 0; c < d; ++c) {
    int pivot = c;
    for (int r = c + 1; r < d; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[pivot][c])) pivot = r;
    }
    if (m[pivot][c] == 0.0) {
      det = 0.0;
      break;
    }
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < d; ++r) {
      const double f = m[r][c] / m[c][c];
      for (int k = c + 1; k < d; ++k) m[r][k] -= f * m[c][k];
    }
  }
  // Input rounding (row perturbations) plus elimination error, both bounded
  // through Hadamard's inequality.
  const double bound = 4.0 * (padded_norms - row_norms) +
                       static_cast<double>(1 << d) * d * d * kEps * padded_norms;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return exact_orientation(pts, d);
}

int exact_affine_rank(const double* base, const std::vector<const double*>& others, int d) {
  if (others.empty()) return 0;
  std::vector<std::vector<Rational>> m(others.size(), std::vector<Rational>(d));
  for (std::size_t i = 0; i < others.size(); ++i) {
    for (int j = 0; j < d; ++j) m[i][j] = Rational(others[i][j]) - Rational(base[j]);
  }
  return rational_elimination(m, d, nullptr);
}

}  // namespace ggp
