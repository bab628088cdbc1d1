#include <Eigen/Dense>
#include <boost/math/special_functions/binomial.hpp>
#include <cmath>

#include "ggp/error.hpp"
#include "ggp/hull.hpp"
#include "ggp/model.hpp"

namespace ggp {

namespace {

// vol_i of the projection of the vertex set onto span(frame columns).
double projected_volume(const Polytope& p, const Eigen::MatrixXd& frame) {
  const int i = static_cast<int>(frame.cols());
  const int d = p.dim;
  if (i == 1) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t k = 0; k < p.vertices.size(); ++k) {
      double s = 0.0;
      for (int j = 0; j < d; ++j) s += frame(j, 0) * p.vertices[k][j];
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    return hi - lo;
  }
  PointCloud proj(i);
  proj.reserve(p.vertices.size());
  std::vector<double> y(i);
  for (std::size_t k = 0; k < p.vertices.size(); ++k) {
    for (int a = 0; a < i; ++a) {
      double s = 0.0;
      for (int j = 0; j < d; ++j) s += frame(j, a) * p.vertices[k][j];
      y[a] = s;
    }
    proj.push_back(y);
  }
  return volume(convex_hull(proj));
}

}  // namespace

Estimate kubota_estimate(const Polytope& p, int i, int n_directions, RngStream& rng) {
  const int d = p.dim;
  if (i < 1 || i > d) throw Error(ErrorCode::IndexOutOfRange, "intrinsic volume index out of range");
  if (n_directions < 1) throw Error(ErrorCode::InvalidArgument, "n_directions must be >= 1");
  if (i == d) return {volume(p), 0.0};
  const double constant = boost::math::binomial_coefficient<double>(d, i) * unit_ball_volume(d) /
                          (unit_ball_volume(i) * unit_ball_volume(d - i));
  Eigen::MatrixXd g(d, i);
  double sum = 0.0;
  double sum2 = 0.0;
  for (int n = 0; n < n_directions; ++n) {
    for (int a = 0; a < i; ++a) {
      for (int j = 0; j < d; ++j) g(j, a) = rng.normal();
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    const Eigen::MatrixXd frame = qr.householderQ() * Eigen::MatrixXd::Identity(d, i);
    const double v = projected_volume(p, frame);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / n_directions;
  double se = 0.0;
  if (n_directions > 1) {
    const double var = std::max(0.0, (sum2 - n_directions * mean * mean) / (n_directions - 1));
    se = std::sqrt(var / n_directions);
  }
  return {constant * mean, constant * se};
}

Estimate intrinsic_volume(const Polytope& p, int i, int n_directions, RngStream& rng) {
  const int d = p.dim;
  if (i < 1 || i > d) throw Error(ErrorCode::IndexOutOfRange, "intrinsic volume index out of range");
  if (n_directions < 1) throw Error(ErrorCode::InvalidArgument, "n_directions must be >= 1");
  if (i == d) return {volume(p), 0.0};
  if (i == d - 1) return {surface_area(p) / 2.0, 0.0};
  return kubota_estimate(p, i, n_directions, rng);
}

}  // namespace ggp
