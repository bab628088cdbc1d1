#include "ggp/point.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ggp/error.hpp"

namespace ggp {

PointCloud::PointCloud(int dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim_ < 1) throw Error(ErrorCode::InvalidArgument, "point dimension must be >= 1");
  if (coords_.size() % dim_ != 0) {
    throw Error(ErrorCode::InvalidArgument,
                "coordinate count is not a multiple of dim " + std::to_string(dim_));
  }
  for (double x : coords_) {
    if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "non-finite coordinate");
  }
}

void PointCloud::push_back(std::span<const double> p) {
  if (static_cast<int>(p.size()) != dim_) {
    throw Error(ErrorCode::InvalidArgument, "point has wrong dimension");
  }
  coords_.insert(coords_.end(), p.begin(), p.end());
}

double PointCloud::max_abs() const {
  double m = 0.0;
  for (double x : coords_) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace ggp
