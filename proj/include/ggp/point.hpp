#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ggp {

/// Points in R^dim stored row-major in one flat buffer.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(int dim) : dim_(dim) {}
  PointCloud(int dim, std::vector<double> coords);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const {
    return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }
  std::span<double> operator[](std::size_t i) {
    return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }

  void push_back(std::span<const double> p);
  void reserve(std::size_t n) { coords_.reserve(n * dim_); }
  void clear() { coords_.clear(); }

  const std::vector<double>& coords() const noexcept { return coords_; }
  std::vector<double>& coords() noexcept { return coords_; }

  /// Largest absolute coordinate, used to scale tolerances.
  double max_abs() const;

 private:
  int dim_ = 0;
  std::vector<double> coords_;
};

/// A point (v, h) in R^(d-1) x R, the image space of the scaling transform.
struct ScaledPoint {
  std::vector<double> v;
  double h = 0.0;
};

}  // namespace ggp
