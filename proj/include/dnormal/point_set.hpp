#pragma once

#include <cstddef>
#include <vector>

#include "dnormal/geometry.hpp"

namespace dnormal {

/// An ordered finite point set in R^dim. Points are addressed by index.
class PointSet {
 public:
  PointSet() = default;
  /// Throws InvalidArgument on dim == 0, an empty list, a coordinate count
  /// different from dim, or a non-finite coordinate.
  PointSet(std::size_t dim, std::vector<Point> points);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const { return points_; }

  bool is_integral() const;

  /// Points restricted to the given indices, in the given order.
  PointSet subset(const std::vector<std::size_t>& indices) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Point> points_;
};

/// Throws DuplicatePoints when two points coincide. Exact mode compares
/// coordinates exactly; floating mode treats points as coincident when
/// |p - q| <= eq_margin * max(1, |p|, |q|).
void require_distinct(const PointSet& v, const Tolerance& tol);

bool coincident(const Point& p, const Point& q, const Tolerance& tol);

}  // namespace dnormal
