#include "dnormal/point_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace dnormal {

PointSet::PointSet(std::size_t dim, std::vector<Point> points)
    : dim_(dim), points_(std::move(points)) {
  if (dim_ == 0) throw InvalidArgument("point set dimension must be positive");
  if (points_.empty()) throw InvalidArgument("point set must contain at least one point");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].size() != dim_) {
      throw InvalidArgument("point " + std::to_string(i) + " has " +
                            std::to_string(points_[i].size()) + " coordinates, expected " +
                            std::to_string(dim_));
    }
    for (double x : points_[i]) {
      if (!std::isfinite(x)) {
        throw InvalidArgument("point " + std::to_string(i) + " has a non-finite coordinate");
      }
    }
  }
}

bool PointSet::is_integral() const {
  return std::all_of(points_.begin(), points_.end(),
                     [](const Point& p) { return dnormal::is_integral(p); });
}

PointSet PointSet::subset(const std::vector<std::size_t>& indices) const {
  std::vector<Point> pts;
  pts.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= points_.size()) throw InvalidArgument("subset index out of range");
    pts.push_back(points_[i]);
  }
  return PointSet(dim_, std::move(pts));
}

bool coincident(const Point& p, const Point& q, const Tolerance& tol) {
  if (tol.is_exact()) return p == q;
  const double scale = std::max({1.0, norm(p), norm(q)});
  return distance(p, q) <= tol.eq_margin * scale;
}

void require_distinct(const PointSet& v, const Tolerance& tol) {
  const std::size_t n = v.size();
  if (tol.is_exact() || tol.eq_margin == 0.0) {
    // Exact duplicates: sort indices lexicographically and scan neighbours.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    for (std::size_t k = 1; k < n; ++k) {
      if (v[order[k - 1]] == v[order[k]]) {
        throw DuplicatePoints("points " + std::to_string(std::min(order[k - 1], order[k])) +
                              " and " + std::to_string(std::max(order[k - 1], order[k])) +
                              " coincide");
      }
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coincident(v[i], v[j], tol)) {
        throw DuplicatePoints("points " + std::to_string(i) + " and " + std::to_string(j) +
                              " coincide");
      }
    }
  }
}

}  // namespace dnormal
