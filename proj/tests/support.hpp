#pragma once

// Shared generators for the unit and acceptance suites.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "dnormal/geometry.hpp"
#include "dnormal/point_set.hpp"

namespace dnormal::testing {

inline PointSet regular_polygon(std::size_t k, double radius = 1.0) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < k; ++i) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(k);
    pts.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  return PointSet(2, pts);
}

inline PointSet unit_square() { return PointSet(2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

/// n distinct integer points in [-range, range]^d.
inline PointSet random_integer_set(std::mt19937_64& rng, std::size_t d, std::size_t n,
                                   int range = 100) {
  std::uniform_int_distribution<int> coord(-range, range);
  std::set<Point> seen;
  std::vector<Point> pts;
  while (pts.size() < n) {
    Point p(d);
    for (double& x : p) x = coord(rng);
    if (seen.insert(p).second) pts.push_back(p);
  }
  return PointSet(d, pts);
}

inline Point random_unit(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> g;
  Point p(d);
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (double& x : p) {
      x = g(rng);
      n2 += x * x;
    }
  } while (n2 < 1e-12);
  for (double& x : p) x /= std::sqrt(n2);
  return p;
}

/// Random orthogonal d x d matrix (rows orthonormal), Gram-Schmidt on
/// Gaussian rows.
inline std::vector<Point> random_orthogonal(std::mt19937_64& rng, std::size_t d) {
  std::vector<Point> rows;
  while (rows.size() < d) {
    Point v = random_unit(rng, d);
    for (const Point& r : rows) {
      const double c = inner(v, r);
      for (std::size_t k = 0; k < d; ++k) v[k] -= c * r[k];
    }
    const double n = norm(v);
    if (n < 1e-6) continue;
    for (double& x : v) x /= n;
    rows.push_back(v);
  }
  return rows;
}

inline PointSet transform(const PointSet& v, const std::vector<Point>& rows, double scale,
                          const Point& shift) {
  std::vector<Point> out;
  for (const Point& p : v.points()) {
    Point q(v.dim());
    for (std::size_t r = 0; r < v.dim(); ++r) q[r] = scale * inner(rows[r], p) + shift[r];
    out.push_back(q);
  }
  return PointSet(v.dim(), out);
}

}  // namespace dnormal::testing
