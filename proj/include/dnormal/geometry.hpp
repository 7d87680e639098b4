#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dnormal {

/// 128-bit accumulator for exact integer inner products.
__extension__ using Int128 = __int128;

/// Coordinates of a point or vector in R^d.
using Point = std::vector<double>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two points that must differ coincide (under the active tolerance).
class CoincidentPoints : public Error {
 public:
  using Error::Error;
};

/// A point set contains the same point twice.
class DuplicatePoints : public Error {
 public:
  using Error::Error;
};

/// An angle measured exactly 0 or pi; angles live in the open range (0, pi).
class DegenerateAngle : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Tolerance model
// ---------------------------------------------------------------------------

enum class Arithmetic { exact_integer, floating };

/// Comparison policy shared by every predicate in the library.
///
/// In floating mode two reals are EQUAL when they differ by at most
/// `eq_margin`, or by at most `eq_margin * scale` when `scale_relative` is
/// set and the caller supplies a scale (slab tests pass |q - p|^2).
/// Exact-integer mode is only legal on integer inputs and uses margin 0.
struct Tolerance {
  Arithmetic mode = Arithmetic::floating;
  double eq_margin = 1e-9;
  bool scale_relative = true;

  static Tolerance exact() { return {Arithmetic::exact_integer, 0.0, false}; }
  static Tolerance floating(double margin = 1e-9, bool relative = true) {
    return {Arithmetic::floating, margin, relative};
  }

  bool is_exact() const { return mode == Arithmetic::exact_integer; }
  double margin(double scale = 1.0) const;
  void validate() const;
};

enum class Ordering { less, equal, greater };

Ordering compare(double x, double y, const Tolerance& tol, double scale = 1.0);

// ---------------------------------------------------------------------------
// Vector primitives
// ---------------------------------------------------------------------------

double inner(std::span<const double> u, std::span<const double> v);
double squared_norm(std::span<const double> u);
double norm(std::span<const double> u);
double squared_distance(std::span<const double> p, std::span<const double> q);
double distance(std::span<const double> p, std::span<const double> q);

Point subtract(std::span<const double> a, std::span<const double> b);
Point add(std::span<const double> a, std::span<const double> b);
Point scaled(std::span<const double> a, double s);
/// a + s * b
Point axpy(std::span<const double> a, double s, std::span<const double> b);
Point normalized(std::span<const double> a);

/// Measure of the angle abc (vertex b) in the open range (0, pi).
/// Throws CoincidentPoints when a or c coincides with b, and
/// DegenerateAngle when the three points are collinear (angle 0 or pi).
double angle(std::span<const double> a, std::span<const double> b, std::span<const double> c);

/// Measure of the angle abc in the closed range [0, pi]; only coincident
/// vertices are rejected. Used where collinear configurations are legitimate
/// (betweenness on near-collinear classes).
double angle_closed(std::span<const double> a, std::span<const double> b,
                    std::span<const double> c);

/// Cosine of the angle abc; throws CoincidentPoints on a zero-length side.
double cos_angle(std::span<const double> a, std::span<const double> b, std::span<const double> c);

// ---------------------------------------------------------------------------
// Integer helpers for exact mode
// ---------------------------------------------------------------------------

using IntPoint = std::vector<std::int64_t>;

/// Largest coordinate magnitude accepted in exact mode; keeps every inner
/// product of differences inside a 128-bit accumulator.
inline constexpr std::int64_t kExactCoordinateLimit = std::int64_t{1} << 31;

bool is_integral(std::span<const double> p);
/// Converts an integer-valued point; throws InvalidArgument otherwise.
IntPoint to_integer(std::span<const double> p);

Int128 inner_exact(std::span<const std::int64_t> u, std::span<const std::int64_t> v);
/// <b - a, c - a>
Int128 inner_diff_exact(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                          std::span<const std::int64_t> c);

template <typename T>
int sign(T v) {
  return (T{0} < v) - (v < T{0});
}

}  // namespace dnormal

namespace dnormal {

/// A vector of Euclidean norm 1 (within the construction margin).
class UnitVector {
 public:
  /// Throws InvalidArgument unless | |coords| - 1 | <= margin.
  explicit UnitVector(Point coords, double margin = 1e-9);
  static UnitVector normalize(std::span<const double> v);

  const Point& coords() const { return coords_; }
  std::size_t dim() const { return coords_.size(); }
  operator std::span<const double>() const { return coords_; }

 private:
  Point coords_;
};

}  // namespace dnormal
