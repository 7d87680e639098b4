#include "dnormal/geometry.hpp"

#include <cmath>
#include <numbers>

namespace dnormal {

double Tolerance::margin(double scale) const {
  if (is_exact()) return 0.0;
  return scale_relative ? eq_margin * scale : eq_margin;
}

void Tolerance::validate() const {
  if (!(eq_margin >= 0.0) || !std::isfinite(eq_margin)) {
    throw InvalidArgument("tolerance eq_margin must be a finite nonnegative real");
  }
}

Ordering compare(double x, double y, const Tolerance& tol, double scale) {
  const double diff = x - y;
  if (std::abs(diff) <= tol.margin(scale)) return Ordering::equal;
  return diff < 0 ? Ordering::less : Ordering::greater;
}

namespace {

void require_same_dim(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw DimensionMismatch("dimension mismatch: " + std::to_string(u.size()) + " vs " +
                            std::to_string(v.size()));
  }
}

}  // namespace

double inner(std::span<const double> u, std::span<const double> v) {
  require_same_dim(u, v);
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double squared_norm(std::span<const double> u) { return inner(u, u); }

double norm(std::span<const double> u) { return std::sqrt(squared_norm(u)); }

double squared_distance(std::span<const double> p, std::span<const double> q) {
  require_same_dim(p, q);
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p[i] - q[i];
    s += d * d;
  }
  return s;
}

double distance(std::span<const double> p, std::span<const double> q) {
  return std::sqrt(squared_distance(p, q));
}

Point subtract(std::span<const double> a, std::span<const double> b) {
  require_same_dim(a, b);
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Point add(std::span<const double> a, std::span<const double> b) {
  require_same_dim(a, b);
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Point scaled(std::span<const double> a, double s) {
  Point out(a.begin(), a.end());
  for (double& x : out) x *= s;
  return out;
}

Point axpy(std::span<const double> a, double s, std::span<const double> b) {
  require_same_dim(a, b);
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s * b[i];
  return out;
}

Point normalized(std::span<const double> a) {
  const double n = norm(a);
  if (n == 0.0) throw InvalidArgument("cannot normalize the zero vector");
  return scaled(a, 1.0 / n);
}

double angle_closed(std::span<const double> a, std::span<const double> b,
                    std::span<const double> c) {
  require_same_dim(a, b);
  require_same_dim(b, c);
  Point ba = subtract(a, b);
  Point bc = subtract(c, b);
  const double na = norm(ba);
  const double nc = norm(bc);
  if (na == 0.0 || nc == 0.0) throw CoincidentPoints("angle vertex coincides with a side point");
  // 2 atan2(|a^ - c^|, |a^ + c^|) stays accurate near 0 and pi.
  double diff2 = 0.0;
  double sum2 = 0.0;
  for (std::size_t i = 0; i < ba.size(); ++i) {
    const double x = ba[i] / na;
    const double y = bc[i] / nc;
    diff2 += (x - y) * (x - y);
    sum2 += (x + y) * (x + y);
  }
  return 2.0 * std::atan2(std::sqrt(diff2), std::sqrt(sum2));
}

double angle(std::span<const double> a, std::span<const double> b, std::span<const double> c) {
  const double theta = angle_closed(a, b, c);
  if (theta <= 0.0 || theta >= std::numbers::pi) {
    throw DegenerateAngle("degenerate angle: the three points are collinear");
  }
  return theta;
}

double cos_angle(std::span<const double> a, std::span<const double> b,
                 std::span<const double> c) {
  Point ba = subtract(a, b);
  Point bc = subtract(c, b);
  const double na = norm(ba);
  const double nc = norm(bc);
  if (na == 0.0 || nc == 0.0) throw CoincidentPoints("angle vertex coincides with a side point");
  return inner(ba, bc) / (na * nc);
}

bool is_integral(std::span<const double> p) {
  for (double x : p) {
    if (!std::isfinite(x) || std::trunc(x) != x) return false;
    if (std::abs(x) > static_cast<double>(kExactCoordinateLimit)) return false;
  }
  return true;
}

IntPoint to_integer(std::span<const double> p) {
  if (!is_integral(p)) {
    throw InvalidArgument("exact-integer mode requires integer coordinates of magnitude <= 2^31");
  }
  IntPoint out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = static_cast<std::int64_t>(p[i]);
  return out;
}

Int128 inner_exact(std::span<const std::int64_t> u, std::span<const std::int64_t> v) {
  if (u.size() != v.size()) throw DimensionMismatch("dimension mismatch in exact inner product");
  Int128 s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) s += static_cast<Int128>(u[i]) * v[i];
  return s;
}

Int128 inner_diff_exact(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                          std::span<const std::int64_t> c) {
  if (a.size() != b.size() || a.size() != c.size()) {
    throw DimensionMismatch("dimension mismatch in exact inner product");
  }
  Int128 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += static_cast<Int128>(b[i] - a[i]) * (c[i] - a[i]);
  }
  return s;
}

}  // namespace dnormal

namespace dnormal {

UnitVector::UnitVector(Point coords, double margin) : coords_(std::move(coords)) {
  if (std::abs(norm(coords_) - 1.0) > margin) {
    throw InvalidArgument("vector is not of unit length");
  }
}

UnitVector UnitVector::normalize(std::span<const double> v) {
  return UnitVector(normalized(v), 1e-12);
}

}  // namespace dnormal
