#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dnormal/geometry.hpp"
#include "support.hpp"

using namespace dnormal;
using std::numbers::pi;

TEST_CASE("inner product examples") {
  CHECK(inner(Point{1, 0}, Point{0, 1}) == 0.0);
  CHECK(inner(Point{1, 1}, Point{1, 1}) == 2.0);
  CHECK(inner(Point{1, 0, 1}, Point{2, 3, 4}) == 6.0);
  CHECK_THROWS_AS(inner(Point{1, 0}, Point{1, 0, 0}), DimensionMismatch);
}

TEST_CASE("inner product is bilinear") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 1 + trial % 7;
    const Point u = testing::random_unit(rng, d);
    const Point w = testing::random_unit(rng, d);
    const Point v = testing::random_unit(rng, d);
    const double lhs = inner(add(u, w), v);
    const double rhs = inner(u, v) + inner(w, v);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)) + 1e-15);
  }
}

TEST_CASE("angle examples") {
  CHECK(angle(Point{1, 0}, Point{0, 0}, Point{0, 1}) == doctest::Approx(pi / 2).epsilon(1e-15));
  const Point a{0, 0}, b{1, 0}, c{0.5, std::sqrt(3.0) / 2};
  CHECK(angle(a, b, c) == doctest::Approx(pi / 3).epsilon(1e-14));
  CHECK_THROWS_AS(angle(Point{0, 0}, Point{1, 0}, Point{2, 0}), DegenerateAngle);
  CHECK_THROWS_AS(angle(Point{2, 0}, Point{0, 0}, Point{1, 0}), DegenerateAngle);
  CHECK_THROWS_AS(angle(Point{1, 0}, Point{1, 0}, Point{0, 1}), CoincidentPoints);
  CHECK(angle_closed(Point{0, 0}, Point{1, 0}, Point{2, 0}) == pi);
}

TEST_CASE("angle is symmetric and invariant under rigid maps and scaling") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coord(-50, 50);
  int checked = 0;
  while (checked < 500) {
    const std::size_t d = 2 + checked % 5;
    Point a(d), b(d), c(d);
    for (std::size_t k = 0; k < d; ++k) {
      a[k] = coord(rng);
      b[k] = coord(rng);
      c[k] = coord(rng);
    }
    double base = 0.0;
    try {
      base = angle(a, b, c);
    } catch (const Error&) {
      continue;
    }
    ++checked;
    CHECK(angle(c, b, a) == base);

    // Coordinate permutation plus integer translation: exact in exact
    // arithmetic, and the float formula sees the same difference vectors.
    std::vector<std::size_t> perm(d);
    for (std::size_t k = 0; k < d; ++k) perm[k] = (k + 1) % d;
    Point shift(d);
    for (double& s : shift) s = coord(rng);
    auto move = [&](const Point& p) {
      Point q(d);
      for (std::size_t k = 0; k < d; ++k) q[k] = p[perm[k]] + shift[k];
      return q;
    };
    const IntPoint ia = to_integer(a), ib = to_integer(b), ic = to_integer(c);
    const IntPoint ja = to_integer(move(a)), jb = to_integer(move(b)), jc = to_integer(move(c));
    CHECK(inner_diff_exact(ib, ia, ic) == inner_diff_exact(jb, ja, jc));
    CHECK(std::abs(angle(move(a), move(b), move(c)) - base) <= 1e-9);

    const auto rot = testing::random_orthogonal(rng, d);
    const Point zero(d, 0.0);
    const PointSet tri(d, {a, b, c});
    const PointSet moved = testing::transform(tri, rot, 3.7, zero);
    CHECK(std::abs(angle(moved[0], moved[1], moved[2]) - base) <= 1e-9);
  }
}

TEST_CASE("compare honours exact and floating margins") {
  CHECK(compare(3, 3, Tolerance::exact()) == Ordering::equal);
  CHECK(compare(1.0, 1.0 + 1e-12, Tolerance::floating(1e-9)) == Ordering::equal);
  CHECK(compare(0, 1, Tolerance::exact()) == Ordering::less);
  CHECK(compare(1, 0, Tolerance::exact()) == Ordering::greater);
  CHECK(compare(0.0, 1e-12, Tolerance::exact()) == Ordering::less);
  // Relative margin scales with the supplied scale.
  CHECK(compare(0.0, 1e-6, Tolerance::floating(1e-9, true), 1e4) == Ordering::equal);
  CHECK(compare(0.0, 1e-6, Tolerance::floating(1e-9, false), 1e4) == Ordering::less);
  CHECK_THROWS_AS(Tolerance::floating(-1.0).validate(), InvalidArgument);
}

TEST_CASE("integer conversion") {
  CHECK(is_integral(Point{1, -2, 3}));
  CHECK_FALSE(is_integral(Point{1.5}));
  CHECK_FALSE(is_integral(Point{1e12}));
  CHECK_THROWS_AS(to_integer(Point{0.25}), InvalidArgument);
  CHECK(inner_exact(IntPoint{1, 0, 1}, IntPoint{2, 3, 4}) == 6);
}
