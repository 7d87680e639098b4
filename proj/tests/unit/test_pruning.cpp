#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "dnormal/pruning.hpp"

using namespace dnormal;

namespace {

std::vector<Point> on_line(const std::vector<double>& pos, const Point& base, const Point& dir) {
  std::vector<Point> out;
  for (double s : pos) out.push_back(axpy(base, s, dir));
  return out;
}

}  // namespace

TEST_CASE("prune parameters") {
  CHECK(prune_t(0.1) == 11);
  CHECK(prune_t(0.2) == 6);
  CHECK(prune_t(0.5) == 3);
  CHECK(prune_class_size(11, 1) == 23);
  CHECK(prune_class_size(6, 2) == 73);
  CHECK(prune_class_size(3, 0) == 3);
  CHECK_THROWS_AS(prune_t(std::numbers::pi / 3), InvalidArgument);
  CHECK_THROWS_AS(prune_t(0.0), InvalidArgument);
  CHECK_THROWS_AS(prune_class_size(1000, 40), InvalidArgument);
}

TEST_CASE("max line angle") {
  CHECK(max_line_angle(on_line({0, 1, 3, 7}, {1, 2, 3}, {0, 0, 1})) == doctest::Approx(0.0));
  CHECK(max_line_angle({{0, 0}, {1, 0}, {0, 1}}) == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("betweenness order on collinear points") {
  std::mt19937_64 rng(3);
  std::vector<double> pos{0, 1, 2, 3, 4, 5, 6, 7};
  std::shuffle(pos.begin(), pos.end(), rng);
  const auto pts = on_line(pos, {1, 1}, {0.6, 0.8});
  const auto order = betweenness_order({pts, 0.1});
  REQUIRE(order.size() == pos.size());
  const bool up = pos[order.front()] < pos[order.back()];
  for (std::size_t x = 1; x < order.size(); ++x) {
    CHECK((pos[order[x]] > pos[order[x - 1]]) == up);
  }
  // Starts at the lower-indexed endpoint of the diameter.
  const std::size_t lo = std::min_element(pos.begin(), pos.end()) - pos.begin();
  const std::size_t hi = std::max_element(pos.begin(), pos.end()) - pos.begin();
  CHECK(order.front() == std::min(lo, hi));
}

TEST_CASE("betweenness order survives small jitter") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> j(-1e-3, 1e-3);
  std::vector<Point> pts;
  for (int s = 0; s < 12; ++s) pts.push_back({double(s), j(rng), j(rng)});
  std::vector<std::size_t> truth(12);
  for (std::size_t s = 0; s < 12; ++s) truth[s] = s;
  CHECK(betweenness_order({pts, 0.05}) == truth);
}

TEST_CASE("betweenness order edge cases") {
  CHECK(betweenness_order({{{0, 0}, {1, 1}}, 0.1}) == std::vector<std::size_t>{0, 1});
  CHECK(betweenness_order({{{1, 1}, {0, 0}}, 0.1}) == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(betweenness_order({{{0, 0}, {1, 0}, {0.5, 0.5}}, 0.1}), BetweennessInconsistent);
  CHECK_THROWS_AS(betweenness_order({{{0, 0}}, 0.1}), InvalidArgument);
}

TEST_CASE("generator") {
  const auto one = gen_near_collinear(1, 0.5, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].points.size() == 3);
  CHECK(max_line_angle(one[0].points) < 0.5);

  const auto two = gen_near_collinear(2, 0.1, 7);
  REQUIRE(two.size() == 2);
  for (const auto& c : two) {
    CHECK(c.points.size() == 23);
    CHECK(max_line_angle(c.points) < 0.1);
  }
  const auto again = gen_near_collinear(2, 0.1, 7);
  for (std::size_t i = 0; i < 2; ++i) CHECK(again[i].points == two[i].points);
  CHECK_THROWS_AS(gen_near_collinear(2, 1.2, 7), InvalidArgument);
}

TEST_CASE("prune with one class") {
  const auto cls = gen_near_collinear(1, 0.5, 2);
  const PruneWitness w = prune(cls, 0.5);
  REQUIRE(w.abc.size() == 1);
  CHECK(w.check.ok());
  CHECK(w.check.max_ratio == 0.0);
  const auto& [a, b, c] = w.abc[0];
  CHECK(a != b);
  CHECK(b != c);
  CHECK(distance(cls[0].points[a], cls[0].points[c]) ==
        doctest::Approx(std::sqrt([&] {
          double best = 0;
          for (const Point& x : cls[0].points)
            for (const Point& y : cls[0].points) best = std::max(best, squared_distance(x, y));
          return best;
        }())));
}

TEST_CASE("prune finds the analytically known window") {
  // Class 0: wide uniform spacing. Class 1: gaps 0.5^s, whose first window
  // of three points with diameter <= 0.1 diam starts at point 4.
  const double eps = 0.1;
  std::vector<double> wide, narrow{0.0};
  for (int s = 0; s < 23; ++s) wide.push_back(10.0 * s);
  for (int s = 0; s < 22; ++s) narrow.push_back(narrow.back() + std::pow(0.5, s));
  const NearCollinearClass big{on_line(wide, {0, 0, 0}, {1, 0, 0}), eps};
  const NearCollinearClass small{on_line(narrow, {0, 5, 0}, {0, 0.6, 0.8}), eps};

  const PruneWitness w = prune({small, big}, eps);
  CHECK(w.class_order == std::vector<std::size_t>{1, 0});
  CHECK(w.pruned[0].size() == 23);
  CHECK(w.pruned[1] == std::vector<std::size_t>{4, 5, 6});
  CHECK(w.check.ok());
  const double d1 = distance(w.points[0][0], w.points[0][2]);
  const double d2 = distance(w.points[1][0], w.points[1][2]);
  CHECK(d2 <= 0.1 * d1);
  CHECK(w.iteration_sizes == std::vector<std::vector<std::size_t>>{{23, 23}, {3}});
}

TEST_CASE("prune on generator output") {
  for (auto [k, eps] : {std::pair<std::size_t, double>{2, 0.1}, {3, 0.2}, {2, 0.3}, {4, 0.5}}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      CAPTURE(k);
      CAPTURE(seed);
      const auto cls = gen_near_collinear(k, eps, seed);
      const PruneWitness w = prune(cls, eps);
      const std::size_t t = prune_t(eps);
      CHECK(w.t == t);
      REQUIRE(w.iteration_sizes.size() == k);
      for (std::size_t i = 0; i < k; ++i) {
        CHECK(w.iteration_sizes[i].size() == k - i);
        for (std::size_t s : w.iteration_sizes[i]) CHECK(s == prune_class_size(t, k - 1 - i));
      }
      CHECK(w.check.q2);
      CHECK(w.check.q3);
      CHECK(w.check.q4);
      CHECK(w.check.min_angle > std::numbers::pi - eps);
      CHECK(w.check.max_ratio <= eps);
      CHECK(w.check.min_factor >= 0.5);
      const PruneWitness again = prune(cls, eps);
      CHECK(again.abc == w.abc);
      CHECK(again.class_order == w.class_order);
    }
  }
}

TEST_CASE("prune input errors") {
  auto cls = gen_near_collinear(2, 0.1, 7);
  CHECK_THROWS_AS(prune(cls, 1.2), InvalidArgument);
  CHECK_THROWS_AS(prune({}, 0.1), InvalidArgument);
  cls[1].points.pop_back();
  CHECK_THROWS_AS(prune(cls, 0.1), ClassSizeMismatch);
}

TEST_CASE("check_witness flags violations") {
  const std::vector<std::array<Point, 3>> bent{{Point{0, 0}, Point{1, 1}, Point{2, 0}}};
  CHECK_FALSE(check_witness(bent, 0.1).q2);
  const std::vector<std::array<Point, 3>> lopsided{{Point{0, 0}, Point{0.1, 0}, Point{1, 0}}};
  CHECK_FALSE(check_witness(lopsided, 0.1).q4);
  const std::vector<std::array<Point, 3>> growing{{Point{0, 0}, Point{0.6, 0}, Point{1, 0}},
                                                  {Point{0, 1}, Point{0.6, 1}, Point{1, 1}}};
  CHECK_FALSE(check_witness(growing, 0.1).q3);
}
