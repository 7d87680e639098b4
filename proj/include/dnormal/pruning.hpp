#pragma once

// Pruning of near-collinear classes down to triples (a_i, b_i, c_i) with
// nearly straight angles and geometrically shrinking diameters.

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "dnormal/geometry.hpp"

namespace dnormal {

class BetweennessInconsistent : public Error {
 public:
  using Error::Error;
};

class NoQualifyingWindow : public Error {
 public:
  using Error::Error;
};

class ClassSizeMismatch : public Error {
 public:
  using Error::Error;
};

/// Points such that any two lines through pairs of them meet at an angle
/// below eps, with eps < pi/3.
struct NearCollinearClass {
  std::vector<Point> points;
  double eps = 0.0;
};

/// Largest angle between two lines spanned by pairs of points (exhaustive).
double max_line_angle(const std::vector<Point>& points);

/// t = ceil(1 / (eps cos eps)).
std::size_t prune_t(double eps);
/// 2 t^{e} + 1; throws InvalidArgument on overflow.
std::size_t prune_class_size(std::size_t t, std::size_t e);

/// Linear order in which y lies between x and z iff angle x y z > pi - eps.
/// Starts at the lower-indexed endpoint of the first diameter pair and
/// sorts by distance from it, then checks every ordered triple. Throws
/// BetweennessInconsistent when a triple or the distance order fails.
std::vector<std::size_t> betweenness_order(const NearCollinearClass& c);

struct WitnessCheck {
  bool q2 = true;  // angle a_i b_i c_i > pi - eps
  bool q3 = true;  // |a_{i+1} - c_{i+1}| <= eps |a_i - c_i|
  bool q4 = true;  // |a_i - b_i| >= |a_i - c_i| / 2
  double min_angle = 0.0;
  double max_ratio = 0.0;   // max |a_{i+1} - c_{i+1}| / |a_i - c_i|
  double min_factor = 0.0;  // min |a_i - b_i| / |a_i - c_i|

  bool ok() const { return q2 && q3 && q4; }
};

struct PruneWitness {
  double eps = 0.0;
  std::size_t t = 0;
  /// Position i of the output holds original class class_order[i].
  std::vector<std::size_t> class_order;
  /// Pruned classes as original point indices, in betweenness order.
  std::vector<std::vector<std::size_t>> pruned;
  /// a_i, b_i, c_i as original point indices within class class_order[i].
  std::vector<std::array<std::size_t, 3>> abc;
  std::vector<std::array<Point, 3>> points;
  /// Sizes of the classes at positions i..k-1 when outer iteration i starts.
  std::vector<std::vector<std::size_t>> iteration_sizes;
  WitnessCheck check;
};

/// Re-checks the three witness conditions on explicit triples.
WitnessCheck check_witness(const std::vector<std::array<Point, 3>>& abc, double eps);

/// Throws InvalidArgument on k = 0 or eps outside (0, pi/3),
/// ClassSizeMismatch when a class does not have 2 t^{k-1} + 1 points,
/// BetweennessInconsistent and NoQualifyingWindow when the near-collinear
/// precondition fails.
PruneWitness prune(const std::vector<NearCollinearClass>& classes, double eps);

/// k classes of 2 t^{k-1} + 1 points near random lines in R^dim, each with
/// a random scale; the line-angle invariant is verified before returning.
std::vector<NearCollinearClass> gen_near_collinear(std::size_t k, double eps,
                                                   std::uint64_t rng_seed, std::size_t dim = 3);

}  // namespace dnormal
