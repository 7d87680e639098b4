#pragma once

// Seeds (points p_i with directions u_i) and the lift that turns a seed into
// a point set whose strict double-normal graph contains K_m(N).

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dnormal/geometry.hpp"
#include "dnormal/lemmas.hpp"
#include "dnormal/pair_analysis.hpp"
#include "dnormal/point_set.hpp"

namespace dnormal {

class FilteringShortfall : public Error {
 public:
  using Error::Error;
};

class EpsilonBudgetExhausted : public Error {
 public:
  using Error::Error;
};

struct Seed {
  std::size_t dim = 0;
  std::vector<Point> points;
  std::vector<UnitVector> directions;

  std::size_t size() const { return points.size(); }
};

/// Integer seed; directions are unnormalized, which leaves every sign test
/// unchanged.
struct IntegerSeed {
  std::size_t dim = 0;
  std::vector<IntPoint> points;
  std::vector<IntPoint> directions;

  std::size_t size() const { return points.size(); }
};

struct SeedReport {
  bool ok = true;
  /// min over ordered distinct (i, j, k) of <p_i - p_j, p_k - p_j>;
  /// +inf when m = 2.
  double min_acute_margin = std::numeric_limits<double>::infinity();
  /// min over (i, j, k) of the two slacks of the cond chain
  /// <u_i, p_i - p_j> < <u_i, p_k - p_j> < <u_i, p_j - p_i>. With m = 2 only
  /// the outer inequality exists; its gap is half the outer slack.
  double min_cond_gap = std::numeric_limits<double>::infinity();
  std::vector<std::string> violations;
};

SeedReport verify_seed(const Seed& s, const Tolerance& tol = {});
SeedReport verify_seed(const IntegerSeed& s);

/// Vertices of a regular simplex in R^{m-1} on the unit sphere, u_i = -p_i.
Seed simplex_seed(std::size_t m);

/// m = floor(e^{d/20} / 4).
std::size_t subset_seed_m(std::size_t d);

struct BadTriple {
  std::size_t i, j, k;
  bool perp;  // A_i & A_j <= A_k <= A_i | A_j
  bool cond;  // 4|A_i & A_j| + |A_k| >= 2|A_i & A_k| + |A_i| + 2|A_j|
};

struct SubsetSeedResult {
  std::size_t d = 0;
  std::size_t m = 0;
  std::uint64_t rng_seed = 0;
  SubsetFamily family;                    // the 2m drawn sets
  std::vector<std::size_t> survivors;     // indices into family.sets
  std::vector<BadTriple> bad_triples;
  std::optional<IntegerSeed> exact_seed;  // first m survivors, when enough
  std::optional<Seed> seed;
  SeedReport report;                      // exact verification of exact_seed

  /// Throws FilteringShortfall when fewer than m sets survived.
  const Seed& require_seed() const;
};

/// Ordered distinct triple (i, j, k) of the family that is bad.
bool is_bad_triple(const SubsetFamily& f, std::size_t i, std::size_t j, std::size_t k);

/// Runs the filtering on a given family (tests feed hand-made families).
SubsetSeedResult filter_family(SubsetFamily family, std::size_t m);

/// Draws 2m random subsets of [d] and filters them. m = 0 uses
/// subset_seed_m(d), which must then be at least 2.
SubsetSeedResult subset_seed(std::size_t d, std::uint64_t rng_seed, std::size_t m = 0);

struct LiftParams {
  double radius_fraction = 0.99;  // position of r_i inside its open interval
  double start_fraction = 0.99;   // |x_1 - p_i| = min(start * eps, r_i / 2)
  double step_fraction = 0.99;    // arc parameter of x_{t+1} = step * that of y
  double arc_budget = 0.45;       // eps <= budget * min alpha_i / (N - 1); 0 disables
  int max_halvings = 60;

  /// Midpoints everywhere and no arc budget.
  static LiftParams midpoint() { return {0.5, 0.5, 0.5, 0.0, 60}; }
};

struct EpsBreakdown {
  double interval = 0.0;  // half of min_i (2 alpha_i - beta_i) / 3 (recentered)
  double slab = 0.0;      // half of min <p_i - p_j, p_k - p_j> / (4 max distance)
  double spacing = 0.0;   // half the minimum pairwise distance
  double arc = 0.0;       // arc budget term
  double eps = 0.0;
};

EpsBreakdown eps_policy(const Seed& s, std::size_t n_per_class, const LiftParams& params = {});

struct LiftClassState {
  double alpha = 0.0;  // min_{j != i} <u_i, p_j>
  double beta = 0.0;   // max_j <u_i, p_j>
  double radius = 0.0;
  Point center, a, b, q;
  std::vector<double> arc;  // angle x_t c_i p_i for t = 1..N
};

struct LiftState {
  double eps = 0.0;
  int halvings = 0;
  EpsBreakdown initial;
  std::vector<LiftClassState> classes;
};

struct LiftResult {
  PointSet points;
  std::vector<std::vector<std::size_t>> classes;
  LiftState state;
  MultipartiteReport verification;
  std::size_t within_double_normal = 0;  // within-class pairs, reported only
  std::size_t within_strict = 0;
};

/// Builds the lift for the given eps without verification. Throws
/// InvalidArgument when eps leaves an empty radius interval or the arc
/// recursion leaves the arc.
LiftResult lift_with_eps(const Seed& s, std::size_t n_per_class, double eps,
                         const LiftParams& params = {});

/// Full construction: eps from eps_policy, halved until the output passes
/// verify_complete_multipartite(strict = true). Throws InvalidArgument on a
/// bad seed or N = 0 and EpsilonBudgetExhausted after max_halvings.
LiftResult lift(const Seed& s, std::size_t n_per_class, const Tolerance& tol = {},
                const LiftParams& params = {}, const GraphOptions& options = {});

struct Corollary2 {
  std::uint64_t d = 0;
  std::uint64_t n = 0;
  bool applicable = false;     // bound >= 2
  std::int64_t bound = 0;      // d - n - 1
  double closed_form = 0.0;    // d - 20 log(4d) - 1
};

/// floor(e^{n/20} / 4) + n.
std::uint64_t corollary2_g(std::uint64_t n);
Corollary2 corollary2_m(std::uint64_t d);

}  // namespace dnormal
