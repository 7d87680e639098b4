#pragma once

// Executable checks for the quantitative lemmas on double-normal pairs and
// for the counting lemmas behind the random subset construction.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dnormal/geometry.hpp"
#include "dnormal/point_set.hpp"

namespace dnormal {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Subsets of a ground set {0, ..., d-1}
// ---------------------------------------------------------------------------

class Subset {
 public:
  explicit Subset(std::size_t ground = 0);
  Subset(std::size_t ground, std::initializer_list<std::size_t> elements);
  /// Bit i of `mask` is element i; only valid for ground <= 64.
  static Subset from_mask(std::size_t ground, std::uint64_t mask);

  std::size_t ground() const { return ground_; }
  std::size_t size() const;
  bool contains(std::size_t e) const;
  void insert(std::size_t e);

  Subset operator&(const Subset& o) const;
  Subset operator|(const Subset& o) const;
  bool is_subset_of(const Subset& o) const;

  /// Characteristic vector in {0,1}^d.
  IntPoint chi() const;
  std::string to_string() const;

  std::vector<std::uint64_t>& words() { return words_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  void require_same_ground(const Subset& o) const;

  std::size_t ground_ = 0;
  std::vector<std::uint64_t> words_;
};

struct SubsetFamily {
  std::size_t d = 0;
  std::vector<Subset> sets;
};

/// |A & C| style counts used by the condition inequality.
std::size_t intersection_size(const Subset& a, const Subset& b);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct LemmaReport {
  std::string lemma;
  double lhs = 0.0;
  double bound = 0.0;
  bool hypothesis_ok = false;  // false: the instance is vacuous
  bool holds = false;          // meaningful only when hypothesis_ok
  bool strict = true;          // lemma asserts lhs < bound (else lhs <= bound)
  std::string context;
};

/// |<u, v>| < (eps1 + eps2) / sin(theta) for unit u almost orthogonal to
/// u1 and u2, v a unit vector in span{u1, u2}, cos(theta) = <u1, u2>.
LemmaReport ipr_estimate_check(const UnitVector& u, const UnitVector& u1, const UnitVector& u2,
                               const UnitVector& v, double eps1, double eps2);

/// x y2 double-normal and angle y1 y2 y3 > pi - eps imply
/// |<unit(y1 - y2), unit(x - y2)>| < eps.
LemmaReport dn1_check(const PointSet& v, std::size_t x, std::size_t y1, std::size_t y2,
                      std::size_t y3, double eps, const Tolerance& tol = {});

/// x1 y2 and x2 y2 double-normal and angle y1 y2 y3 > pi - eps imply that
/// unit(y1 - y2) has in-plane component < 2 eps / sin(angle x1 y2 x2) in
/// the plane x1 x2 y2.
LemmaReport dn2_check(const PointSet& v, std::size_t x1, std::size_t x2, std::size_t y1,
                      std::size_t y2, std::size_t y3, double eps, const Tolerance& tol = {});

/// All four pairs xi yj double-normal imply that unit(y1 - y2) has
/// in-plane component <= sqrt(2) / cos^2(alpha) * |y1 - y2| / |x1 - x2| in
/// the plane x1 x2 y2, with alpha = angle x1 y2 x2.
LemmaReport dn3_check(const PointSet& v, std::size_t x1, std::size_t x2, std::size_t y1,
                      std::size_t y2, const Tolerance& tol = {});

/// Norm of the orthogonal projection of unit(u) onto span{a, b}; throws
/// DegenerateAngle when a and b are (numerically) parallel.
double in_plane_component(std::span<const double> u, std::span<const double> a,
                          std::span<const double> b);

// ---------------------------------------------------------------------------
// Subset lemmas
// ---------------------------------------------------------------------------

/// A & B subset of C subset of A | B, without a distinctness requirement.
bool between_sets(const Subset& a, const Subset& b, const Subset& c);

/// Same relation for distinct A, B, C; throws InvalidArgument otherwise.
/// Equivalent to angle chi(A) chi(C) chi(B) being a right angle.
bool perp_condition(const Subset& a, const Subset& b, const Subset& c);

/// (chi(A) - chi(C)) . (chi(B) - chi(C)); never negative.
std::int64_t perp_inner_product(const Subset& a, const Subset& b, const Subset& c);

/// Ordered triples of subsets of a d-set with A & B <= C <= A | B, by
/// enumerating all 8^d triples. d <= 5.
BigInt perp_triple_count_enumerated(std::size_t d);
/// Same count by the per-element product rule (any d).
BigInt perp_triple_count_product(std::size_t d);
/// Product-rule count, cross-checked against enumeration when d <= 5.
BigInt perp_triple_count_exact(std::size_t d);

/// 4|A & C| + |B| >= 2|A & B| + |A| + 2|C|, in integer arithmetic.
bool cond_inequality(const Subset& a, const Subset& b, const Subset& c);
/// <u, chi(B) - chi(C)> >= <u, chi(C) - chi(A)> with
/// u = (chi([d]) - 2 chi(A)) / sqrt(d), in floating arithmetic.
bool cond_inequality_floating(const Subset& a, const Subset& b, const Subset& c,
                              const Tolerance& tol = {});

/// Exact law of X = sum of d independent per-element contributions, each
/// uniform on {1, 0, -1, -2}. counts[x + 2d] / 4^d = P(X = x).
struct StepDistribution {
  std::size_t d = 0;
  std::vector<BigInt> counts;
  BigInt denominator;

  int min_value() const { return -2 * static_cast<int>(d); }
  int max_value() const { return static_cast<int>(d); }
  BigRational mass(int x) const;
  BigRational prob_nonnegative() const;
};

/// Per-element law derived by enumerating membership of one element in
/// (A, B, C): counts out of 4 for values 1, 0, -1, -2.
std::vector<int> step_counts();

StepDistribution step_distribution(std::size_t d);
/// P(X >= 0), i.e. the probability that a random triple meets the
/// condition inequality.
BigRational bad_prob_exact(std::size_t d);
/// bad_prob_exact(d) for d = 1..dmax from one incremental convolution.
std::vector<BigRational> bad_prob_sweep(std::size_t dmax);
/// Exact test of P(X >= 0) <= (65/72)^d.
bool bad_prob_within_bound(const BigRational& p, std::size_t d);

double to_double(const BigRational& q);

// ---------------------------------------------------------------------------
// Randomized drivers
// ---------------------------------------------------------------------------

struct SuiteResult {
  std::string lemma;
  std::size_t accepted = 0;    // instances whose hypotheses held
  std::size_t vacuous = 0;     // rejected draws
  std::size_t violations = 0;  // accepted instances where the bound failed
  double worst_ratio = 0.0;    // max lhs / bound over accepted instances
  LemmaReport worst;           // instance attaining worst_ratio
  std::map<std::string, std::size_t> vacuous_reasons;

  bool ok() const { return violations == 0 && accepted > 0; }
};

/// Each driver draws instances until `trials` of them satisfy the lemma's
/// hypotheses (checked by the report itself, i.e. by classify_pair for the
/// double-normal lemmas) or the draw budget of 1000 * trials runs out.
SuiteResult run_ipr_suite(std::size_t trials, std::uint64_t seed);
SuiteResult run_dn1_suite(std::size_t trials, std::uint64_t seed);
SuiteResult run_dn2_suite(std::size_t trials, std::uint64_t seed);
SuiteResult run_dn3_suite(std::size_t trials, std::uint64_t seed);

}  // namespace dnormal
