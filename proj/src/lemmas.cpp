#include "dnormal/lemmas.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "dnormal/pair_analysis.hpp"

namespace dnormal {

// ---------------------------------------------------------------------------
// Subset
// ---------------------------------------------------------------------------

Subset::Subset(std::size_t ground) : ground_(ground), words_((ground + 63) / 64, 0) {}

Subset::Subset(std::size_t ground, std::initializer_list<std::size_t> elements) : Subset(ground) {
  for (std::size_t e : elements) insert(e);
}

Subset Subset::from_mask(std::size_t ground, std::uint64_t mask) {
  if (ground > 64) throw InvalidArgument("from_mask needs a ground set of at most 64 elements");
  Subset s(ground);
  if (ground == 0) return s;
  if (ground < 64) mask &= (std::uint64_t{1} << ground) - 1;
  s.words_[0] = mask;
  return s;
}

std::size_t Subset::size() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool Subset::contains(std::size_t e) const {
  if (e >= ground_) return false;
  return (words_[e / 64] >> (e % 64)) & 1U;
}

void Subset::insert(std::size_t e) {
  if (e >= ground_) throw InvalidArgument("subset element outside the ground set");
  words_[e / 64] |= std::uint64_t{1} << (e % 64);
}

void Subset::require_same_ground(const Subset& o) const {
  if (ground_ != o.ground_) throw DimensionMismatch("subsets of different ground sets");
}

Subset Subset::operator&(const Subset& o) const {
  require_same_ground(o);
  Subset r(ground_);
  for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = words_[k] & o.words_[k];
  return r;
}

Subset Subset::operator|(const Subset& o) const {
  require_same_ground(o);
  Subset r(ground_);
  for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] = words_[k] | o.words_[k];
  return r;
}

bool Subset::is_subset_of(const Subset& o) const {
  require_same_ground(o);
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if (words_[k] & ~o.words_[k]) return false;
  }
  return true;
}

IntPoint Subset::chi() const {
  IntPoint out(ground_, 0);
  for (std::size_t e = 0; e < ground_; ++e) out[e] = contains(e) ? 1 : 0;
  return out;
}

std::string Subset::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (std::size_t e = 0; e < ground_; ++e) {
    if (!contains(e)) continue;
    if (!first) os << ',';
    os << e;
    first = false;
  }
  os << '}';
  return os.str();
}

std::size_t intersection_size(const Subset& a, const Subset& b) { return (a & b).size(); }

// ---------------------------------------------------------------------------
// Geometric lemmas
// ---------------------------------------------------------------------------

namespace {

bool is_pair_dn(const PointSet& v, std::size_t i, std::size_t j, const Tolerance& tol) {
  return classify_pair(v, i, j, tol) != PairClass::none;
}

bool settle(LemmaReport& r) {
  r.holds = r.strict ? r.lhs < r.bound : r.lhs <= r.bound;
  return r.holds;
}

LemmaReport vacuous(std::string lemma, std::string why, bool strict = true) {
  LemmaReport r;
  r.lemma = std::move(lemma);
  r.hypothesis_ok = false;
  r.strict = strict;
  r.context = "hypothesis failed: " + std::move(why);
  return r;
}

bool all_distinct(std::initializer_list<std::size_t> ids) {
  std::vector<std::size_t> v(ids);
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

void require_indices(const PointSet& v, std::initializer_list<std::size_t> ids) {
  for (std::size_t i : ids) {
    if (i >= v.size()) throw InvalidArgument("point index out of range");
  }
}

}  // namespace

double in_plane_component(std::span<const double> u, std::span<const double> a,
                          std::span<const double> b) {
  const Point e1 = normalized(a);
  Point w = axpy(b, -inner(b, e1), e1);
  const double nw = norm(w);
  if (nw <= 1e-12 * norm(b)) throw DegenerateAngle("plane spanned by two parallel vectors");
  const Point e2 = scaled(w, 1.0 / nw);
  const Point uu = normalized(u);
  return std::hypot(inner(uu, e1), inner(uu, e2));
}

LemmaReport ipr_estimate_check(const UnitVector& u, const UnitVector& u1, const UnitVector& u2,
                               const UnitVector& v, double eps1, double eps2) {
  const std::string name = "ipr";
  if (u.dim() != u1.dim() || u.dim() != u2.dim() || u.dim() != v.dim()) {
    throw DimensionMismatch("ipr_estimate_check: vectors of different dimension");
  }
  if (!(eps1 > 0) || !(eps2 > 0)) return vacuous(name, "eps1 and eps2 must be positive");
  if (!(std::abs(inner(u, u1)) <= eps1)) return vacuous(name, "|<u,u1>| > eps1");
  if (!(std::abs(inner(u, u2)) <= eps2)) return vacuous(name, "|<u,u2>| > eps2");
  const double c = std::clamp(inner(u1, u2), -1.0, 1.0);
  const double s = std::sqrt((1.0 - c) * (1.0 + c));
  if (s <= 1e-12) return vacuous(name, "u1 and u2 are parallel");
  // Residual of v after projection onto span{u1, u2}.
  const Point w = axpy(u2, -c, u1);
  const Point e2 = scaled(w, 1.0 / norm(w));
  const Point proj = axpy(scaled(u1, inner(v, u1)), inner(v, e2), e2);
  if (distance(proj, v.coords()) > 1e-9) return vacuous(name, "v is not in span{u1,u2}");

  LemmaReport r;
  r.lemma = name;
  r.hypothesis_ok = true;
  r.lhs = std::abs(inner(u, v));
  r.bound = (eps1 + eps2) / s;
  settle(r);
  return r;
}

LemmaReport dn1_check(const PointSet& v, std::size_t x, std::size_t y1, std::size_t y2,
                      std::size_t y3, double eps, const Tolerance& tol) {
  const std::string name = "dn1";
  require_indices(v, {x, y1, y2, y3});
  if (!(eps > 0)) return vacuous(name, "eps must be positive");
  if (!all_distinct({x, y1, y2, y3})) return vacuous(name, "indices not distinct");
  require_distinct(v, tol);
  if (!is_pair_dn(v, x, y2, tol)) return vacuous(name, "x y2 is not double-normal");
  const double theta = angle_closed(v[y1], v[y2], v[y3]);
  if (!(theta > std::numbers::pi - eps)) return vacuous(name, "angle y1 y2 y3 <= pi - eps");

  LemmaReport r;
  r.lemma = name;
  r.hypothesis_ok = true;
  r.lhs = std::abs(inner(normalized(subtract(v[y1], v[y2])), normalized(subtract(v[x], v[y2]))));
  r.bound = eps;
  settle(r);
  return r;
}

LemmaReport dn2_check(const PointSet& v, std::size_t x1, std::size_t x2, std::size_t y1,
                      std::size_t y2, std::size_t y3, double eps, const Tolerance& tol) {
  const std::string name = "dn2";
  require_indices(v, {x1, x2, y1, y2, y3});
  if (!(eps > 0)) return vacuous(name, "eps must be positive");
  if (!all_distinct({x1, x2, y1, y2, y3})) return vacuous(name, "indices not distinct");
  require_distinct(v, tol);
  if (!is_pair_dn(v, x1, y2, tol)) return vacuous(name, "x1 y2 is not double-normal");
  if (!is_pair_dn(v, x2, y2, tol)) return vacuous(name, "x2 y2 is not double-normal");
  const double theta = angle_closed(v[y1], v[y2], v[y3]);
  if (!(theta > std::numbers::pi - eps)) return vacuous(name, "angle y1 y2 y3 <= pi - eps");
  const Point a = subtract(v[x1], v[y2]);
  const Point b = subtract(v[x2], v[y2]);
  double comp = 0.0;
  try {
    comp = in_plane_component(subtract(v[y1], v[y2]), a, b);
  } catch (const DegenerateAngle&) {
    return vacuous(name, "x1, x2, y2 are collinear");
  }
  const double alpha = angle_closed(v[x1], v[y2], v[x2]);
  const double s = std::sin(alpha);
  if (!(s > 0)) return vacuous(name, "x1, x2, y2 are collinear");

  LemmaReport r;
  r.lemma = name;
  r.hypothesis_ok = true;
  r.lhs = comp;
  r.bound = 2.0 * eps / s;
  settle(r);
  return r;
}

LemmaReport dn3_check(const PointSet& v, std::size_t x1, std::size_t x2, std::size_t y1,
                      std::size_t y2, const Tolerance& tol) {
  const std::string name = "dn3";
  require_indices(v, {x1, x2, y1, y2});
  if (!all_distinct({x1, x2, y1, y2})) return vacuous(name, "indices not distinct", false);
  require_distinct(v, tol);
  for (std::size_t x : {x1, x2}) {
    for (std::size_t y : {y1, y2}) {
      if (!is_pair_dn(v, x, y, tol)) return vacuous(name, "some xi yj is not double-normal", false);
    }
  }
  const Point a = subtract(v[x1], v[y2]);
  const Point b = subtract(v[x2], v[y2]);
  double comp = 0.0;
  try {
    comp = in_plane_component(subtract(v[y1], v[y2]), a, b);
  } catch (const DegenerateAngle&) {
    return vacuous(name, "x1, x2, y2 are collinear", false);
  }
  const double alpha = angle_closed(v[x1], v[y2], v[x2]);
  const double c = std::cos(alpha);
  if (!(alpha < std::numbers::pi / 2) || !(c > 0)) {
    return vacuous(name, "angle x1 y2 x2 >= pi/2, bound unusable", false);
  }

  LemmaReport r;
  r.lemma = name;
  r.hypothesis_ok = true;
  r.strict = false;
  r.lhs = comp;
  r.bound = std::sqrt(2.0) / (c * c) * distance(v[y1], v[y2]) / distance(v[x1], v[x2]);
  settle(r);
  return r;
}

// ---------------------------------------------------------------------------
// Subset lemmas
// ---------------------------------------------------------------------------

bool between_sets(const Subset& a, const Subset& b, const Subset& c) {
  return (a & b).is_subset_of(c) && c.is_subset_of(a | b);
}

bool perp_condition(const Subset& a, const Subset& b, const Subset& c) {
  if (a == b || b == c || a == c) throw InvalidArgument("perp_condition needs distinct subsets");
  return between_sets(a, b, c);
}

std::int64_t perp_inner_product(const Subset& a, const Subset& b, const Subset& c) {
  const IntPoint ca = a.chi(), cb = b.chi(), cc = c.chi();
  return static_cast<std::int64_t>(inner_diff_exact(cc, ca, cb));
}

BigInt perp_triple_count_enumerated(std::size_t d) {
  if (d > 5) throw InvalidArgument("enumeration limited to d <= 5");
  const std::uint64_t n = std::uint64_t{1} << d;
  BigInt count = 0;
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::uint64_t b = 0; b < n; ++b) {
      for (std::uint64_t c = 0; c < n; ++c) {
        if (between_sets(Subset::from_mask(d, a), Subset::from_mask(d, b), Subset::from_mask(d, c))) {
          ++count;
        }
      }
    }
  }
  return count;
}

BigInt perp_triple_count_product(std::size_t d) {
  // Membership patterns of one element in (A, B, C) allowed by the relation.
  unsigned per_element = 0;
  for (unsigned bits = 0; bits < 8; ++bits) {
    const bool a = bits & 1U, b = bits & 2U, c = bits & 4U;
    if ((!(a && b) || c) && (!c || a || b)) ++per_element;
  }
  return boost::multiprecision::pow(BigInt(per_element), static_cast<unsigned>(d));
}

BigInt perp_triple_count_exact(std::size_t d) {
  BigInt product = perp_triple_count_product(d);
  if (d <= 5 && product != perp_triple_count_enumerated(d)) {
    throw std::logic_error("perp triple count: enumeration and product rule disagree");
  }
  return product;
}

bool cond_inequality(const Subset& a, const Subset& b, const Subset& c) {
  if (a.ground() == 0) throw InvalidArgument("cond_inequality needs d >= 1");
  const auto lhs = 4 * static_cast<std::int64_t>(intersection_size(a, c)) +
                   static_cast<std::int64_t>(b.size());
  const auto rhs = 2 * static_cast<std::int64_t>(intersection_size(a, b)) +
                   static_cast<std::int64_t>(a.size()) + 2 * static_cast<std::int64_t>(c.size());
  return lhs >= rhs;
}

bool cond_inequality_floating(const Subset& a, const Subset& b, const Subset& c,
                              const Tolerance& tol) {
  const std::size_t d = a.ground();
  if (d == 0) throw InvalidArgument("cond_inequality needs d >= 1");
  const IntPoint ca = a.chi(), cb = b.chi(), cc = c.chi();
  Point u(d), bc(d), ca_(d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t k = 0; k < d; ++k) {
    u[k] = (1.0 - 2.0 * static_cast<double>(ca[k])) * scale;
    bc[k] = static_cast<double>(cb[k] - cc[k]);
    ca_[k] = static_cast<double>(cc[k] - ca[k]);
  }
  return compare(inner(u, bc), inner(u, ca_), tol, 1.0) != Ordering::less;
}

std::vector<int> step_counts() {
  // Contribution of one element to (lhs - rhs) of the condition inequality.
  std::vector<int> counts(4, 0);  // values 1, 0, -1, -2
  for (unsigned bits = 0; bits < 8; ++bits) {
    const int a = bits & 1U ? 1 : 0, b = bits & 2U ? 1 : 0, c = bits & 4U ? 1 : 0;
    const int x = 4 * a * c + b - 2 * a * b - a - 2 * c;
    if (x < -2 || x > 1) throw std::logic_error("per-element contribution out of range");
    ++counts[static_cast<std::size_t>(1 - x)];
  }
  for (int& k : counts) {
    if (k % 2 != 0) throw std::logic_error("per-element law is not a multiple of 1/4");
    k /= 2;
  }
  return counts;
}

BigRational StepDistribution::mass(int x) const {
  if (x < min_value() || x > max_value()) return BigRational(0);
  return BigRational(counts[static_cast<std::size_t>(x - min_value())], denominator);
}

BigRational StepDistribution::prob_nonnegative() const {
  BigInt num = 0;
  for (int x = 0; x <= max_value(); ++x) num += counts[static_cast<std::size_t>(x - min_value())];
  return BigRational(num, denominator);
}

namespace {

// Convolves one more element into a law over values [-2k, k].
std::vector<BigInt> convolve_step(const std::vector<BigInt>& prev, const std::vector<int>& step) {
  std::vector<BigInt> next(prev.size() + 3, 0);
  // prev index i <-> value i - 2k; next index j <-> value j - 2(k + 1).
  for (std::size_t i = 0; i < prev.size(); ++i) {
    if (prev[i] == 0) continue;
    for (std::size_t s = 0; s < 4; ++s) {
      const int value = 1 - static_cast<int>(s);
      next[i + static_cast<std::size_t>(value + 2)] += prev[i] * step[s];
    }
  }
  return next;
}

BigRational nonnegative_mass(const std::vector<BigInt>& counts, std::size_t d,
                             const BigInt& denominator) {
  BigInt num = 0;
  for (std::size_t j = 2 * d; j < counts.size(); ++j) num += counts[j];
  return BigRational(num, denominator);
}

}  // namespace

StepDistribution step_distribution(std::size_t d) {
  const std::vector<int> step = step_counts();
  StepDistribution out;
  out.d = d;
  out.counts = {BigInt(1)};
  out.denominator = 1;
  for (std::size_t k = 0; k < d; ++k) {
    out.counts = convolve_step(out.counts, step);
    out.denominator *= 4;
  }
  return out;
}

BigRational bad_prob_exact(std::size_t d) {
  if (d == 0) throw InvalidArgument("bad_prob_exact needs d >= 1");
  return step_distribution(d).prob_nonnegative();
}

std::vector<BigRational> bad_prob_sweep(std::size_t dmax) {
  const std::vector<int> step = step_counts();
  std::vector<BigRational> out;
  std::vector<BigInt> counts{BigInt(1)};
  BigInt denominator = 1;
  for (std::size_t d = 1; d <= dmax; ++d) {
    counts = convolve_step(counts, step);
    denominator *= 4;
    out.push_back(nonnegative_mass(counts, d, denominator));
  }
  return out;
}

bool bad_prob_within_bound(const BigRational& p, std::size_t d) {
  using boost::multiprecision::numerator;
  using boost::multiprecision::denominator;
  const auto e = static_cast<unsigned>(d);
  return numerator(p) * boost::multiprecision::pow(BigInt(72), e) <=
         denominator(p) * boost::multiprecision::pow(BigInt(65), e);
}

double to_double(const BigRational& q) { return q.convert_to<double>(); }

// ---------------------------------------------------------------------------
// Randomized drivers
// ---------------------------------------------------------------------------

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Point gaussian_unit(Rng& rng, std::size_t d) {
  std::normal_distribution<double> g;
  for (;;) {
    Point p(d);
    for (double& x : p) x = g(rng);
    if (norm(p) > 1e-6) return normalized(p);
  }
}

/// Random unit vector orthogonal to every vector in `basis` (orthonormal).
Point unit_orthogonal_to(Rng& rng, std::size_t d, const std::vector<Point>& basis) {
  for (;;) {
    Point p = gaussian_unit(rng, d);
    for (const Point& b : basis) p = axpy(p, -inner(p, b), b);
    if (norm(p) > 1e-3) return normalized(p);
  }
}

/// Unit vector at angle `delta` from unit e, tilted towards a random
/// direction orthogonal to e.
Point tilt(Rng& rng, const Point& e, double delta) {
  const Point n = unit_orthogonal_to(rng, e.size(), {e});
  return axpy(scaled(e, std::cos(delta)), std::sin(delta), n);
}

struct NearLine {
  Point y1, y2, y3;
  Point e;             // rough line direction
  double spread = 0;   // pi - angle y1 y2 y3
};

/// y1 y2 y3 with angle y1 y2 y3 > pi - eps.
NearLine near_line(Rng& rng, std::size_t d, double eps) {
  NearLine out;
  out.y2 = Point(d);
  for (double& x : out.y2) x = uniform(rng, -2.0, 2.0);
  out.e = gaussian_unit(rng, d);
  const double total = eps * uniform(rng, 0.0, 1.0);
  const double d1 = total * uniform(rng, 0.0, 1.0);
  out.y1 = axpy(out.y2, -uniform(rng, 0.2, 2.0), tilt(rng, out.e, d1));
  out.y3 = axpy(out.y2, uniform(rng, 0.2, 2.0), tilt(rng, out.e, total - d1));
  out.spread = std::numbers::pi - angle_closed(out.y1, out.y2, out.y3);
  return out;
}

/// Point whose direction from y2 leans towards e by at most `lean` (as a
/// tangent), otherwise orthogonal to the line.
Point roughly_normal(Rng& rng, const NearLine& l, double lean) {
  const std::size_t d = l.e.size();
  const Point n = unit_orthogonal_to(rng, d, {l.e});
  const double k = uniform(rng, -1.0, 1.0) * lean;
  return axpy(l.y2, uniform(rng, 0.5, 3.0), normalized(axpy(n, k, l.e)));
}

/// Partner x for y2: the lean towards e is drawn around the interval on
/// which x - y2 has nonnegative inner product with y1 - y2 and y3 - y2, and
/// one draw in eight uses a lean on the scale of eps instead.
Point normal_partner(Rng& rng, const NearLine& l, double eps) {
  if (rng() % 8 == 0) return roughly_normal(rng, l, std::tan(std::min(eps, 1.2)));
  const std::size_t d = l.e.size();
  Point n = unit_orthogonal_to(rng, d, {l.e});
  const Point f1 = subtract(l.y1, l.y2), f3 = subtract(l.y3, l.y2);
  double hi = inner(n, f1) / -inner(l.e, f1);
  double lo = -inner(n, f3) / inner(l.e, f3);
  if (lo > hi) {
    n = scaled(n, -1.0);
    const double t = lo;
    lo = -hi;
    hi = -t;
  }
  const double w = 0.1 * (hi - lo) + 1e-12;
  const double k = uniform(rng, lo - w, hi + w);
  return axpy(l.y2, uniform(rng, 0.5, 3.0), normalized(axpy(n, k, l.e)));
}

/// Appends up to `extra` points near the convex hull of `pts`.
void add_extra_points(Rng& rng, std::vector<Point>& pts, std::size_t extra, double noise) {
  const std::size_t base = pts.size();
  const std::size_t d = pts[0].size();
  for (std::size_t k = 0; k < extra; ++k) {
    Point p(d, 0.0);
    double total = 0.0;
    std::vector<double> w(base);
    for (double& x : w) {
      x = uniform(rng, 0.0, 1.0);
      total += x;
    }
    for (std::size_t i = 0; i < base; ++i) p = axpy(p, w[i] / total, pts[i]);
    for (double& x : p) x += uniform(rng, -noise, noise);
    pts.push_back(p);
  }
}

void record(SuiteResult& s, const LemmaReport& r) {
  if (!r.hypothesis_ok) {
    ++s.vacuous;
    ++s.vacuous_reasons[r.context];
    return;
  }
  ++s.accepted;
  if (!r.holds) ++s.violations;
  const double ratio = r.bound > 0 ? r.lhs / r.bound : (r.lhs > 0 ? INFINITY : 0.0);
  if (s.accepted == 1 || ratio > s.worst_ratio) {
    s.worst_ratio = ratio;
    s.worst = r;
  }
}

template <typename Draw>
SuiteResult run_suite(std::string name, std::size_t trials, std::uint64_t seed, Draw draw) {
  SuiteResult s;
  s.lemma = std::move(name);
  Rng rng(seed);
  const std::size_t budget = 1000 * std::max<std::size_t>(trials, 1);
  for (std::size_t attempt = 0; attempt < budget && s.accepted < trials; ++attempt) {
    try {
      record(s, draw(rng));
    } catch (const Error& e) {
      ++s.vacuous;  // a degenerate draw (coincident points and the like)
      ++s.vacuous_reasons[std::string("degenerate draw: ") + e.what()];
    }
  }
  return s;
}

}  // namespace

SuiteResult run_ipr_suite(std::size_t trials, std::uint64_t seed) {
  return run_suite("ipr", trials, seed, [](Rng& rng) {
    const std::size_t d = 3 + rng() % 4;
    const double theta = uniform(rng, 0.05, std::numbers::pi - 0.05);
    const Point u1 = gaussian_unit(rng, d);
    const Point w = unit_orthogonal_to(rng, d, {u1});
    const Point u2 = axpy(scaled(u1, std::cos(theta)), std::sin(theta), w);
    // u mostly orthogonal to the plane, with a random in-plane part.
    const Point perp = unit_orthogonal_to(rng, d, {u1, w});
    const double tiltx = uniform(rng, -0.3, 0.3), tilty = uniform(rng, -0.3, 0.3);
    const Point u = normalized(axpy(axpy(perp, tiltx, u1), tilty, w));
    const double slack1 = uniform(rng, 1.0, 1.5), slack2 = uniform(rng, 1.0, 1.5);
    const double eps1 = std::max(std::abs(inner(u, u1)) * slack1, 1e-12);
    const double eps2 = std::max(std::abs(inner(u, u2)) * slack2, 1e-12);
    const Point v = normalized(axpy(scaled(u1, uniform(rng, -1, 1)), uniform(rng, -1, 1), u2));
    return ipr_estimate_check(UnitVector(u), UnitVector(u1), UnitVector(u2), UnitVector(v), eps1,
                              eps2);
  });
}

SuiteResult run_dn1_suite(std::size_t trials, std::uint64_t seed) {
  return run_suite("dn1", trials, seed, [](Rng& rng) {
    const std::size_t d = 2 + rng() % 3;
    const double eps = uniform(rng, 0.01, 0.6);
    const NearLine l = near_line(rng, d, eps);
    std::vector<Point> pts{normal_partner(rng, l, eps), l.y1, l.y2, l.y3};
    add_extra_points(rng, pts, rng() % 5, rng() % 2 ? 0.0 : 1e-3);
    return dn1_check(PointSet(d, pts), 0, 1, 2, 3, eps);
  });
}

SuiteResult run_dn2_suite(std::size_t trials, std::uint64_t seed) {
  return run_suite("dn2", trials, seed, [](Rng& rng) {
    const std::size_t d = 3 + rng() % 2;
    const double eps = uniform(rng, 0.01, 0.6);
    const NearLine l = near_line(rng, d, eps);
    std::vector<Point> pts{normal_partner(rng, l, eps), normal_partner(rng, l, eps), l.y1, l.y2,
                           l.y3};
    add_extra_points(rng, pts, rng() % 4, rng() % 2 ? 0.0 : 1e-3);
    return dn2_check(PointSet(d, pts), 0, 1, 2, 3, 4, eps);
  });
}

SuiteResult run_dn3_suite(std::size_t trials, std::uint64_t seed) {
  return run_suite("dn3", trials, seed, [](Rng& rng) {
    const std::size_t d = 2 + rng() % 3;
    Point y2(d);
    for (double& x : y2) x = uniform(rng, -2.0, 2.0);
    const Point f = gaussian_unit(rng, d);
    const double delta = std::exp(uniform(rng, std::log(1e-3), std::log(0.5)));
    const Point y1 = axpy(y2, delta, f);
    // Double-normality of x y1 and x y2 puts the projection of x onto the
    // line y1 y2 between y1 and y2.
    auto partner = [&] {
      const Point n = unit_orthogonal_to(rng, d, {f});
      const Point foot = axpy(y2, uniform(rng, -0.25, 1.25) * delta, f);
      return axpy(foot, uniform(rng, 0.5, 3.0), n);
    };
    std::vector<Point> pts{partner(), partner(), y1, y2};
    add_extra_points(rng, pts, rng() % 3, rng() % 2 ? 0.0 : 1e-4);
    return dn3_check(PointSet(d, pts), 0, 1, 2, 3);
  });
}

}  // namespace dnormal
