#include "dnormal/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace dnormal {

namespace {

std::string triple_name(std::size_t i, std::size_t j, std::size_t k) {
  std::ostringstream os;
  os << '(' << i << ',' << j << ',' << k << ')';
  return os.str();
}

void require_seed_shape(std::size_t m, std::size_t dim, std::size_t dirs) {
  if (m < 2) throw InvalidArgument("a seed needs at least two points");
  if (dirs != m) throw InvalidArgument("a seed needs one direction per point");
  if (dim == 0) throw InvalidArgument("seed dimension must be positive");
}

// Shared triple scan; T is double or Int128. `acute(i, j, k)` returns
// <p_i - p_j, p_k - p_j>, `proj(i, j)` returns <u_i, p_j>.
template <typename T, typename Acute, typename Proj>
void scan_seed(std::size_t m, Acute acute, Proj proj, const Tolerance& tol, double scale,
               SeedReport& rep) {
  auto positive = [&](T x) {
    if constexpr (std::is_same_v<T, double>) {
      return compare(x, 0.0, tol, scale) == Ordering::greater;
    } else {
      return x > 0;
    }
  };
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const T pi = proj(i, i), pj = proj(i, j);
      const T left = pi - pj;   // <u_i, p_i - p_j>
      const T right = pj - pi;  // <u_i, p_j - p_i>
      if (m == 2) {
        rep.min_cond_gap = std::min(rep.min_cond_gap, static_cast<double>(right - left) / 2.0);
        if (!positive(right - left)) {
          rep.ok = false;
          rep.violations.push_back("cond " + triple_name(i, j, j));
        }
        continue;
      }
      for (std::size_t k = 0; k < m; ++k) {
        if (k == i || k == j) continue;
        const T mid = proj(i, k) - pj;  // <u_i, p_k - p_j>
        const T gap = std::min(mid - left, right - mid);
        rep.min_cond_gap = std::min(rep.min_cond_gap, static_cast<double>(gap));
        if (!positive(mid - left) || !positive(right - mid)) {
          rep.ok = false;
          rep.violations.push_back("cond " + triple_name(i, j, k));
        }
        const T ac = acute(i, j, k);
        rep.min_acute_margin = std::min(rep.min_acute_margin, static_cast<double>(ac));
        if (!positive(ac)) {
          rep.ok = false;
          rep.violations.push_back("angle " + triple_name(i, j, k));
        }
      }
    }
  }
}

}  // namespace

SeedReport verify_seed(const Seed& s, const Tolerance& tol) {
  const std::size_t m = s.size();
  require_seed_shape(m, s.dim, s.directions.size());
  const PointSet pts(s.dim, s.points);
  require_distinct(pts, tol);
  for (const UnitVector& u : s.directions) {
    if (u.dim() != s.dim) throw DimensionMismatch("seed direction of wrong dimension");
  }
  double scale = 0.0;
  for (const Point& p : s.points) scale = std::max(scale, squared_norm(p));
  scale = std::max(scale, 1.0);

  SeedReport rep;
  scan_seed<double>(
      m,
      [&](std::size_t i, std::size_t j, std::size_t k) {
        return inner(subtract(s.points[i], s.points[j]), subtract(s.points[k], s.points[j]));
      },
      [&](std::size_t i, std::size_t j) { return inner(s.directions[i], s.points[j]); }, tol,
      scale, rep);
  return rep;
}

SeedReport verify_seed(const IntegerSeed& s) {
  const std::size_t m = s.size();
  require_seed_shape(m, s.dim, s.directions.size());
  for (std::size_t i = 0; i < m; ++i) {
    if (s.points[i].size() != s.dim || s.directions[i].size() != s.dim) {
      throw DimensionMismatch("integer seed vector of wrong dimension");
    }
    for (std::size_t j = i + 1; j < m; ++j) {
      if (s.points[i] == s.points[j]) throw DuplicatePoints("seed points coincide");
    }
  }
  SeedReport rep;
  scan_seed<Int128>(
      m,
      [&](std::size_t i, std::size_t j, std::size_t k) {
        return inner_diff_exact(s.points[j], s.points[i], s.points[k]);
      },
      [&](std::size_t i, std::size_t j) { return inner_exact(s.directions[i], s.points[j]); },
      Tolerance::exact(), 1.0, rep);
  return rep;
}

Seed simplex_seed(std::size_t m) {
  if (m < 2) throw InvalidArgument("simplex_seed needs m >= 2");
  // Helmert basis of the sum-zero hyperplane of R^m; the projection of e_i
  // has squared norm (m - 1) / m, rescaled onto the unit sphere.
  const double mm = static_cast<double>(m);
  Seed s;
  s.dim = m - 1;
  for (std::size_t i = 0; i < m; ++i) {
    Point p(m - 1, 0.0);
    for (std::size_t k = 1; k < m; ++k) {
      const double kk = static_cast<double>(k);
      double h = 0.0;
      if (i < k) h = -1.0;
      else if (i == k) h = kk;
      p[k - 1] = h * std::sqrt(mm / ((mm - 1.0) * kk * (kk + 1.0)));
    }
    s.points.push_back(p);
    s.directions.emplace_back(scaled(p, -1.0));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Random subset seeds
// ---------------------------------------------------------------------------

std::size_t subset_seed_m(std::size_t d) {
  return static_cast<std::size_t>(std::floor(0.25 * std::exp(static_cast<double>(d) / 20.0)));
}

bool is_bad_triple(const SubsetFamily& f, std::size_t i, std::size_t j, std::size_t k) {
  const Subset& a = f.sets[i];
  const Subset& b = f.sets[j];
  const Subset& c = f.sets[k];
  return between_sets(a, b, c) || cond_inequality(a, c, b);
}

const Seed& SubsetSeedResult::require_seed() const {
  if (!seed) {
    throw FilteringShortfall("only " + std::to_string(survivors.size()) + " of " +
                             std::to_string(family.sets.size()) + " subsets survived, need " +
                             std::to_string(m) + "; retry with another rng seed");
  }
  return *seed;
}

SubsetSeedResult filter_family(SubsetFamily family, std::size_t m) {
  if (m < 2) throw InvalidArgument("subset seed needs m >= 2");
  if (family.d == 0) throw InvalidArgument("subset seed needs d >= 1");
  SubsetSeedResult out;
  out.d = family.d;
  out.m = m;
  const std::size_t t = family.sets.size();
  std::vector<bool> removed(t, false);
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < t; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < t; ++k) {
        if (k == i || k == j) continue;
        const Subset& a = family.sets[i];
        const Subset& b = family.sets[j];
        const Subset& c = family.sets[k];
        const bool perp = between_sets(a, b, c);
        const bool cond = cond_inequality(a, c, b);
        if (perp || cond) {
          out.bad_triples.push_back({i, j, k, perp, cond});
          removed[i] = true;
        }
      }
    }
  }
  for (std::size_t i = 0; i < t; ++i) {
    if (!removed[i]) out.survivors.push_back(i);
  }
  out.family = std::move(family);

  if (out.survivors.size() >= m) {
    const std::size_t d = out.d;
    IntegerSeed is;
    Seed fs;
    is.dim = fs.dim = d;
    const double inv = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t r = 0; r < m; ++r) {
      const IntPoint chi = out.family.sets[out.survivors[r]].chi();
      IntPoint u(d);
      Point p(d), uf(d);
      for (std::size_t e = 0; e < d; ++e) {
        u[e] = 1 - 2 * chi[e];
        p[e] = static_cast<double>(chi[e]);
        uf[e] = static_cast<double>(u[e]) * inv;
      }
      is.points.push_back(chi);
      is.directions.push_back(u);
      fs.points.push_back(p);
      fs.directions.emplace_back(uf);
    }
    out.report = verify_seed(is);
    out.exact_seed = std::move(is);
    out.seed = std::move(fs);
  }
  return out;
}

SubsetSeedResult subset_seed(std::size_t d, std::uint64_t rng_seed, std::size_t m) {
  if (d < 1) throw InvalidArgument("subset_seed needs d >= 1");
  if (m == 0) {
    m = subset_seed_m(d);
    if (m < 2) {
      throw InvalidArgument("floor(e^(d/20)/4) = " + std::to_string(m) +
                            " is below 2 at d = " + std::to_string(d) +
                            "; pass an explicit m");
    }
  }
  std::mt19937_64 rng(rng_seed);
  SubsetFamily family;
  family.d = d;
  for (std::size_t s = 0; s < 2 * m; ++s) {
    Subset a(d);
    for (std::uint64_t& w : a.words()) w = rng();
    if (d % 64 != 0) a.words().back() &= (std::uint64_t{1} << (d % 64)) - 1;
    family.sets.push_back(std::move(a));
  }
  SubsetSeedResult out = filter_family(std::move(family), m);
  out.rng_seed = rng_seed;
  return out;
}

// ---------------------------------------------------------------------------
// Lift
// ---------------------------------------------------------------------------

namespace {

struct Projections {
  std::vector<double> self, alpha, beta;  // <u_i, p_i>, min_{j != i}, max_j
};

Projections projections(const Seed& s) {
  const std::size_t m = s.size();
  Projections out;
  for (std::size_t i = 0; i < m; ++i) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t j = 0; j < m; ++j) {
      const double x = inner(s.directions[i], s.points[j]);
      hi = std::max(hi, x);
      if (j != i) lo = std::min(lo, x);
    }
    out.self.push_back(inner(s.directions[i], s.points[i]));
    out.alpha.push_back(lo);
    out.beta.push_back(hi);
  }
  return out;
}

}  // namespace

EpsBreakdown eps_policy(const Seed& s, std::size_t n_per_class, const LiftParams& params) {
  const std::size_t m = s.size();
  require_seed_shape(m, s.dim, s.directions.size());
  const Projections pr = projections(s);
  const double inf = std::numeric_limits<double>::infinity();
  EpsBreakdown e{inf, inf, inf, inf, inf};

  double min_alpha = inf;
  for (std::size_t i = 0; i < m; ++i) {
    const double a = pr.alpha[i] - pr.self[i];
    const double b = pr.beta[i] - pr.self[i];
    // (b + eps) / 2 < a - eps  <=>  eps < (2a - b) / 3
    e.interval = std::min(e.interval, (2.0 * a - b) / 3.0 / 2.0);
    min_alpha = std::min(min_alpha, a);
  }

  double max_dist = 0.0, min_dist = inf;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double dd = distance(s.points[i], s.points[j]);
      max_dist = std::max(max_dist, dd);
      min_dist = std::min(min_dist, dd);
    }
  }
  e.spacing = min_dist / 2.0;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < m; ++k) {
        if (i == j || j == k || i == k) continue;
        const double ac = inner(subtract(s.points[i], s.points[j]), subtract(s.points[k], s.points[j]));
        e.slab = std::min(e.slab, ac / (4.0 * max_dist) / 2.0);
      }
    }
  }
  if (params.arc_budget > 0) {
    e.arc = params.arc_budget * min_alpha / static_cast<double>(std::max<std::size_t>(n_per_class, 2) - 1);
  }
  e.eps = std::min({e.interval, e.slab, e.spacing, e.arc});
  if (!(e.eps > 0) || !std::isfinite(e.eps)) {
    throw InvalidArgument("seed admits no positive eps (cond or acuteness fails)");
  }
  return e;
}

LiftResult lift_with_eps(const Seed& s, std::size_t n_per_class, double eps,
                         const LiftParams& params) {
  const std::size_t m = s.size();
  const std::size_t d = s.dim;
  require_seed_shape(m, d, s.directions.size());
  if (n_per_class == 0) throw InvalidArgument("lift needs N >= 1");
  if (!(eps > 0)) throw InvalidArgument("lift needs eps > 0");
  const Projections pr = projections(s);

  LiftResult out;
  out.state.eps = eps;
  std::vector<Point> pts;
  auto embed = [&](const Point& p) {
    Point x(d + m, 0.0);
    std::copy(p.begin(), p.end(), x.begin());
    return x;
  };

  for (std::size_t i = 0; i < m; ++i) {
    const Point& p = s.points[i];
    const Point& u = s.directions[i].coords();
    const double alpha = pr.alpha[i] - pr.self[i];
    const double beta = pr.beta[i] - pr.self[i];
    const double lo = 0.5 * (beta + eps);
    const double hi = alpha - eps;
    if (!(lo < hi)) throw InvalidArgument("empty radius interval for this eps");

    LiftClassState cs;
    cs.alpha = pr.alpha[i];
    cs.beta = pr.beta[i];
    const double r = lo + params.radius_fraction * (hi - lo);
    const double bpos = beta + eps;
    cs.radius = r;
    cs.center = embed(axpy(p, r, u));
    cs.a = embed(axpy(p, alpha - eps, u));
    cs.b = embed(axpy(p, bpos, u));
    cs.q = embed(axpy(p, 2.0 * r, u));

    // Plane coordinates (U along u_i, W along v_i) of the point at arc
    // parameter phi measured from p_i at the centre.
    auto plane = [r](double phi) {
      const double h = std::sin(0.5 * phi);
      return std::pair{2.0 * r * h * h, r * std::sin(phi)};
    };
    const double start = std::min(params.start_fraction * eps, 0.5 * r);
    double phi = 2.0 * std::asin(start / (2.0 * r));
    cs.arc.push_back(phi);
    for (std::size_t t = 1; t < n_per_class; ++t) {
      const auto [xu, xw] = plane(phi);
      // Normal to b - x; second intersection of x + s n with the circle.
      const double nu = xw, nw = bpos - xu;
      const double s2 = -2.0 * ((xu - r) * nu + xw * nw) / (nu * nu + nw * nw);
      const double yu = xu + s2 * nu, yw = xw + s2 * nw;
      const double phi_y = std::atan2(yw, r - yu);
      if (!(phi_y > 0.0 && phi_y < phi)) throw InvalidArgument("arc recursion left the arc");
      phi = params.step_fraction * phi_y;
      if (!(phi > 0.0)) throw InvalidArgument("arc parameter underflow");
      cs.arc.push_back(phi);
    }

    std::vector<std::size_t> cls;
    for (double ph : cs.arc) {
      const auto [pu, pw] = plane(ph);
      Point x = embed(axpy(p, pu, u));
      x[d + i] = pw;
      cls.push_back(pts.size());
      pts.push_back(std::move(x));
    }
    out.classes.push_back(std::move(cls));
    out.state.classes.push_back(std::move(cs));
  }
  out.points = PointSet(d + m, std::move(pts));
  return out;
}

LiftResult lift(const Seed& s, std::size_t n_per_class, const Tolerance& tol,
                const LiftParams& params, const GraphOptions& options) {
  if (n_per_class == 0) throw InvalidArgument("lift needs N >= 1");
  const SeedReport rep = verify_seed(s, tol);
  if (!rep.ok) {
    throw InvalidArgument("seed fails verification: " +
                          (rep.violations.empty() ? std::string("?") : rep.violations.front()));
  }
  const EpsBreakdown initial = eps_policy(s, n_per_class, params);
  double eps = initial.eps;
  for (int h = 0; h <= params.max_halvings; ++h, eps *= 0.5) {
    LiftResult res;
    try {
      res = lift_with_eps(s, n_per_class, eps, params);
    } catch (const InvalidArgument&) {
      continue;
    } catch (const DuplicatePoints&) {
      continue;
    }
    try {
      res.verification = verify_complete_multipartite(res.points, res.classes, true, tol, options);
    } catch (const DuplicatePoints&) {
      continue;
    }
    if (!res.verification.ok) continue;
    res.state.halvings = h;
    res.state.initial = initial;
    const PairGraph g = double_normal_graph(res.points, tol, options);
    std::vector<std::size_t> owner(res.points.size());
    for (std::size_t c = 0; c < res.classes.size(); ++c) {
      for (std::size_t idx : res.classes[c]) owner[idx] = c;
    }
    for (const Edge& e : g.edges) {
      if (owner[e.i] != owner[e.j]) continue;
      ++res.within_double_normal;
      if (e.cls == PairClass::strict) ++res.within_strict;
    }
    return res;
  }
  throw EpsilonBudgetExhausted("no eps in " + std::to_string(params.max_halvings) +
                               " halvings passed strict verification");
}

// ---------------------------------------------------------------------------
// Dimension bound
// ---------------------------------------------------------------------------

std::uint64_t corollary2_g(std::uint64_t n) {
  const long double x = 0.25L * std::exp(static_cast<long double>(n) / 20.0L);
  return static_cast<std::uint64_t>(std::floor(x)) + n;
}

Corollary2 corollary2_m(std::uint64_t d) {
  Corollary2 out;
  out.d = d;
  std::uint64_t n = 0;
  while (corollary2_g(n + 1) <= d) ++n;
  out.n = n;
  out.bound = static_cast<std::int64_t>(d) - static_cast<std::int64_t>(n) - 1;
  out.applicable = out.bound >= 2;
  out.closed_form = d == 0 ? -std::numeric_limits<double>::infinity()
                           : static_cast<double>(d) - 20.0 * std::log(4.0 * static_cast<double>(d)) - 1.0;
  return out;
}

}  // namespace dnormal
