#include "dnormal/pair_analysis.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace dnormal {

std::string to_string(PairClass c) {
  switch (c) {
    case PairClass::none: return "NONE";
    case PairClass::double_normal: return "DN";
    case PairClass::strict: return "STRICT";
  }
  return "?";
}

PairClass PairGraph::at(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  auto it = std::lower_bound(edges.begin(), edges.end(), std::pair{i, j},
                             [](const Edge& e, const std::pair<std::size_t, std::size_t>& key) {
                               return std::pair{e.i, e.j} < key;
                             });
  if (it != edges.end() && it->i == i && it->j == j) return it->cls;
  return PairClass::none;
}

namespace {

// Folds the slab test of one point z into the running class. Returns false
// once the pair is known to be NONE.
inline bool fold(Ordering near_p, Ordering near_q, PairClass& cls) {
  if (near_p == Ordering::less || near_q == Ordering::less) {
    cls = PairClass::none;
    return false;
  }
  if (near_p == Ordering::equal || near_q == Ordering::equal) cls = PairClass::double_normal;
  return true;
}

/// Slab predicate over one point set, in either arithmetic.
class SlabKernel {
 public:
  SlabKernel(const PointSet& v, const Tolerance& tol) : v_(v), tol_(tol) {
    tol_.validate();
    if (tol_.is_exact()) {
      if (!v.is_integral()) {
        throw InvalidArgument(
            "exact-integer mode requires integer coordinates of magnitude <= 2^31");
      }
      ints_.reserve(v.size());
      for (const Point& p : v.points()) ints_.push_back(to_integer(p));
    }
  }

  std::size_t size() const { return v_.size(); }

  // Tests point z against the slab of (i, j); false means z is outside.
  bool test(std::size_t i, std::size_t j, std::size_t z, PairClass& cls) const {
    if (tol_.is_exact()) {
      const Int128 near_p = inner_diff_exact(ints_[i], ints_[j], ints_[z]);
      const Int128 near_q = inner_diff_exact(ints_[j], ints_[i], ints_[z]);
      return fold(order_of(near_p), order_of(near_q), cls);
    }
    const Point& p = v_[i];
    const Point& q = v_[j];
    const Point& r = v_[z];
    double ww = 0.0, near_p = 0.0, near_q = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double w = q[k] - p[k];
      ww += w * w;
      near_p += w * (r[k] - p[k]);
      near_q += w * (q[k] - r[k]);
    }
    return fold(compare(near_p, 0.0, tol_, ww), compare(near_q, 0.0, tol_, ww), cls);
  }

  PairClass classify(std::size_t i, std::size_t j) const {
    PairClass cls = PairClass::strict;
    for (std::size_t z = 0; z < v_.size(); ++z) {
      if (z == i || z == j) continue;
      if (!test(i, j, z, cls)) return PairClass::none;
    }
    return cls;
  }

  // Same result as classify(); `killer` is tried first and updated with the
  // point that rejected the pair.
  PairClass classify_witness_first(std::size_t i, std::size_t j, std::size_t& killer) const {
    if (killer < v_.size() && killer != i && killer != j) {
      PairClass probe = PairClass::strict;
      if (!test(i, j, killer, probe)) return PairClass::none;
    }
    PairClass cls = PairClass::strict;
    for (std::size_t z = 0; z < v_.size(); ++z) {
      if (z == i || z == j) continue;
      if (!test(i, j, z, cls)) {
        killer = z;
        return PairClass::none;
      }
    }
    return cls;
  }

 private:
  static Ordering order_of(Int128 x) {
    return x < 0 ? Ordering::less : (x == 0 ? Ordering::equal : Ordering::greater);
  }

  const PointSet& v_;
  Tolerance tol_;
  std::vector<IntPoint> ints_;
};

void require_index(const PointSet& v, std::size_t i) {
  if (i >= v.size()) throw InvalidArgument("point index " + std::to_string(i) + " out of range");
}

unsigned resolve_threads(unsigned requested) {
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

}  // namespace

PairClass classify_pair(const PointSet& v, std::size_t i, std::size_t j, const Tolerance& tol) {
  require_index(v, i);
  require_index(v, j);
  if (i == j) throw InvalidArgument("classify_pair needs two different indices");
  if (coincident(v[i], v[j], tol)) {
    throw CoincidentPoints("points " + std::to_string(i) + " and " + std::to_string(j) +
                           " coincide");
  }
  require_distinct(v, tol);
  return SlabKernel(v, tol).classify(i, j);
}

PairGraph double_normal_graph(const PointSet& v, const Tolerance& tol,
                              const GraphOptions& options) {
  if (v.size() < 2) throw InvalidArgument("double_normal_graph needs at least two points");
  require_distinct(v, tol);
  const SlabKernel kernel(v, tol);
  const std::size_t n = v.size();

  std::vector<std::vector<Edge>> rows(n);
  auto run_row = [&](std::size_t i) {
    std::size_t killer = n;
    for (std::size_t j = i + 1; j < n; ++j) {
      const PairClass c = options.strategy == GraphStrategy::witness_first
                              ? kernel.classify_witness_first(i, j, killer)
                              : kernel.classify(i, j);
      if (c != PairClass::none) rows[i].push_back({i, j, c});
    }
  };

  const unsigned threads = std::min<unsigned>(resolve_threads(options.threads),
                                              static_cast<unsigned>(n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) run_row(i);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < n; i += threads) run_row(i);
      });
    }
  }

  PairGraph g;
  g.n = n;
  for (auto& row : rows) {
    for (const Edge& e : row) {
      ++g.double_normal_count;
      if (e.cls == PairClass::strict) ++g.strict_count;
      g.edges.push_back(e);
    }
  }
  return g;
}

std::vector<std::pair<std::size_t, std::size_t>> diameter_pairs(const PointSet& v,
                                                                const Tolerance& tol) {
  if (v.size() < 2) throw InvalidArgument("diameter_pairs needs at least two points");
  tol.validate();
  require_distinct(v, tol);
  const std::size_t n = v.size();
  std::vector<std::pair<std::size_t, std::size_t>> out;

  if (tol.is_exact()) {
    std::vector<IntPoint> ints;
    for (const Point& p : v.points()) ints.push_back(to_integer(p));
    auto d2 = [&](std::size_t i, std::size_t j) {
      Int128 s = 0;
      for (std::size_t k = 0; k < v.dim(); ++k) {
        const Int128 d = ints[i][k] - ints[j][k];
        s += d * d;
      }
      return s;
    };
    Int128 best = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) best = std::max(best, d2(i, j));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (d2(i, j) == best) out.emplace_back(i, j);
    return out;
  }

  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) best = std::max(best, squared_distance(v[i], v[j]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (compare(squared_distance(v[i], v[j]), best, tol, best) == Ordering::equal)
        out.emplace_back(i, j);
  return out;
}

MultipartiteReport verify_complete_multipartite(const PointSet& v,
                                                const std::vector<std::vector<std::size_t>>& classes,
                                                bool strict, const Tolerance& tol,
                                                const GraphOptions& options) {
  const std::size_t n = v.size();
  std::vector<std::size_t> owner(n, classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].empty()) throw InvalidArgument("class " + std::to_string(c) + " is empty");
    for (std::size_t i : classes[c]) {
      if (i >= n) throw InvalidArgument("class index " + std::to_string(i) + " out of range");
      if (owner[i] != classes.size()) {
        throw InvalidArgument("index " + std::to_string(i) + " appears in two classes");
      }
      owner[i] = c;
    }
  }
  if (std::find(owner.begin(), owner.end(), classes.size()) != owner.end()) {
    throw InvalidArgument("classes do not cover every point");
  }

  MultipartiteReport report;
  if (classes.size() < 2) return report;

  const PairGraph g = double_normal_graph(v, tol, options);
  const PairClass need = strict ? PairClass::strict : PairClass::double_normal;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (owner[i] == owner[j]) continue;
      ++report.cross_pairs;
      const PairClass c = g.at(i, j);
      if (c < need) report.missing.push_back({i, j, c});
    }
  }
  report.ok = report.missing.empty();
  return report;
}

CountSummary count_summary(const PointSet& v, const Tolerance& tol, const GraphOptions& options) {
  const PairGraph g = double_normal_graph(v, tol, options);
  CountSummary s;
  s.n = v.size();
  s.double_normal = g.double_normal_count;
  s.strict = g.strict_count;
  s.diameter_pairs = diameter_pairs(v, tol).size();
  const double n = static_cast<double>(s.n);
  s.density_ratio = static_cast<double>(s.double_normal) / (n * n / 2.0);
  const std::size_t kmax = std::max<std::size_t>(1, v.dim() > 1 ? v.dim() - 1 : 1);
  for (std::size_t k = 1; k <= kmax; ++k) {
    s.turan_curve.push_back(0.5 * (1.0 - 1.0 / static_cast<double>(k)) * n * n);
  }
  return s;
}

std::string edges_tsv(const PairGraph& g) {
  std::ostringstream os;
  for (const Edge& e : g.edges) os << e.i << '\t' << e.j << '\t' << to_string(e.cls) << '\n';
  return os.str();
}

unsigned threads_from_environment() {
  const char* env = std::getenv("NP_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || v < 0) return 0;
  return static_cast<unsigned>(v);
}

}  // namespace dnormal
