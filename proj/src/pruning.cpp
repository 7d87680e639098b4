#include "dnormal/pruning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

namespace dnormal {

namespace {

double diameter_of(const std::vector<Point>& pts, const std::vector<std::size_t>& idx) {
  double best = 0.0;
  for (std::size_t x = 0; x < idx.size(); ++x) {
    for (std::size_t y = x + 1; y < idx.size(); ++y) {
      best = std::max(best, squared_distance(pts[idx[x]], pts[idx[y]]));
    }
  }
  return std::sqrt(best);
}

void require_eps(double eps) {
  if (!(eps > 0.0 && eps < std::numbers::pi / 3.0)) {
    throw InvalidArgument("eps must lie in (0, pi/3)");
  }
}

}  // namespace

double max_line_angle(const std::vector<Point>& points) {
  std::vector<Point> dirs;
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = a + 1; b < points.size(); ++b) {
      dirs.push_back(normalized(subtract(points[b], points[a])));
    }
  }
  // The largest line angle belongs to the smallest |cos|.
  double min_cos = 1.0;
  for (std::size_t x = 0; x < dirs.size(); ++x) {
    for (std::size_t y = x + 1; y < dirs.size(); ++y) {
      min_cos = std::min(min_cos, std::abs(inner(dirs[x], dirs[y])));
    }
  }
  return std::acos(std::min(min_cos, 1.0));
}

std::size_t prune_t(double eps) {
  require_eps(eps);
  return static_cast<std::size_t>(std::ceil(1.0 / (eps * std::cos(eps))));
}

std::size_t prune_class_size(std::size_t t, std::size_t e) {
  std::size_t p = 1;
  for (std::size_t k = 0; k < e; ++k) {
    if (p > (std::numeric_limits<std::size_t>::max() / 4) / t) {
      throw InvalidArgument("class size 2 t^e + 1 overflows");
    }
    p *= t;
  }
  return 2 * p + 1;
}

std::vector<std::size_t> betweenness_order(const NearCollinearClass& c) {
  const auto& pts = c.points;
  const std::size_t n = pts.size();
  if (n < 2) throw InvalidArgument("betweenness order needs at least two points");
  require_eps(c.eps);

  std::size_t first = 0;
  double best = -1.0;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      const double d2 = squared_distance(pts[x], pts[y]);
      if (d2 > best) {
        best = d2;
        first = x;
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> dist(n);
  for (std::size_t x = 0; x < n; ++x) dist[x] = squared_distance(pts[first], pts[x]);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  if (order[0] != first) std::swap(order[0], *std::find(order.begin(), order.end(), first));

  for (std::size_t x = 1; x < n; ++x) {
    if (!(dist[order[x]] > dist[order[x - 1]])) {
      throw BetweennessInconsistent("distances from the first point are not strictly increasing");
    }
  }
  const double limit = std::numbers::pi - c.eps;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = x + 1; y < n; ++y) {
      for (std::size_t z = y + 1; z < n; ++z) {
        if (!(angle_closed(pts[order[x]], pts[order[y]], pts[order[z]]) > limit)) {
          throw BetweennessInconsistent("ordered triple is not a betweenness triple");
        }
      }
    }
  }
  return order;
}

WitnessCheck check_witness(const std::vector<std::array<Point, 3>>& abc, double eps) {
  WitnessCheck w;
  w.min_angle = std::numbers::pi;
  w.min_factor = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < abc.size(); ++i) {
    const auto& [a, b, c] = abc[i];
    const double ang = angle_closed(a, b, c);
    w.min_angle = std::min(w.min_angle, ang);
    if (!(ang > std::numbers::pi - eps)) w.q2 = false;
    const double ac = distance(a, c);
    const double ab = distance(a, b);
    w.min_factor = std::min(w.min_factor, ab / ac);
    if (!(ab >= 0.5 * ac)) w.q4 = false;
    if (i + 1 < abc.size()) {
      const double next = distance(abc[i + 1][0], abc[i + 1][2]);
      w.max_ratio = std::max(w.max_ratio, next / ac);
      if (!(next <= eps * ac)) w.q3 = false;
    }
  }
  return w;
}

PruneWitness prune(const std::vector<NearCollinearClass>& classes, double eps) {
  const std::size_t k = classes.size();
  if (k == 0) throw InvalidArgument("prune needs at least one class");
  require_eps(eps);
  PruneWitness w;
  w.eps = eps;
  w.t = prune_t(eps);
  const std::size_t t = w.t;
  const std::size_t expected = prune_class_size(t, k - 1);
  for (std::size_t c = 0; c < k; ++c) {
    if (classes[c].points.size() != expected) {
      throw ClassSizeMismatch("class " + std::to_string(c) + " has " +
                              std::to_string(classes[c].points.size()) + " points, expected " +
                              std::to_string(expected));
    }
  }

  struct Work {
    std::size_t original;
    std::vector<std::size_t> idx;  // original point indices, betweenness order
  };
  std::vector<Work> work;
  for (std::size_t c = 0; c < k; ++c) {
    NearCollinearClass cc{classes[c].points, eps};
    work.push_back({c, betweenness_order(cc)});
  }
  auto diam = [&](const Work& wk) { return diameter_of(classes[wk.original].points, wk.idx); };

  for (std::size_t i = 0; i < k; ++i) {
    std::vector<std::size_t> sizes;
    for (std::size_t j = i; j < k; ++j) sizes.push_back(work[j].idx.size());
    w.iteration_sizes.push_back(std::move(sizes));

    // Relabel: the class of largest diameter moves to position i.
    std::size_t best = i;
    double best_d = diam(work[i]);
    for (std::size_t j = i + 1; j < k; ++j) {
      const double dj = diam(work[j]);
      if (dj > best_d || (dj == best_d && work[j].original < work[best].original)) {
        best = j;
        best_d = dj;
      }
    }
    std::rotate(work.begin() + static_cast<std::ptrdiff_t>(i),
                work.begin() + static_cast<std::ptrdiff_t>(best),
                work.begin() + static_cast<std::ptrdiff_t>(best) + 1);

    if (i + 1 == k) break;
    const std::size_t block = prune_class_size(t, k - i - 2);
    for (std::size_t j = i + 1; j < k; ++j) {
      Work& wk = work[j];
      const auto& pts = classes[wk.original].points;
      const double limit = eps * diam(wk);
      bool found = false;
      for (std::size_t s = 0; s < t && !found; ++s) {
        const std::size_t start = (block - 1) * s;
        std::vector<std::size_t> window(wk.idx.begin() + static_cast<std::ptrdiff_t>(start),
                                        wk.idx.begin() + static_cast<std::ptrdiff_t>(start + block));
        if (diameter_of(pts, window) <= limit) {
          wk.idx = std::move(window);
          found = true;
        }
      }
      if (!found) {
        throw NoQualifyingWindow("no window of class " + std::to_string(wk.original) +
                                 " has diameter <= eps * diam");
      }
    }
  }

  for (const Work& wk : work) {
    const auto& pts = classes[wk.original].points;
    std::size_t a = wk.idx.front(), c = wk.idx.back();
    double best = -1.0;
    for (std::size_t x = 0; x < wk.idx.size(); ++x) {
      for (std::size_t y = x + 1; y < wk.idx.size(); ++y) {
        const double d2 = squared_distance(pts[wk.idx[x]], pts[wk.idx[y]]);
        if (d2 > best) {
          best = d2;
          a = wk.idx[x];
          c = wk.idx[y];
        }
      }
    }
    std::size_t b = wk.idx[wk.idx.size() / 2];
    if (b == a || b == c) {
      for (std::size_t x : wk.idx) {
        if (x != a && x != c) {
          b = x;
          break;
        }
      }
    }
    if (distance(pts[a], pts[b]) < distance(pts[c], pts[b])) std::swap(a, c);
    w.class_order.push_back(wk.original);
    w.pruned.push_back(wk.idx);
    w.abc.push_back({a, b, c});
    w.points.push_back({pts[a], pts[b], pts[c]});
  }
  w.check = check_witness(w.points, eps);
  return w;
}

std::vector<NearCollinearClass> gen_near_collinear(std::size_t k, double eps,
                                                   std::uint64_t rng_seed, std::size_t dim) {
  require_eps(eps);
  if (k == 0) throw InvalidArgument("gen_near_collinear needs k >= 1");
  if (dim < 2) throw InvalidArgument("gen_near_collinear needs dim >= 2");
  const std::size_t n = prune_class_size(prune_t(eps), k - 1);
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss;

  auto random_unit = [&] {
    for (;;) {
      Point p(dim);
      for (double& x : p) x = gauss(rng);
      if (norm(p) > 1e-6) return normalized(p);
    }
  };

  std::vector<NearCollinearClass> out;
  while (out.size() < k) {
    const Point e = random_unit();
    Point base(dim);
    for (double& x : base) x = -10.0 + 20.0 * unit(rng);
    const double scale = std::exp(std::log(0.2) + (std::log(5.0) - std::log(0.2)) * unit(rng));
    std::vector<double> pos{0.0};
    double min_gap = std::numeric_limits<double>::infinity();
    while (pos.size() < n) {
      const double gap = scale * (0.5 + unit(rng));
      min_gap = std::min(min_gap, gap);
      pos.push_back(pos.back() + gap);
    }
    const double jitter = 0.1 * eps * min_gap;
    NearCollinearClass cls;
    cls.eps = eps;
    for (double s : pos) {
      Point off = random_unit();
      off = axpy(off, -inner(off, e), e);
      const double len = norm(off);
      Point p = axpy(base, s, e);
      if (len > 1e-12) p = axpy(p, jitter * unit(rng) / len, off);
      cls.points.push_back(std::move(p));
    }
    if (max_line_angle(cls.points) < eps) out.push_back(std::move(cls));
  }
  return out;
}

}  // namespace dnormal
