#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dnormal/geometry.hpp"
#include "dnormal/point_set.hpp"

namespace dnormal {

/// Strongest class a pair satisfies. STRICT implies DOUBLE_NORMAL.
enum class PairClass : std::uint8_t { none = 0, double_normal = 1, strict = 2 };

std::string to_string(PairClass c);

struct Edge {
  std::size_t i = 0;  // i < j
  std::size_t j = 0;
  PairClass cls = PairClass::none;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// The (strict) double-normal graph of a point set. Only pairs of class
/// DOUBLE_NORMAL or STRICT are stored, sorted by (i, j).
struct PairGraph {
  std::size_t n = 0;
  std::vector<Edge> edges;
  std::size_t double_normal_count = 0;  // N(V): every stored edge
  std::size_t strict_count = 0;         // N'(V)

  PairClass at(std::size_t i, std::size_t j) const;

  friend bool operator==(const PairGraph&, const PairGraph&) = default;
};

/// Classifies the pair (i, j) of V. With w = q - p, a point z lies in the
/// closed slab iff <w, z - p> >= 0 and <w, q - z> >= 0; the open slab uses
/// strict inequalities. Comparisons go through `compare` with scale <w, w>.
///
/// Throws InvalidArgument on i == j or an out-of-range index,
/// CoincidentPoints when points i and j coincide and DuplicatePoints when
/// any other two points of V coincide.
PairClass classify_pair(const PointSet& v, std::size_t i, std::size_t j,
                        const Tolerance& tol = {});

enum class GraphStrategy {
  brute_force,   // reference O(n^3) scan in index order
  witness_first  // tries the point that eliminated the previous pair first
};

struct GraphOptions {
  GraphStrategy strategy = GraphStrategy::brute_force;
  unsigned threads = 1;  // 0 = hardware concurrency
};

PairGraph double_normal_graph(const PointSet& v, const Tolerance& tol = {},
                              const GraphOptions& options = {});

/// All unordered pairs realizing diam(V), compared with scale diam^2.
std::vector<std::pair<std::size_t, std::size_t>> diameter_pairs(const PointSet& v,
                                                                const Tolerance& tol = {});

struct MultipartiteReport {
  bool ok = true;
  std::vector<Edge> missing;  // cross pairs below the required class
  std::size_t cross_pairs = 0;
};

/// Checks that every pair with endpoints in different classes is STRICT
/// (strict = true) or at least DOUBLE_NORMAL. Throws InvalidArgument
/// unless `classes` partitions 0..n-1 into nonempty parts.
MultipartiteReport verify_complete_multipartite(const PointSet& v,
                                                const std::vector<std::vector<std::size_t>>& classes,
                                                bool strict, const Tolerance& tol = {},
                                                const GraphOptions& options = {});

struct CountSummary {
  std::size_t n = 0;
  std::size_t double_normal = 0;
  std::size_t strict = 0;
  std::size_t diameter_pairs = 0;
  double density_ratio = 0.0;     // N / (n^2 / 2)
  std::vector<double> turan_curve;  // 1/2 (1 - 1/k) n^2 for k = 1 .. max(1, d - 1)
};

CountSummary count_summary(const PointSet& v, const Tolerance& tol = {},
                           const GraphOptions& options = {});

/// Edge list as "i<TAB>j<TAB>{DN|STRICT}" lines.
std::string edges_tsv(const PairGraph& g);

/// Thread count requested through NP_THREADS (0 or unset = auto).
unsigned threads_from_environment();

}  // namespace dnormal
