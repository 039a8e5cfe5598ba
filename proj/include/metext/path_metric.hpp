#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "metext/complex.hpp"
#include "metext/vertex_metric.hpp"

namespace metext {

/// Polygonal path x = a_0, ..., a_r = y with carrier simplex carriers[i]
/// containing a_i and a_{i+1}.
struct PathWitness {
  std::vector<BarycentricPoint> points;
  std::vector<Simplex> carriers;
  double length = 0.0;
};

struct PathOptions {
  /// Longest chain of maximal simplices explored. Unset: 2*ceil(U) + 3 where
  /// U is the vertex-routing upper bound.
  std::optional<int> max_chain_length;
  /// Only chains without repeated simplices. Simple chains suffice for the
  /// minimum, since a return to an earlier simplex can be shortcut inside it.
  bool enumerate_simple_chains_only = true;
  /// Use the common-simplex and vertex-pair closed forms and seed the search
  /// with the vertex-routing path. Disable to force full chain enumeration.
  bool use_shortcuts = true;
  /// Search nodes (linear programs) before giving up with ChainBudgetExceeded.
  std::size_t max_nodes = 500000;
};

struct PathResult {
  double value = 0.0;
  PathWitness witness;
  std::size_t nodes = 0;   // branch-and-bound nodes visited
  std::size_t chains = 0;  // complete chains solved
};

struct LowerBound {
  std::string name;
  double value = 0.0;
};

struct ChainSolution {
  double value = 0.0;
  /// x, interior breakpoints, y: one more entry than the chain has simplices.
  std::vector<BarycentricPoint> points;
};

/// Sum of per-simplex l1 lengths. Throws InvalidCarrier when a carrier is
/// not a simplex of the complex or misses one of its two points.
double path_length(const SimplicialComplex& complex, std::span<const BarycentricPoint> points,
                   std::span<const Simplex> carriers);

/// Minimum path length over breakpoints a_i in sigma_i ∩ sigma_{i+1}, for a
/// fixed carrier sequence. Errors: EmptyIntersection, EndpointNotInCarrier,
/// InvalidCarrier.
ChainSolution chain_lp(const SimplicialComplex& complex, std::span<const Simplex> chain, const BarycentricPoint& x,
                       const BarycentricPoint& y);

/// Exact l1-path metric on one complex. Holds the word metric so repeated
/// queries share it. Thread-safe for concurrent const use.
class PathMetric {
 public:
  /// Throws DisconnectedComplex.
  explicit PathMetric(std::shared_ptr<const SimplicialComplex> complex);

  const SimplicialComplex& complex() const noexcept { return *complex_; }
  std::shared_ptr<const SimplicialComplex> complex_ptr() const noexcept { return complex_; }
  const WordMetricTable& word() const noexcept { return word_; }

  /// Exact d_X(x, y) with an attaining witness. Throws ChainBudgetExceeded
  /// if the search cap is hit before optimality is proven, and
  /// InternalInconsistency if the result undercuts an admissible bound.
  PathResult distance(const BarycentricPoint& x, const BarycentricPoint& y, const PathOptions& options = {}) const;

  /// Admissible lower bounds on d_X(x, y):
  ///   coordinate        half l1 distance of the full coordinate vectors
  ///   disjoint_support  1 when the supports are disjoint
  ///   sphere            sphere-crossing count around a support vertex
  ///   transport         earth mover distance w.r.t. the word metric
  std::vector<LowerBound> lower_bounds(const BarycentricPoint& x, const BarycentricPoint& y) const;
  double best_lower_bound(const BarycentricPoint& x, const BarycentricPoint& y) const;

  /// Earth mover distance between x and y with ground metric d_G.
  double transport_bound(const BarycentricPoint& x, const BarycentricPoint& y) const;
  double sphere_bound(const BarycentricPoint& x, const BarycentricPoint& y) const;

  /// Vertex-routing upper bound x -> u ~> v -> y over support vertices,
  /// with its witness.
  PathWitness routing_path(const BarycentricPoint& x, const BarycentricPoint& y) const;

  /// Edge path between two vertices along a word geodesic (smallest labels
  /// first).
  std::vector<VertexId> geodesic(VertexId from, VertexId to) const;

 private:
  PathResult search(const BarycentricPoint& x, const BarycentricPoint& y, const PathOptions& options) const;

  std::shared_ptr<const SimplicialComplex> complex_;
  WordMetricTable word_;
};

/// Convenience wrapper building a PathMetric for one query.
PathResult l1_path_distance(std::shared_ptr<const SimplicialComplex> complex, const BarycentricPoint& x,
                            const BarycentricPoint& y, const PathOptions& options = {});

}  // namespace metext
