#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "metext/complex.hpp"

// Brute-force references. Nothing here calls into the path or extension
// solvers so that the two can be checked against each other.

namespace metext {

/// All points whose barycentric coordinates are multiples of h = 1/n. Two
/// grid points are adjacent when they differ by moving mass h between two
/// vertices of a common maximal simplex; such a step has l1 length h, and
/// every straight segment between grid points of one simplex splits into
/// these steps. Shortest paths restricted to grid breakpoints therefore
/// reduce to breadth-first search, and give an upper approximation of d_X.
class GridOracle {
 public:
  /// Throws ResolutionTooCoarse for n < 2.
  GridOracle(const SimplicialComplex& complex, int n);

  int resolution() const noexcept { return n_; }
  double h() const noexcept { return 1.0 / n_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }

  bool on_grid(const BarycentricPoint& x) const;
  /// Throws PointNotOnGrid, and ResolutionTooCoarse if y is unreachable.
  double distance(const BarycentricPoint& x, const BarycentricPoint& y) const;

 private:
  using Key = std::vector<std::pair<std::uint32_t, int>>;  // (vertex, numerator > 0)
  std::size_t node_of(const BarycentricPoint& x) const;

  const SimplicialComplex* complex_;
  int n_;
  std::vector<Key> nodes_;
  std::map<Key, std::size_t> index_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

double grid_oracle_path_distance(const SimplicialComplex& complex, const BarycentricPoint& x,
                                 const BarycentricPoint& y, int n);

/// Nearest grid point by largest-remainder rounding; the support can only
/// shrink.
BarycentricPoint snap_to_grid(const SimplicialComplex& complex, const BarycentricPoint& x, int n);

/// Allowed excess of the grid value over the exact one: dim * h * (1 + exact).
inline double grid_tolerance(int dimension, int n, double exact) {
  return dimension * (1.0 / n) * (1.0 + exact);
}

struct ScanViolation {
  std::string kind;  // symmetry, identity, triangle
  std::size_t i = 0, j = 0, k = 0;
  double margin = 0.0;
};

/// Every symmetry, identity-of-indiscernibles and triangle violation among
/// the given points. Identity checks d(p,p) = 0 and d(p,q) > tol for
/// distinct p, q.
std::vector<ScanViolation> exhaustive_metric_scan(
    const std::function<double(const BarycentricPoint&, const BarycentricPoint&)>& d,
    const std::vector<BarycentricPoint>& points, double tolerance = kTolerance);

/// Distances and Gromov products on a complex whose 1-skeleton is a tree.
class TreeOracle {
 public:
  /// Throws NotATree.
  explicit TreeOracle(const SimplicialComplex& complex);

  int distance(VertexId a, VertexId b) const;
  /// The unique edge path from a to b.
  std::vector<VertexId> path(VertexId a, VertexId b) const;
  /// Distance from c to the a-b path.
  int gromov(VertexId a, VertexId b, VertexId c) const;
  int double_difference(VertexId x, VertexId xp, VertexId y, VertexId yp) const;

 private:
  std::vector<int> depth_;
  std::vector<std::uint32_t> parent_;
};

int tree_gromov_oracle(const SimplicialComplex& complex, VertexId a, VertexId b, VertexId c);

}  // namespace metext
