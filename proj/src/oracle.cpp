#include "metext/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <deque>

#include "metext/error.hpp"

namespace metext {

namespace {

// Calls f on every composition of `total` into `parts` nonnegative parts.
template <class F>
void compositions(int total, std::size_t parts, std::vector<int>& cur, F&& f) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    f(cur);
    cur.pop_back();
    return;
  }
  for (int a = 0; a <= total; ++a) {
    cur.push_back(a);
    compositions(total - a, parts, cur, f);
    cur.pop_back();
  }
}

}  // namespace

GridOracle::GridOracle(const SimplicialComplex& complex, int n) : complex_(&complex), n_(n) {
  if (n < 2) throw Error(ErrorCode::ResolutionTooCoarse, "grid resolution needs n >= 2");
  const auto& maximal = complex.maximal_simplices();
  std::vector<std::vector<std::size_t>> simplex_nodes(maximal.size());
  std::vector<int> cur;
  auto node = [&](const std::vector<VertexId>& verts, const std::vector<int>& c) {
    Key key;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] > 0) key.emplace_back(verts[i].index, c[i]);
    auto [it, fresh] = index_.emplace(std::move(key), nodes_.size());
    if (fresh) {
      nodes_.push_back(it->first);
      adjacency_.emplace_back();
    }
    return it->second;
  };
  for (const auto& s : maximal) {
    const auto& verts = s.vertices();
    compositions(n, verts.size(), cur, [&](std::vector<int>& c) {
      const std::size_t p = node(verts, c);
      // one unit of mass from vertex i to vertex j
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        for (std::size_t j = 0; j < c.size(); ++j) {
          if (j == i) continue;
          --c[i], ++c[j];
          const std::size_t q = node(verts, c);
          adjacency_[p].push_back(q);
          ++c[i], --c[j];
        }
      }
    });
  }
  for (auto& a : adjacency_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
}

bool GridOracle::on_grid(const BarycentricPoint& x) const {
  for (const auto& [v, w] : x.entries())
    if (std::abs(w * n_ - std::round(w * n_)) > 1e-6) return false;
  return true;
}

std::size_t GridOracle::node_of(const BarycentricPoint& x) const {
  if (!on_grid(x)) throw Error(ErrorCode::PointNotOnGrid, "point is not on the 1/" + std::to_string(n_) + " grid");
  Key key;
  for (const auto& [v, w] : x.entries()) key.emplace_back(v.index, static_cast<int>(std::lround(w * n_)));
  auto it = index_.find(key);
  if (it == index_.end()) throw Error(ErrorCode::PointNotOnGrid, "point does not lie in the complex's grid");
  return it->second;
}

double GridOracle::distance(const BarycentricPoint& x, const BarycentricPoint& y) const {
  const std::size_t src = node_of(x);
  const std::size_t dst = node_of(y);
  // breadth-first search; every edge has length h
  std::vector<int> steps(nodes_.size(), -1);
  std::deque<std::size_t> queue{src};
  steps[src] = 0;
  while (!queue.empty()) {
    const std::size_t p = queue.front();
    queue.pop_front();
    if (p == dst) return static_cast<double>(steps[p]) / n_;
    for (std::size_t q : adjacency_[p])
      if (steps[q] < 0) {
        steps[q] = steps[p] + 1;
        queue.push_back(q);
      }
  }
  throw Error(ErrorCode::ResolutionTooCoarse, "target not reachable on the grid");
}

double grid_oracle_path_distance(const SimplicialComplex& complex, const BarycentricPoint& x,
                                 const BarycentricPoint& y, int n) {
  return GridOracle(complex, n).distance(x, y);
}

BarycentricPoint snap_to_grid(const SimplicialComplex& complex, const BarycentricPoint& x, int n) {
  const auto& e = x.entries();
  std::vector<int> units(e.size());
  std::vector<std::pair<double, std::size_t>> remainder;
  int used = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double scaled = e[i].second * n;
    units[i] = static_cast<int>(std::floor(scaled));
    used += units[i];
    remainder.emplace_back(scaled - units[i], i);
  }
  // largest remainders first; ties to the earlier vertex
  std::stable_sort(remainder.begin(), remainder.end(), [](auto& a, auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; used < n; ++k, ++used) ++units[remainder[k % remainder.size()].second];
  std::vector<BarycentricPoint::Entry> out;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (units[i] > 0) out.emplace_back(e[i].first, static_cast<double>(units[i]) / n);
  return make_point(complex, std::move(out));
}

std::vector<ScanViolation> exhaustive_metric_scan(
    const std::function<double(const BarycentricPoint&, const BarycentricPoint&)>& d,
    const std::vector<BarycentricPoint>& points, double tolerance) {
  const std::size_t n = points.size();
  std::vector<double> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = d(points[i], points[j]);

  std::vector<ScanViolation> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(m[i * n + i]) > tolerance) out.push_back({"identity", i, i, i, m[i * n + i]});
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m[i * n + j] != m[j * n + i]) out.push_back({"symmetry", i, j, j, m[i * n + j] - m[j * n + i]});
      if (!(points[i] == points[j]) && m[i * n + j] <= tolerance) out.push_back({"identity", i, j, j, m[i * n + j]});
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const double excess = m[i * n + k] - m[i * n + j] - m[j * n + k];
        if (excess > tolerance) out.push_back({"triangle", i, j, k, excess});
      }
  return out;
}

TreeOracle::TreeOracle(const SimplicialComplex& complex) {
  const std::size_t n = complex.vertex_count();
  if (complex.dimension() > 1 || complex.edge_count() + 1 != n)
    throw Error(ErrorCode::NotATree, "1-skeleton is not a tree");
  depth_.assign(n, -1);
  parent_.assign(n, 0);
  std::vector<std::uint32_t> stack{0};
  depth_[0] = 0;
  std::size_t seen = 1;
  while (!stack.empty()) {
    const std::uint32_t u = stack.back();
    stack.pop_back();
    for (VertexId v : complex.neighbors(VertexId{u})) {
      if (depth_[v.index] >= 0) continue;
      depth_[v.index] = depth_[u] + 1;
      parent_[v.index] = u;
      stack.push_back(v.index);
      ++seen;
    }
  }
  if (seen != n) throw Error(ErrorCode::NotATree, "1-skeleton is disconnected");
}

std::vector<VertexId> TreeOracle::path(VertexId a, VertexId b) const {
  std::vector<VertexId> front, back;
  std::uint32_t x = a.index, y = b.index;
  while (depth_[x] > depth_[y]) front.push_back(VertexId{x}), x = parent_[x];
  while (depth_[y] > depth_[x]) back.push_back(VertexId{y}), y = parent_[y];
  while (x != y) {
    front.push_back(VertexId{x}), x = parent_[x];
    back.push_back(VertexId{y}), y = parent_[y];
  }
  front.push_back(VertexId{x});
  front.insert(front.end(), back.rbegin(), back.rend());
  return front;
}

int TreeOracle::distance(VertexId a, VertexId b) const { return static_cast<int>(path(a, b).size()) - 1; }

int TreeOracle::gromov(VertexId a, VertexId b, VertexId c) const {
  int best = std::numeric_limits<int>::max();
  for (VertexId p : path(a, b)) best = std::min(best, distance(c, p));
  return best;
}

int TreeOracle::double_difference(VertexId x, VertexId xp, VertexId y, VertexId yp) const {
  return distance(x, y) - distance(xp, y) - distance(x, yp) + distance(xp, yp);
}

int tree_gromov_oracle(const SimplicialComplex& complex, VertexId a, VertexId b, VertexId c) {
  return TreeOracle(complex).gromov(a, b, c);
}

}  // namespace metext
