#include "metext/generators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <set>

#include "metext/error.hpp"
#include "metext/random.hpp"

namespace metext {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidParameters, what);
}

SimplicialComplex from_index_sets(std::size_t n, const std::vector<std::vector<std::size_t>>& sets) {
  const auto labels = vertex_labels(n);
  std::vector<std::vector<std::string>> simplices;
  simplices.reserve(sets.size());
  for (const auto& s : sets) {
    std::vector<std::string> named;
    for (std::size_t i : s) named.push_back(labels[i]);
    simplices.push_back(std::move(named));
  }
  return SimplicialComplex::build(labels, simplices);
}

}  // namespace

std::vector<std::string> vertex_labels(std::size_t n) {
  std::size_t width = 2;
  for (std::size_t m = n > 0 ? n - 1 : 0; m >= 100; m /= 10) ++width;
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string digits = std::to_string(i);
    out.push_back("v" + std::string(width - std::min(width, digits.size()), '0') + digits);
  }
  return out;
}

Graph cycle_graph(std::size_t n) {
  Graph g{n, {}};
  for (std::size_t i = 0; i < n; ++i) g.edges.emplace_back(i, (i + 1) % n);
  return g;
}

Graph skeleton_graph(const SimplicialComplex& complex) {
  Graph g{complex.vertex_count(), {}};
  for (std::uint32_t u = 0; u < g.n; ++u)
    for (VertexId v : complex.neighbors(VertexId{u}))
      if (u < v.index) g.edges.emplace_back(u, v.index);
  return g;
}

SimplicialComplex simplex_complex(int n) {
  require(n >= 0 && n <= 20, "simplex dimension must be in [0, 20]");
  std::vector<std::size_t> all(n + 1);
  for (int i = 0; i <= n; ++i) all[i] = i;
  return from_index_sets(n + 1, {all});
}

SimplicialComplex path_complex(int n) {
  require(n >= 1, "path needs at least one vertex");
  std::vector<std::vector<std::size_t>> sets;
  for (int i = 0; i + 1 < n; ++i) sets.push_back({std::size_t(i), std::size_t(i + 1)});
  return from_index_sets(n, sets);
}

SimplicialComplex cycle_complex(int n) {
  require(n >= 3, "cycle needs at least three vertices");
  std::vector<std::vector<std::size_t>> sets;
  for (int i = 0; i < n; ++i) sets.push_back({std::size_t(i), std::size_t((i + 1) % n)});
  return from_index_sets(n, sets);
}

SimplicialComplex tree_complex(int branching, int depth) {
  require(branching >= 1 && depth >= 0, "tree needs branching >= 1 and depth >= 0");
  double total = 0.0;
  for (int d = 0; d <= depth; ++d) total += std::pow(branching, d);
  require(total <= 20000, "tree too large");
  std::vector<std::vector<std::size_t>> sets;
  std::size_t next = 1, level_begin = 0, level_end = 1;
  for (int d = 0; d < depth; ++d) {
    for (std::size_t p = level_begin; p < level_end; ++p)
      for (int c = 0; c < branching; ++c) sets.push_back({p, next++});
    level_begin = level_end;
    level_end = next;
  }
  return from_index_sets(next, sets);
}

SimplicialComplex clique_complex(const Graph& graph, int max_dim) {
  require(max_dim >= 0, "max_dim must be >= 0");
  const std::size_t n = graph.n;
  require(n >= 1, "graph needs at least one vertex");
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (auto [u, v] : graph.edges) {
    require(u < n && v < n && u != v, "graph edge out of range");
    adj[u][v] = adj[v][u] = true;
  }

  // Bron-Kerbosch with pivoting
  std::vector<std::vector<std::size_t>> cliques;
  std::function<void(std::vector<std::size_t>&, std::vector<std::size_t>, std::vector<std::size_t>)> expand =
      [&](std::vector<std::size_t>& r, std::vector<std::size_t> p, std::vector<std::size_t> x) {
        if (p.empty() && x.empty()) {
          cliques.push_back(r);
          return;
        }
        std::size_t pivot = !p.empty() ? p.front() : x.front();
        std::size_t best = 0;
        for (const auto* set : {&p, &x})
          for (std::size_t c : *set) {
            std::size_t cnt = 0;
            for (std::size_t q : p) cnt += adj[c][q];
            if (cnt > best) best = cnt, pivot = c;
          }
        const auto candidates = p;
        for (std::size_t v : candidates) {
          if (adj[pivot][v]) continue;
          std::vector<std::size_t> p2, x2;
          for (std::size_t q : p)
            if (adj[v][q]) p2.push_back(q);
          for (std::size_t q : x)
            if (adj[v][q]) x2.push_back(q);
          r.push_back(v);
          expand(r, std::move(p2), std::move(x2));
          r.pop_back();
          p.erase(std::find(p.begin(), p.end(), v));
          x.push_back(v);
        }
      };
  std::vector<std::size_t> r, all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  expand(r, all, {});

  const std::size_t k = static_cast<std::size_t>(max_dim) + 1;
  std::set<std::vector<std::size_t>> sets;
  for (auto& c : cliques) {
    std::sort(c.begin(), c.end());
    if (c.size() <= k) {
      sets.insert(c);
      continue;
    }
    // all k-subsets of an oversized clique
    std::vector<bool> mask(c.size(), false);
    std::fill(mask.begin(), mask.begin() + k, true);
    do {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (mask[i]) s.push_back(c[i]);
      sets.insert(std::move(s));
    } while (std::prev_permutation(mask.begin(), mask.end()));
  }
  return from_index_sets(n, {sets.begin(), sets.end()});
}

SimplicialComplex rips_complex(const Graph& graph, double radius, int max_dim) {
  require(radius >= 0.0, "radius must be >= 0");
  const std::size_t n = graph.n;
  std::vector<std::vector<std::size_t>> nbr(n);
  for (auto [u, v] : graph.edges) {
    require(u < n && v < n, "graph edge out of range");
    nbr[u].push_back(v);
    nbr[v].push_back(u);
  }
  Graph g{n, {}};
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<int> d(n, -1);
    std::deque<std::size_t> q{s};
    d[s] = 0;
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop_front();
      for (std::size_t v : nbr[u])
        if (d[v] < 0) d[v] = d[u] + 1, q.push_back(v);
    }
    for (std::size_t t = s + 1; t < n; ++t)
      if (d[t] > 0 && d[t] <= radius) g.edges.emplace_back(s, t);
  }
  return clique_complex(g, max_dim);
}

SimplicialComplex rips_complex(const std::vector<std::vector<double>>& points, double radius, int max_dim) {
  require(radius >= 0.0, "radius must be >= 0");
  Graph g{points.size(), {}};
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      require(points[i].size() == points[j].size(), "points differ in dimension");
      double s = 0.0;
      for (std::size_t c = 0; c < points[i].size(); ++c) s += (points[i][c] - points[j][c]) * (points[i][c] - points[j][c]);
      if (std::sqrt(s) <= radius) g.edges.emplace_back(i, j);
    }
  return clique_complex(g, max_dim);
}

SimplicialComplex random_complex(int n, double density, std::uint64_t seed, int max_dim) {
  require(n >= 1 && n <= 500, "random complex needs 1 <= n <= 500");
  require(density >= 0.0 && density <= 1.0, "density must be in [0, 1]");
  Rng rng(seed);
  Graph g{static_cast<std::size_t>(n), {}};
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (int i = 1; i < n; ++i) {
    const std::size_t j = rng.below(static_cast<std::size_t>(i));
    g.edges.emplace_back(j, i);
    adj[i][j] = adj[j][i] = true;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!adj[i][j] && rng.chance(density)) g.edges.emplace_back(i, j);
  return clique_complex(g, max_dim);
}

}  // namespace metext
