#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "metext/complex.hpp"

namespace metext {

/// Undirected simple graph on vertices 0..n-1.
struct Graph {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

Graph cycle_graph(std::size_t n);
Graph skeleton_graph(const SimplicialComplex& complex);

/// Labels "v00", "v01", ...; at least two digits.
std::vector<std::string> vertex_labels(std::size_t n);

// All generators throw InvalidParameters outside their documented ranges.

/// One n-simplex (n + 1 vertices), n >= 0.
SimplicialComplex simplex_complex(int n);
/// Path on n >= 1 vertices.
SimplicialComplex path_complex(int n);
/// Cycle on n >= 3 vertices.
SimplicialComplex cycle_complex(int n);
/// Full tree with the given branching (>= 1) and depth (>= 0); vertices in
/// breadth-first order.
SimplicialComplex tree_complex(int branching, int depth);
/// Clique complex of the graph whose edges join vertices at graph distance
/// <= radius, truncated to dimension max_dim.
SimplicialComplex rips_complex(const Graph& graph, double radius, int max_dim = 3);
/// Same for Euclidean points joined at distance <= radius.
SimplicialComplex rips_complex(const std::vector<std::vector<double>>& points, double radius, int max_dim = 3);
/// Connected random graph (random spanning tree plus each further edge with
/// probability `density`) and its clique complex truncated to max_dim.
SimplicialComplex random_complex(int n, double density, std::uint64_t seed, int max_dim = 2);

/// Flag complex of a graph truncated to dimension max_dim.
SimplicialComplex clique_complex(const Graph& graph, int max_dim);

}  // namespace metext
