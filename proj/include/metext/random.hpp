#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "metext/complex.hpp"

namespace metext {

/// Seeded generator with its own uniform helpers, so sequences do not
/// depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform in [0, n); n > 0.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }
  bool chance(double p) { return uniform() < p; }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 gen_;
};

/// Random point of the simplex s. Each vertex is dropped with probability
/// `drop` (at least one is kept); the remaining weights are uniform in
/// [0.05, 1] before normalisation.
BarycentricPoint random_point_in(const SimplicialComplex& complex, const Simplex& s, Rng& rng, double drop = 0.3);

/// Random point in a uniformly chosen maximal simplex.
BarycentricPoint random_point(const SimplicialComplex& complex, Rng& rng, double drop = 0.3);

/// Random point with at least two support vertices, or a vertex if the
/// complex has no edges.
BarycentricPoint random_interior_point(const SimplicialComplex& complex, Rng& rng);

inline VertexId random_vertex(const SimplicialComplex& complex, Rng& rng) {
  return VertexId{static_cast<std::uint32_t>(rng.below(complex.vertex_count()))};
}

}  // namespace metext
