#include "metext/random.hpp"

namespace metext {

BarycentricPoint random_point_in(const SimplicialComplex& complex, const Simplex& s, Rng& rng, double drop) {
  std::vector<BarycentricPoint::Entry> w;
  for (VertexId v : s)
    if (!rng.chance(drop)) w.emplace_back(v, rng.uniform(0.05, 1.0));
  if (w.empty()) w.emplace_back(s.vertices()[rng.below(s.size())], 1.0);
  return make_point(complex, std::move(w));
}

BarycentricPoint random_point(const SimplicialComplex& complex, Rng& rng, double drop) {
  return random_point_in(complex, rng.pick(complex.maximal_simplices()), rng, drop);
}

BarycentricPoint random_interior_point(const SimplicialComplex& complex, Rng& rng) {
  std::vector<Simplex> big;
  for (const auto& s : complex.maximal_simplices())
    if (s.size() >= 2) big.push_back(s);
  if (big.empty()) return BarycentricPoint::vertex(random_vertex(complex, rng));
  const Simplex& s = rng.pick(big);
  for (;;) {
    auto p = random_point_in(complex, s, rng, 0.3);
    if (!p.is_vertex()) return p;
  }
}

}  // namespace metext
