#include "metext/complex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "metext/error.hpp"

namespace metext {

// ---------------------------------------------------------------- Simplex

Simplex::Simplex(std::vector<VertexId> vertices) : vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
  if (vertices_.empty()) throw Error(ErrorCode::EmptySimplex, "a simplex needs at least one vertex");
}

bool Simplex::contains(VertexId v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Simplex::contains(const Simplex& face) const {
  return std::includes(vertices_.begin(), vertices_.end(), face.vertices_.begin(), face.vertices_.end());
}

bool Simplex::intersects(const Simplex& other) const {
  auto a = vertices_.begin();
  auto b = other.vertices_.begin();
  while (a != vertices_.end() && b != other.vertices_.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

Simplex Simplex::united(const Simplex& other) const {
  std::vector<VertexId> out;
  std::set_union(vertices_.begin(), vertices_.end(), other.vertices_.begin(), other.vertices_.end(),
                 std::back_inserter(out));
  return Simplex(Sorted{}, std::move(out));
}

Simplex Simplex::intersected(const Simplex& other) const {
  std::vector<VertexId> out;
  std::set_intersection(vertices_.begin(), vertices_.end(), other.vertices_.begin(), other.vertices_.end(),
                        std::back_inserter(out));
  return Simplex(Sorted{}, std::move(out));
}

std::strong_ordering operator<=>(const Simplex& a, const Simplex& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return a.vertices_ <=> b.vertices_;
}

// ------------------------------------------------------ SimplicialComplex

SimplicialComplex SimplicialComplex::build(std::vector<std::string> vertex_labels,
                                           const std::vector<std::vector<std::string>>& maximal_simplices) {
  SimplicialComplex k;
  std::sort(vertex_labels.begin(), vertex_labels.end());
  for (std::size_t i = 1; i < vertex_labels.size(); ++i) {
    if (vertex_labels[i] == vertex_labels[i - 1])
      throw Error(ErrorCode::DuplicateVertex, "vertex '" + vertex_labels[i] + "' listed twice");
  }
  k.labels_ = std::move(vertex_labels);

  std::vector<Simplex> listed;
  std::vector<bool> covered(k.labels_.size(), false);
  for (const auto& labels : maximal_simplices) {
    if (labels.empty()) throw Error(ErrorCode::EmptySimplex, "empty simplex in input");
    std::vector<VertexId> ids;
    for (const auto& l : labels) {
      auto v = k.find(l);
      if (!v) throw Error(ErrorCode::UnknownVertexInSimplex, "simplex mentions unknown vertex '" + l + "'");
      ids.push_back(*v);
      covered[v->index] = true;
    }
    listed.emplace_back(std::move(ids));
  }
  for (std::uint32_t i = 0; i < covered.size(); ++i) {
    if (!covered[i]) listed.emplace_back(std::vector<VertexId>{VertexId{i}});
  }

  // Keep only simplices not contained in another listed simplex.
  std::sort(listed.begin(), listed.end());
  listed.erase(std::unique(listed.begin(), listed.end()), listed.end());
  for (std::size_t i = 0; i < listed.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = i + 1; j < listed.size() && !dominated; ++j) {
      dominated = listed[j].size() > listed[i].size() && listed[j].contains(listed[i]);
    }
    if (!dominated) k.maximal_.push_back(listed[i]);
  }

  std::set<Simplex> faces;
  for (const auto& s : k.maximal_) {
    const auto& vs = s.vertices();
    const std::size_t n = vs.size();
    if (n > 24) throw Error(ErrorCode::InvalidParameters, "simplex dimension too large for face closure");
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<VertexId> f;
      for (std::size_t b = 0; b < n; ++b)
        if (mask & (1u << b)) f.push_back(vs[b]);
      faces.insert(Simplex(std::move(f)));
    }
    k.dimension_ = std::max(k.dimension_, s.dimension());
  }
  k.faces_.assign(faces.begin(), faces.end());

  k.adjacency_.assign(k.labels_.size(), {});
  for (const auto& f : k.faces_) {
    if (f.size() != 2) continue;
    const VertexId u = f.vertices()[0];
    const VertexId v = f.vertices()[1];
    // Abstract complexes give simple 1-skeleta; check anyway.
    if (u == v) throw Error(ErrorCode::InvalidParameters, "edge with equal endpoints");
    k.adjacency_[u.index].push_back(v);
    k.adjacency_[v.index].push_back(u);
    ++k.edge_count_;
  }
  for (auto& nbrs : k.adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
    if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
      throw Error(ErrorCode::InvalidParameters, "parallel edges in 1-skeleton");
  }
  return k;
}

std::optional<VertexId> SimplicialComplex::find(std::string_view label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == labels_.end() || *it != label) return std::nullopt;
  return VertexId{static_cast<std::uint32_t>(it - labels_.begin())};
}

VertexId SimplicialComplex::require(std::string_view label) const {
  auto v = find(label);
  if (!v) throw Error(ErrorCode::UnknownVertex, "unknown vertex '" + std::string(label) + "'");
  return *v;
}

bool SimplicialComplex::is_simplex(const Simplex& s) const {
  return !s.empty() && std::binary_search(faces_.begin(), faces_.end(), s);
}

bool SimplicialComplex::adjacent(VertexId u, VertexId v) const {
  const auto& nbrs = adjacency_.at(u.index);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::size_t> SimplicialComplex::maximal_containing(const Simplex& s) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < maximal_.size(); ++i)
    if (maximal_[i].contains(s)) out.push_back(i);
  return out;
}

std::string SimplicialComplex::describe(const Simplex& s) const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (VertexId v : s) {
    if (!first) os << ',';
    os << label(v);
    first = false;
  }
  os << '}';
  return os.str();
}

// ------------------------------------------------------- BarycentricPoint

double BarycentricPoint::weight(VertexId v) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                             [](const Entry& e, VertexId key) { return e.first < key; });
  return (it != entries_.end() && it->first == v) ? it->second : 0.0;
}

Simplex BarycentricPoint::support() const {
  std::vector<VertexId> vs;
  vs.reserve(entries_.size());
  for (const auto& [v, w] : entries_) vs.push_back(v);
  return Simplex(std::move(vs));
}

std::optional<VertexId> BarycentricPoint::as_vertex() const {
  if (entries_.size() == 1) return entries_.front().first;
  return std::nullopt;
}

BarycentricPoint make_point(const SimplicialComplex& complex, std::vector<BarycentricPoint::Entry> weights) {
  std::sort(weights.begin(), weights.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  // merge repeated keys
  std::vector<BarycentricPoint::Entry> merged;
  for (const auto& [v, w] : weights) {
    if (v.index >= complex.vertex_count())
      throw Error(ErrorCode::UnknownVertex, "vertex index out of range");
    if (!(w >= 0.0) || !std::isfinite(w))
      throw Error(ErrorCode::NegativeWeight, "weight of '" + complex.label(v) + "' is negative or not finite");
    if (!merged.empty() && merged.back().first == v) merged.back().second += w;
    else merged.emplace_back(v, w);
  }
  double total = 0.0;
  for (const auto& e : merged) total += e.second;
  if (!(total > 0.0)) throw Error(ErrorCode::WeightsNotNormalizable, "weights sum to zero");

  std::vector<BarycentricPoint::Entry> kept;
  for (const auto& [v, w] : merged)
    if (w / total >= kWeightFloor) kept.emplace_back(v, w);
  double kept_total = 0.0;
  for (const auto& e : kept) kept_total += e.second;
  for (auto& e : kept) e.second /= kept_total;

  BarycentricPoint p(std::move(kept));
  if (!complex.is_simplex(p.support()))
    throw Error(ErrorCode::SupportNotASimplex, "support " + complex.describe(p.support()) + " is not a simplex");
  return p;
}

BarycentricPoint make_point(const SimplicialComplex& complex, const std::map<std::string, double>& weights) {
  std::vector<BarycentricPoint::Entry> entries;
  for (const auto& [label, w] : weights) entries.emplace_back(complex.require(label), w);
  return make_point(complex, std::move(entries));
}

std::optional<Simplex> common_simplex(const SimplicialComplex& complex, const BarycentricPoint& x,
                                      const BarycentricPoint& y) {
  Simplex u = x.support().united(y.support());
  if (complex.is_simplex(u)) return u;
  return std::nullopt;
}

double half_l1(const BarycentricPoint& x, const BarycentricPoint& y) {
  const auto& a = x.entries();
  const auto& b = y.entries();
  std::vector<double> terms;
  terms.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      terms.push_back(a[i++].second);
    } else if (i == a.size() || b[j].first < a[i].first) {
      terms.push_back(b[j++].second);
    } else {
      terms.push_back(std::abs(a[i++].second - b[j++].second));
    }
  }
  // summing in value order makes the result independent of vertex labels
  std::sort(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += t;
  return 0.5 * sum;
}

double simplex_l1(const SimplicialComplex& complex, const BarycentricPoint& x, const BarycentricPoint& y) {
  if (!common_simplex(complex, x, y))
    throw Error(ErrorCode::NoCommonSimplex, complex.describe(x.support()) + " and " +
                                                complex.describe(y.support()) + " share no simplex");
  return half_l1(x, y);
}

// ----------------------------------------------------------- Automorphism

Automorphism::Automorphism(const SimplicialComplex& complex, std::vector<VertexId> image)
    : image_(std::move(image)) {
  const std::size_t n = complex.vertex_count();
  if (image_.size() != n) throw Error(ErrorCode::NotAnAutomorphism, "mapping must cover every vertex");
  std::vector<bool> hit(n, false);
  for (VertexId v : image_) {
    if (v.index >= n || hit[v.index]) throw Error(ErrorCode::NotAnAutomorphism, "mapping is not a bijection");
    hit[v.index] = true;
  }
  for (const auto& s : complex.maximal_simplices()) {
    if (!complex.is_simplex(apply(s)))
      throw Error(ErrorCode::NotAnAutomorphism,
                  "image of " + complex.describe(s) + " is not a simplex");
  }
}

Automorphism Automorphism::identity(const SimplicialComplex& complex) {
  std::vector<VertexId> id(complex.vertex_count());
  for (std::uint32_t i = 0; i < id.size(); ++i) id[i] = VertexId{i};
  return Automorphism(complex, std::move(id));
}

Simplex Automorphism::apply(const Simplex& s) const {
  std::vector<VertexId> vs;
  for (VertexId v : s) vs.push_back((*this)(v));
  return Simplex(std::move(vs));
}

BarycentricPoint Automorphism::apply(const BarycentricPoint& x) const {
  std::vector<BarycentricPoint::Entry> e;
  for (const auto& [v, w] : x.entries()) e.emplace_back((*this)(v), w);
  std::sort(e.begin(), e.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return BarycentricPoint(std::move(e));
}

bool Automorphism::is_identity() const {
  for (std::uint32_t i = 0; i < image_.size(); ++i)
    if (image_[i].index != i) return false;
  return true;
}

Automorphism make_automorphism(const SimplicialComplex& complex, const std::map<std::string, std::string>& mapping) {
  std::vector<VertexId> image(complex.vertex_count());
  for (std::uint32_t i = 0; i < image.size(); ++i) image[i] = VertexId{i};
  for (const auto& [from, to] : mapping) {
    auto a = complex.find(from);
    auto b = complex.find(to);
    if (!a || !b) throw Error(ErrorCode::NotAnAutomorphism, "mapping mentions an unknown vertex");
    image[a->index] = *b;
  }
  return Automorphism(complex, std::move(image));
}

std::vector<Automorphism> find_automorphisms(const SimplicialComplex& complex, std::size_t limit) {
  const std::size_t n = complex.vertex_count();
  std::vector<Automorphism> found;
  std::vector<VertexId> image(n);
  std::vector<bool> used(n, false);

  // Adjacency must be preserved vertex by vertex; the full simplex check is
  // left to the Automorphism constructor.
  std::function<void(std::uint32_t)> extend = [&](std::uint32_t i) {
    if (found.size() >= limit) return;
    if (i == n) {
      try {
        Automorphism g(complex, image);
        if (!g.is_identity()) found.push_back(std::move(g));
      } catch (const Error&) {
      }
      return;
    }
    const VertexId vi{i};
    for (std::uint32_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      const VertexId cand{c};
      if (complex.neighbors(vi).size() != complex.neighbors(cand).size()) continue;
      bool ok = true;
      for (std::uint32_t j = 0; j < i && ok; ++j)
        ok = complex.adjacent(vi, VertexId{j}) == complex.adjacent(cand, image[j]);
      if (!ok) continue;
      used[c] = true;
      image[i] = cand;
      extend(i + 1);
      used[c] = false;
    }
  };
  extend(0);
  return found;
}

}  // namespace metext
