#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace metext {

/// Index of a vertex inside one SimplicialComplex. Indices follow the
/// lexicographic order of the vertex labels.
struct VertexId {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(VertexId, VertexId) = default;
};

/// Weights below this are treated as exact zeros.
inline constexpr double kWeightFloor = 1e-12;
/// Default comparison tolerance.
inline constexpr double kTolerance = 1e-9;

/// A nonempty, sorted, duplicate-free vertex set.
///
/// Simplices are ordered canonically: lower dimension first, then
/// lexicographically by vertex index.
class Simplex {
 public:
  Simplex() = default;
  /// Sorts and deduplicates; throws EmptySimplex on an empty list.
  explicit Simplex(std::vector<VertexId> vertices);

  const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  int dimension() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
  bool empty() const noexcept { return vertices_.empty(); }

  bool contains(VertexId v) const;
  bool contains(const Simplex& face) const;
  bool intersects(const Simplex& other) const;

  Simplex united(const Simplex& other) const;
  /// Empty simplex (default constructed) when the intersection is empty.
  Simplex intersected(const Simplex& other) const;

  auto begin() const noexcept { return vertices_.begin(); }
  auto end() const noexcept { return vertices_.end(); }

  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend std::strong_ordering operator<=>(const Simplex& a, const Simplex& b);

 private:
  struct Sorted {};
  Simplex(Sorted, std::vector<VertexId> vertices) : vertices_(std::move(vertices)) {}

  std::vector<VertexId> vertices_;
};

/// Finite abstract simplicial complex. Immutable after build().
class SimplicialComplex {
 public:
  /// Validates labels and simplices, drops non-maximal input simplices and
  /// adds a 0-simplex for every vertex not covered by any listed simplex.
  ///
  /// Errors: DuplicateVertex, UnknownVertexInSimplex, EmptySimplex.
  static SimplicialComplex build(std::vector<std::string> vertex_labels,
                                 const std::vector<std::vector<std::string>>& maximal_simplices);

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  const std::string& label(VertexId v) const { return labels_.at(v.index); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<VertexId> find(std::string_view label) const;
  /// Throws UnknownVertex.
  VertexId require(std::string_view label) const;

  const std::vector<Simplex>& maximal_simplices() const noexcept { return maximal_; }
  /// Every face of every maximal simplex, in canonical order.
  const std::vector<Simplex>& faces() const noexcept { return faces_; }
  bool is_simplex(const Simplex& s) const;

  /// Sorted neighbours of v in the 1-skeleton.
  const std::vector<VertexId>& neighbors(VertexId v) const { return adjacency_.at(v.index); }
  bool adjacent(VertexId u, VertexId v) const;
  std::size_t edge_count() const noexcept { return edge_count_; }
  int dimension() const noexcept { return dimension_; }

  /// Indices into maximal_simplices() of those containing s.
  std::vector<std::size_t> maximal_containing(const Simplex& s) const;

  std::string describe(const Simplex& s) const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.labels_ == b.labels_ && a.maximal_ == b.maximal_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Simplex> maximal_;
  std::vector<Simplex> faces_;
  std::vector<std::vector<VertexId>> adjacency_;
  std::size_t edge_count_ = 0;
  int dimension_ = 0;
};

/// Point of a complex in barycentric coordinates: sparse vertex -> weight
/// map with weights in (0, 1] summing to one.
class BarycentricPoint {
 public:
  using Entry = std::pair<VertexId, double>;

  static BarycentricPoint vertex(VertexId v) { return BarycentricPoint({{v, 1.0}}); }

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  double weight(VertexId v) const;
  Simplex support() const;
  std::optional<VertexId> as_vertex() const;
  bool is_vertex() const noexcept { return entries_.size() == 1; }

  friend bool operator==(const BarycentricPoint&, const BarycentricPoint&) = default;
  /// Lexicographic over (vertex, weight) entries; used to canonicalise
  /// argument order of symmetric functions.
  friend std::partial_ordering operator<=>(const BarycentricPoint& a, const BarycentricPoint& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  friend BarycentricPoint make_point(const class SimplicialComplex&, std::vector<Entry>);
  friend class Automorphism;
  explicit BarycentricPoint(std::vector<Entry> entries) : entries_(std::move(entries)) {}

  std::vector<Entry> entries_;
};

/// Normalises the weights and checks that the support spans a simplex.
/// Errors: NegativeWeight, WeightsNotNormalizable, SupportNotASimplex.
BarycentricPoint make_point(const SimplicialComplex& complex, std::vector<BarycentricPoint::Entry> weights);
/// Label-keyed overload; also UnknownVertex.
BarycentricPoint make_point(const SimplicialComplex& complex, const std::map<std::string, double>& weights);

inline Simplex support(const BarycentricPoint& x) { return x.support(); }

/// Smallest simplex containing both supports, if any.
std::optional<Simplex> common_simplex(const SimplicialComplex& complex, const BarycentricPoint& x,
                                      const BarycentricPoint& y);

/// Half l1 distance of barycentric coordinates; no carrier check.
double half_l1(const BarycentricPoint& x, const BarycentricPoint& y);

/// Per-simplex l1 metric. Throws NoCommonSimplex.
double simplex_l1(const SimplicialComplex& complex, const BarycentricPoint& x, const BarycentricPoint& y);

/// Simplicial automorphism given by a vertex bijection.
class Automorphism {
 public:
  /// Throws NotAnAutomorphism unless `image` is a bijection sending every
  /// simplex to a simplex.
  Automorphism(const SimplicialComplex& complex, std::vector<VertexId> image);

  static Automorphism identity(const SimplicialComplex& complex);

  VertexId operator()(VertexId v) const { return image_.at(v.index); }
  Simplex apply(const Simplex& s) const;
  BarycentricPoint apply(const BarycentricPoint& x) const;
  bool is_identity() const;
  const std::vector<VertexId>& image() const noexcept { return image_; }

 private:
  std::vector<VertexId> image_;
};

Automorphism make_automorphism(const SimplicialComplex& complex, const std::map<std::string, std::string>& mapping);

inline BarycentricPoint apply_automorphism(const Automorphism& g, const BarycentricPoint& x) { return g.apply(x); }

/// Up to `limit` nontrivial automorphisms, found by backtracking over
/// degree-compatible vertex images. Intended for small complexes.
std::vector<Automorphism> find_automorphisms(const SimplicialComplex& complex, std::size_t limit);

}  // namespace metext
