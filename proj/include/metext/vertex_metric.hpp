#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "metext/complex.hpp"
#include "metext/error.hpp"

namespace metext {

/// All-pairs breadth-first distances on the 1-skeleton.
class WordMetricTable {
 public:
  WordMetricTable() = default;
  WordMetricTable(std::size_t n, std::vector<int> distances) : n_(n), d_(std::move(distances)) {}

  int operator()(VertexId u, VertexId v) const { return d_[u.index * n_ + v.index]; }
  std::size_t size() const noexcept { return n_; }
  int eccentricity(VertexId u) const;
  int diameter() const;

 private:
  std::size_t n_ = 0;
  std::vector<int> d_;
};

/// Throws DisconnectedComplex.
WordMetricTable word_metric(const SimplicialComplex& complex);

/// Vertices at word distance exactly k from u, in canonical order.
std::vector<VertexId> sphere(const WordMetricTable& word, VertexId u, int k);

struct MetricValidation;

struct QiConstants {
  double A = 1.0;
  double B = 0.0;
};

/// Symmetric distance table on the vertices plus the constants that
/// accompany it. Only validate_vertex_metric and from_word produce one.
class VertexMetric {
 public:
  static VertexMetric from_word(const WordMetricTable& word, std::optional<QiConstants> qi = QiConstants{1.0, 0.0});

  double operator()(VertexId u, VertexId v) const { return d_[u.index * n_ + v.index]; }
  std::size_t size() const noexcept { return n_; }

  /// Linear-bound constant supplied by the user, if any.
  std::optional<double> supplied_constant() const noexcept { return supplied_c_; }
  std::optional<QiConstants> qi() const noexcept { return qi_; }

  VertexMetric with_constant(std::optional<double> c) const;
  VertexMetric with_qi(std::optional<QiConstants> qi) const;

  std::vector<std::vector<double>> matrix() const;

 private:
  friend MetricValidation validate_vertex_metric(const SimplicialComplex&, const std::vector<std::vector<double>>&,
                                                 std::optional<double>, std::optional<QiConstants>, double);
  VertexMetric(std::size_t n, std::vector<double> d) : n_(n), d_(std::move(d)) {}

  std::size_t n_ = 0;
  std::vector<double> d_;
  std::optional<double> supplied_c_;
  std::optional<QiConstants> qi_;
};

struct MetricViolation {
  ErrorCode kind;
  VertexId u;
  VertexId v;
  VertexId w;  // only meaningful for TriangleViolation
  double amount;

  std::string describe(const SimplicialComplex& complex) const;
};

struct MetricValidation {
  std::optional<VertexMetric> metric;
  std::vector<MetricViolation> violations;

  bool ok() const noexcept { return metric.has_value(); }
};

/// Exhaustive O(n^3) check of the metric axioms on a matrix indexed by the
/// complex's canonical vertex order. Throws InvalidMetricShape when the
/// matrix is not n x n; every axiom failure is reported as a violation.
MetricValidation validate_vertex_metric(const SimplicialComplex& complex, const std::vector<std::vector<double>>& matrix,
                                        std::optional<double> supplied_constant = std::nullopt,
                                        std::optional<QiConstants> qi = std::nullopt, double tolerance = kTolerance);

/// Least C with d(u,v) <= C * d_G(u,v). If `supplied` is given it must not
/// be smaller (SuppliedConstantTooSmall); it is returned in that case.
double linear_bound_constant(const VertexMetric& metric, const WordMetricTable& word,
                             std::optional<double> supplied = std::nullopt);

struct QiWitness {
  VertexId u;
  VertexId v;
  double metric_value;
  int word_value;
  bool upper_side;  // true: metric exceeds A*d_G + B
};

struct QiCheck {
  bool pass = false;
  double derived_constant = 0.0;  // A + B on pass
  std::vector<QiWitness> witnesses;
};

QiCheck qi_constants_check(const VertexMetric& metric, const WordMetricTable& word, double A, double B,
                           double tolerance = kTolerance);

/// <a|b>_c = (d(a,c) + d(b,c) - d(a,b)) / 2 for any distance callable.
template <class Distance, class P>
double gromov_product(const Distance& d, const P& a, const P& b, const P& c) {
  return 0.5 * (d(a, c) + d(b, c) - d(a, b));
}

/// <x,x'|y,y'> = d(x,y) - d(x',y) - d(x,y') + d(x',y').
template <class Distance, class P>
double double_difference(const Distance& d, const P& x, const P& xp, const P& y, const P& yp) {
  return d(x, y) - d(xp, y) - d(x, yp) + d(xp, yp);
}

inline double gromov_product_vertices(const VertexMetric& d, VertexId a, VertexId b, VertexId c) {
  return gromov_product(d, a, b, c);
}
inline double gromov_product_vertices(const WordMetricTable& d, VertexId a, VertexId b, VertexId c) {
  return gromov_product([&](VertexId p, VertexId q) { return static_cast<double>(d(p, q)); }, a, b, c);
}
inline double double_difference_vertices(const VertexMetric& d, VertexId x, VertexId xp, VertexId y, VertexId yp) {
  return double_difference(d, x, xp, y, yp);
}
inline double double_difference_vertices(const WordMetricTable& d, VertexId x, VertexId xp, VertexId y,
                                         VertexId yp) {
  return double_difference([&](VertexId p, VertexId q) { return static_cast<double>(d(p, q)); }, x, xp, y, yp);
}

/// Least delta with <x|y>_w >= min(<x|z>_w, <z|y>_w) - delta over all
/// quadruples. O(n^4); meant for small vertex sets.
template <class Distance>
double hyperbolicity_delta(std::size_t n, const Distance& d) {
  double delta = 0.0;
  for (std::uint32_t w = 0; w < n; ++w) {
    const VertexId W{w};
    for (std::uint32_t x = 0; x < n; ++x) {
      const VertexId X{x};
      for (std::uint32_t y = 0; y < n; ++y) {
        const VertexId Y{y};
        const double xy = gromov_product(d, X, Y, W);
        for (std::uint32_t z = 0; z < n; ++z) {
          const VertexId Z{z};
          const double bound = std::min(gromov_product(d, X, Z, W), gromov_product(d, Z, Y, W));
          delta = std::max(delta, bound - xy);
        }
      }
    }
  }
  return delta;
}

inline double hyperbolicity_delta(const WordMetricTable& word) {
  return hyperbolicity_delta(word.size(), [&](VertexId p, VertexId q) { return static_cast<double>(word(p, q)); });
}
inline double hyperbolicity_delta(const VertexMetric& metric) { return hyperbolicity_delta(metric.size(), metric); }

}  // namespace metext
