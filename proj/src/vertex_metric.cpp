#include "metext/vertex_metric.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

namespace metext {

int WordMetricTable::eccentricity(VertexId u) const {
  int e = 0;
  for (std::size_t v = 0; v < n_; ++v) e = std::max(e, d_[u.index * n_ + v]);
  return e;
}

int WordMetricTable::diameter() const {
  int e = 0;
  for (int d : d_) e = std::max(e, d);
  return e;
}

WordMetricTable word_metric(const SimplicialComplex& complex) {
  const std::size_t n = complex.vertex_count();
  std::vector<int> d(n * n, -1);
  std::deque<VertexId> queue;
  for (std::uint32_t s = 0; s < n; ++s) {
    int* row = d.data() + s * n;
    row[s] = 0;
    queue.assign(1, VertexId{s});
    while (!queue.empty()) {
      const VertexId u = queue.front();
      queue.pop_front();
      for (VertexId v : complex.neighbors(u)) {
        if (row[v.index] >= 0) continue;
        row[v.index] = row[u.index] + 1;
        queue.push_back(v);
      }
    }
    for (std::size_t t = 0; t < n; ++t) {
      if (row[t] < 0)
        throw Error(ErrorCode::DisconnectedComplex, "no edge path from '" + complex.label(VertexId{s}) + "' to '" +
                                                        complex.label(VertexId{static_cast<std::uint32_t>(t)}) + "'");
    }
  }
  return WordMetricTable(n, std::move(d));
}

std::vector<VertexId> sphere(const WordMetricTable& word, VertexId u, int k) {
  std::vector<VertexId> out;
  if (k < 0) return out;
  for (std::uint32_t z = 0; z < word.size(); ++z)
    if (word(u, VertexId{z}) == k) out.push_back(VertexId{z});
  return out;
}

VertexMetric VertexMetric::from_word(const WordMetricTable& word, std::optional<QiConstants> qi) {
  const std::size_t n = word.size();
  std::vector<double> d(n * n);
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = 0; v < n; ++v) d[u * n + v] = word(VertexId{u}, VertexId{v});
  VertexMetric m(n, std::move(d));
  m.qi_ = qi;
  return m;
}

VertexMetric VertexMetric::with_constant(std::optional<double> c) const {
  VertexMetric m = *this;
  m.supplied_c_ = c;
  return m;
}

VertexMetric VertexMetric::with_qi(std::optional<QiConstants> qi) const {
  VertexMetric m = *this;
  m.qi_ = qi;
  return m;
}

std::vector<std::vector<double>> VertexMetric::matrix() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
  for (std::size_t u = 0; u < n_; ++u)
    for (std::size_t v = 0; v < n_; ++v) out[u][v] = d_[u * n_ + v];
  return out;
}

std::string MetricViolation::describe(const SimplicialComplex& complex) const {
  std::ostringstream os;
  os << to_string(kind) << " (" << complex.label(u) << ", " << complex.label(v);
  if (kind == ErrorCode::TriangleViolation) os << ", " << complex.label(w);
  os << ") by " << amount;
  return os.str();
}

MetricValidation validate_vertex_metric(const SimplicialComplex& complex, const std::vector<std::vector<double>>& matrix,
                                        std::optional<double> supplied_constant, std::optional<QiConstants> qi,
                                        double tolerance) {
  const std::size_t n = complex.vertex_count();
  if (matrix.size() != n)
    throw Error(ErrorCode::InvalidMetricShape, "matrix has " + std::to_string(matrix.size()) + " rows, expected " +
                                                   std::to_string(n));
  for (const auto& row : matrix) {
    if (row.size() != n) throw Error(ErrorCode::InvalidMetricShape, "matrix is not square");
  }

  MetricValidation result;
  auto& bad = result.violations;
  auto id = [](std::size_t i) { return VertexId{static_cast<std::uint32_t>(i)}; };
  for (std::size_t u = 0; u < n; ++u) {
    if (std::abs(matrix[u][u]) > tolerance)
      bad.push_back({ErrorCode::NonzeroDiagonal, id(u), id(u), id(u), matrix[u][u]});
    for (std::size_t v = 0; v < n; ++v) {
      // off-diagonal entries must be strictly positive
      if (u != v && !(std::isfinite(matrix[u][v]) && matrix[u][v] > tolerance))
        bad.push_back({ErrorCode::NegativeDistance, id(u), id(v), id(v), matrix[u][v]});
      if (u < v && std::abs(matrix[u][v] - matrix[v][u]) > tolerance)
        bad.push_back({ErrorCode::NotSymmetric, id(u), id(v), id(v), matrix[u][v] - matrix[v][u]});
    }
  }
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t w = 0; w < n; ++w) {
        const double excess = matrix[u][w] - matrix[u][v] - matrix[v][w];
        if (u < w && excess > tolerance) bad.push_back({ErrorCode::TriangleViolation, id(u), id(w), id(v), excess});
      }

  if (bad.empty()) {
    std::vector<double> flat(n * n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) flat[u * n + v] = u == v ? 0.0 : matrix[u][v];
    VertexMetric m(n, std::move(flat));
    m.supplied_c_ = supplied_constant;
    m.qi_ = qi;
    result.metric = std::move(m);
  }
  return result;
}

double linear_bound_constant(const VertexMetric& metric, const WordMetricTable& word, std::optional<double> supplied) {
  const std::size_t n = metric.size();
  double c = 0.0;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v) c = std::max(c, metric(VertexId{u}, VertexId{v}) / word(VertexId{u}, VertexId{v}));
  if (n < 2) c = 1.0;  // any positive constant works on a single vertex
  if (supplied) {
    if (*supplied < c * (1.0 - 1e-12))
      throw Error(ErrorCode::SuppliedConstantTooSmall,
                  "supplied C = " + std::to_string(*supplied) + " but data requires C >= " + std::to_string(c));
    return *supplied;
  }
  return c;
}

QiCheck qi_constants_check(const VertexMetric& metric, const WordMetricTable& word, double A, double B,
                           double tolerance) {
  if (!(A >= 1.0) || !(B >= 0.0))
    throw Error(ErrorCode::InvalidParameters, "quasi-isometry constants need A >= 1 and B >= 0");
  QiCheck check;
  const std::size_t n = metric.size();
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v) {
      const VertexId U{u}, V{v};
      const double dh = metric(U, V);
      const int dg = word(U, V);
      if (dh > A * dg + B + tolerance) check.witnesses.push_back({U, V, dh, dg, true});
      else if (dh < dg / A - B - tolerance) check.witnesses.push_back({U, V, dh, dg, false});
    }
  check.pass = check.witnesses.empty();
  if (check.pass) check.derived_constant = A + B;
  return check;
}

}  // namespace metext
