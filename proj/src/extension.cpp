#include "metext/extension.hpp"

#include <algorithm>
#include <cmath>

#include "metext/error.hpp"
#include "metext/random.hpp"

namespace metext {

double bilinear_extension(const VertexMetric& metric, const BarycentricPoint& x, const BarycentricPoint& y) {
  std::vector<double> terms;
  terms.reserve(x.entries().size() * y.entries().size());
  for (const auto& [u, xu] : x.entries())
    for (const auto& [v, yv] : y.entries()) terms.push_back(xu * yv * metric(u, v));
  // value order: exact symmetry and invariance under relabelling
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

std::string to_string(Branch b) { return b == Branch::Bilinear ? "bilinear" : "scaled_path"; }

ExtendedMetric::ExtendedMetric(std::shared_ptr<const SimplicialComplex> complex, VertexMetric metric,
                               PathOptions options)
    : path_(std::move(complex)), metric_(std::move(metric)), options_(options) {
  if (metric_.size() != path_.complex().vertex_count())
    throw Error(ErrorCode::InvalidMetricShape, "vertex metric size does not match the complex");
  c_ = linear_bound_constant(metric_, path_.word(), metric_.supplied_constant());
  if (auto qi = metric_.qi()) {
    const auto check = qi_constants_check(metric_, path_.word(), qi->A, qi->B);
    if (!check.pass) {
      const auto& w = check.witnesses.front();
      throw Error(ErrorCode::InvalidParameters,
                  "metric is not (" + std::to_string(qi->A) + ", " + std::to_string(qi->B) +
                      ")-quasi-isometric to the word metric at (" + path_.complex().label(w.u) + ", " +
                      path_.complex().label(w.v) + ")");
    }
  }
}

std::optional<double> ExtendedMetric::b_prime() const {
  if (auto qi = metric_.qi()) return 2.0 * (qi->A + qi->B);
  return std::nullopt;
}

ExtendedValue ExtendedMetric::distance(const BarycentricPoint& x0, const BarycentricPoint& y0) const {
  const bool swapped = y0 < x0;
  const BarycentricPoint& x = swapped ? y0 : x0;
  const BarycentricPoint& y = swapped ? x0 : y0;

  if (x == y) return {0.0, Branch::Bilinear};
  if (x.is_vertex() && y.is_vertex()) return {metric_(*x.as_vertex(), *y.as_vertex()), Branch::Bilinear};

  const double bil = bilinear_extension(metric_, x, y);
  // The path branch cannot win once the bounds already lift it above D̂.
  if (bil <= scale() * path_.best_lower_bound(x, y)) return {bil, Branch::Bilinear};
  const double scaled = scale() * path_.distance(x, y, options_).value;
  if (scaled < bil) return {scaled, Branch::ScaledPath};
  return {bil, Branch::Bilinear};
}

SandwichResult sandwich_check(const ExtendedMetric& m, const BarycentricPoint& x, const BarycentricPoint& y,
                              double tolerance) {
  SandwichResult r;
  const auto bp = m.b_prime();
  if (!bp) return r;
  r.ran = true;
  r.b_prime = *bp;
  r.bilinear = m.bilinear(x, y);
  r.extended = m(x, y);
  r.excess = std::max({0.0, r.extended - r.bilinear, r.bilinear - r.b_prime - r.extended});
  r.pass = r.excess <= tolerance;
  return r;
}

double double_difference_ext(const ExtendedMetric& m, const BarycentricPoint& x, const BarycentricPoint& xp,
                             const BarycentricPoint& y, const BarycentricPoint& yp) {
  return double_difference(m, x, xp, y, yp);
}

double double_difference_bilinear(const ExtendedMetric& m, const BarycentricPoint& x, const BarycentricPoint& xp,
                                  const BarycentricPoint& y, const BarycentricPoint& yp) {
  return double_difference([&](const BarycentricPoint& p, const BarycentricPoint& q) { return m.bilinear(p, q); },
                           x, xp, y, yp);
}

double gromov_product_ext(const ExtendedMetric& m, const BarycentricPoint& a, const BarycentricPoint& b,
                          const BarycentricPoint& c) {
  return gromov_product(m, a, b, c);
}

DefectReport geodesic_defect(const ExtendedMetric& m, const std::vector<VertexTriple>& samples) {
  DefectReport r;
  const auto& word = m.path().word();
  for (const auto& t : samples) {
    if (word(t.u, t.w) + word(t.w, t.v) != word(t.u, t.v)) continue;
    ++r.triples;
    const auto P = [](VertexId v) { return BarycentricPoint::vertex(v); };
    const double d = std::abs(m(P(t.u), P(t.v)) - m(P(t.u), P(t.w)) - m(P(t.w), P(t.v)));
    if (!r.worst || d > r.defect) {
      r.defect = d;
      r.worst = t;
    }
  }
  return r;
}

std::vector<VertexTriple> geodesic_triples(const WordMetricTable& word, std::size_t limit, std::uint64_t seed) {
  const auto n = static_cast<std::uint32_t>(word.size());
  std::vector<VertexTriple> all;
  Rng rng(seed);
  if (static_cast<double>(n) * n * n <= 4e6) {
    for (std::uint32_t u = 0; u < n; ++u)
      for (std::uint32_t v = u + 1; v < n; ++v)
        for (std::uint32_t w = 0; w < n; ++w) {
          const VertexId U{u}, V{v}, W{w};
          if (w != u && w != v && word(U, W) + word(W, V) == word(U, V)) all.push_back({U, W, V});
        }
    if (all.size() <= limit) return all;
    // partial Fisher-Yates keeps the first `limit` entries uniformly chosen
    for (std::size_t i = 0; i < limit; ++i) std::swap(all[i], all[i + rng.below(all.size() - i)]);
    all.resize(limit);
    return all;
  }
  for (std::size_t tries = 0; all.size() < limit && tries < 50 * limit; ++tries) {
    const VertexId U{static_cast<std::uint32_t>(rng.below(n))}, V{static_cast<std::uint32_t>(rng.below(n))};
    if (word(U, V) < 2) continue;
    std::vector<VertexId> middle;
    for (std::uint32_t w = 0; w < n; ++w) {
      const VertexId W{w};
      if (W != U && W != V && word(U, W) + word(W, V) == word(U, V)) middle.push_back(W);
    }
    all.push_back({U, rng.pick(middle), V});
  }
  return all;
}

}  // namespace metext
