#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "metext/complex.hpp"
#include "metext/path_metric.hpp"
#include "metext/vertex_metric.hpp"

namespace metext {

/// Σ_{u,v} x_u y_v d(u,v). Not a metric: D̂(x,x) > 0 off the vertices.
double bilinear_extension(const VertexMetric& metric, const BarycentricPoint& x, const BarycentricPoint& y);

enum class Branch { Bilinear, ScaledPath };
std::string to_string(Branch b);

struct ExtendedValue {
  double value = 0.0;
  Branch branch = Branch::Bilinear;
};

/// d̃(x,y) = min(D̂(x,y), 3C d_X(x,y)).
class ExtendedMetric {
 public:
  /// Uses the metric's supplied C if present (SuppliedConstantTooSmall when
  /// it is too small), the least admissible C otherwise. When the metric
  /// carries QI constants they are checked; a failing check throws
  /// InvalidParameters.
  ExtendedMetric(std::shared_ptr<const SimplicialComplex> complex, VertexMetric metric, PathOptions options = {});

  const SimplicialComplex& complex() const noexcept { return path_.complex(); }
  std::shared_ptr<const SimplicialComplex> complex_ptr() const noexcept { return path_.complex_ptr(); }
  const VertexMetric& vertex_metric() const noexcept { return metric_; }
  const PathMetric& path() const noexcept { return path_; }
  const PathOptions& options() const noexcept { return options_; }

  double constant() const noexcept { return c_; }
  double scale() const noexcept { return 3.0 * c_; }
  /// 2(A+B) when QI constants are known.
  std::optional<double> b_prime() const;

  ExtendedValue distance(const BarycentricPoint& x, const BarycentricPoint& y) const;
  double operator()(const BarycentricPoint& x, const BarycentricPoint& y) const { return distance(x, y).value; }
  double bilinear(const BarycentricPoint& x, const BarycentricPoint& y) const {
    return bilinear_extension(metric_, x, y);
  }

 private:
  PathMetric path_;
  VertexMetric metric_;
  PathOptions options_;
  double c_ = 1.0;
};

struct SandwichResult {
  bool ran = false;  // false when (A,B) are unknown
  bool pass = true;
  double bilinear = 0.0;
  double extended = 0.0;
  double b_prime = 0.0;
  /// Largest violation of D̂ - B' <= d̃ <= D̂ (0 on pass).
  double excess = 0.0;
};

SandwichResult sandwich_check(const ExtendedMetric& m, const BarycentricPoint& x, const BarycentricPoint& y,
                              double tolerance = kTolerance);

/// d̃(x,y) - d̃(x',y) - d̃(x,y') + d̃(x',y').
double double_difference_ext(const ExtendedMetric& m, const BarycentricPoint& x, const BarycentricPoint& xp,
                             const BarycentricPoint& y, const BarycentricPoint& yp);
/// Same with all four terms D̂.
double double_difference_bilinear(const ExtendedMetric& m, const BarycentricPoint& x, const BarycentricPoint& xp,
                                  const BarycentricPoint& y, const BarycentricPoint& yp);
/// ½(d̃(a,c) + d̃(b,c) - d̃(a,b)).
double gromov_product_ext(const ExtendedMetric& m, const BarycentricPoint& a, const BarycentricPoint& b,
                          const BarycentricPoint& c);

struct VertexTriple {
  VertexId u, w, v;
};

struct DefectReport {
  double defect = 0.0;
  std::size_t triples = 0;  // geodesic triples actually evaluated
  std::optional<VertexTriple> worst;
};

/// max |d̃(u,v) - d̃(u,w) - d̃(w,v)| over the given triples whose middle
/// vertex lies on a word geodesic; other triples are skipped.
DefectReport geodesic_defect(const ExtendedMetric& m, const std::vector<VertexTriple>& samples);

/// All geodesic triples when there are at most `limit`, else `limit` drawn
/// with the given seed.
std::vector<VertexTriple> geodesic_triples(const WordMetricTable& word, std::size_t limit, std::uint64_t seed);

}  // namespace metext
