#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "metext/extension.hpp"

namespace metext {

/// Finite stand-in for a boundary point: vertices[k] is at word distance k
/// from vertices[0] (the base) and consecutive vertices are adjacent.
struct RaySpec {
  std::string name;
  std::vector<VertexId> vertices;

  VertexId base() const { return vertices.front(); }
  int depth() const { return static_cast<int>(vertices.size()) - 1; }
};

/// Geodesic ray from base toward target, smallest labels first at each
/// step.
RaySpec make_ray(const PathMetric& path, VertexId base, VertexId target, std::string name);

/// A probe argument: a fixed point or a ray evaluated at the current depth.
using Slot = std::variant<BarycentricPoint, RaySpec>;
/// Slots for <x, x' | y, y'>.
using Configuration = std::array<Slot, 4>;

struct ProbeReport {
  std::string configuration;
  std::vector<std::pair<double, double>> table;  // (depth or m, value), sorted
  std::map<std::string, double> parameters;
  std::string verdict;
  std::optional<std::string> witness;
};

std::string describe(const SimplicialComplex& complex, const Configuration& config);
std::string format_table(const ProbeReport& report);

struct ConvergenceOptions {
  int depth_min = 1;
  int depth_max = 12;
  double threshold = 1e-3;
};

/// Extended double difference along increasing ray depth. "converging" when
/// the last successive difference is below the threshold, "inconclusive"
/// otherwise. Throws InvalidConfiguration if one ray fills more than two
/// slots, InvalidParameters if a ray is shorter than depth_max.
ProbeReport dd_convergence_probe(const ExtendedMetric& m, const Configuration& config,
                                 const ConvergenceOptions& options = {});

struct DivergenceOptions {
  int depth_min = 1;
  int depth_max = 12;
  double slope_threshold = 0.5;  // half a unit per step
};

/// Growth of the extended double difference when one ray fills a crossed
/// pair (x = y' or x' = y, expected +inf) or a straight pair (x = y or
/// x' = y', expected -inf). Verdict "+inf-divergent", "-inf-divergent" or
/// "bounded" from the mean slope over the depth range.
ProbeReport dd_divergence_probe(const ExtendedMetric& m, const Configuration& config,
                                const DivergenceOptions& options = {});

struct DecayOptions {
  std::size_t samples = 400;
  std::uint64_t seed = 0;
  std::vector<double> lambda_grid{0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95};
  /// Sampled vertices stay within this word distance of u.
  int depth_max = 12;
};

/// Samples vertex quadruples (u, a, b, c) with a and b sharing a long
/// geodesic prefix from u and c near u, keeps those with
/// m = max(<u,a|b,c>, <u,b|a,c>) >= T = 6(A+B), and fits the smallest grid
/// lambda with |<u,c|a,b>| <= lambda^m. Throws MissingQIConstants.
ProbeReport decay_probe(const ExtendedMetric& m, const DecayOptions& options = {});

using Quadruple = std::array<BarycentricPoint, 4>;

/// Random quadruples mixing vertices and interior points; roughly half are
/// all-vertex quadruples.
std::vector<Quadruple> sample_quadruples(const SimplicialComplex& complex, std::size_t count, std::uint64_t seed);

struct WindowsReport {
  bool ran = false;  // false without (A,B)
  bool pass = true;
  double b_prime = 0.0;
  double max_excess = 0.0;  // beyond the ±4B' window
  std::size_t samples = 0;
  std::optional<std::size_t> worst;
  // soft fit on the all-vertex samples
  std::size_t vertex_samples = 0;
  double alpha = 1.0;
  double beta = 0.0;
};

/// Hard check DDext ∈ [DDhat - 4B', DDhat + 4B'] on every sample, plus the
/// smallest beta over an alpha grid with
/// DD_G / alpha - beta <= DDext <= alpha DD_G + beta on vertex samples.
WindowsReport equivalence_windows_check(const ExtendedMetric& m, const std::vector<Quadruple>& samples,
                                        double tolerance = kTolerance);

}  // namespace metext
