#include "metext/probes.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "metext/error.hpp"
#include "metext/random.hpp"

namespace metext {

namespace {

const RaySpec* as_ray(const Slot& s) { return std::get_if<RaySpec>(&s); }

bool same_ray(const Slot& a, const Slot& b) {
  const RaySpec* ra = as_ray(a);
  const RaySpec* rb = as_ray(b);
  return ra && rb && ra->name == rb->name;
}

void check_pattern(const Configuration& config, int depth_max) {
  std::map<std::string, int> uses;
  for (const auto& s : config) {
    if (const RaySpec* r = as_ray(s)) {
      if (++uses[r->name] > 2)
        throw Error(ErrorCode::InvalidConfiguration, "ray '" + r->name + "' fills more than two slots");
      if (r->depth() < depth_max)
        throw Error(ErrorCode::InvalidParameters, "ray '" + r->name + "' has depth " + std::to_string(r->depth()) +
                                                      " < " + std::to_string(depth_max));
    }
  }
}

BarycentricPoint at_depth(const Slot& s, int k) {
  if (const RaySpec* r = as_ray(s)) return BarycentricPoint::vertex(r->vertices[k]);
  return std::get<BarycentricPoint>(s);
}

double dd_at(const ExtendedMetric& m, const Configuration& c, int k) {
  return double_difference_ext(m, at_depth(c[0], k), at_depth(c[1], k), at_depth(c[2], k), at_depth(c[3], k));
}

std::string point_text(const SimplicialComplex& complex, const BarycentricPoint& p) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [v, w] : p.entries()) {
    if (!first) os << ", ";
    first = false;
    os << complex.label(v) << ':' << w;
  }
  os << '}';
  return os.str();
}

}  // namespace

RaySpec make_ray(const PathMetric& path, VertexId base, VertexId target, std::string name) {
  return RaySpec{std::move(name), path.geodesic(base, target)};
}

std::string describe(const SimplicialComplex& complex, const Configuration& config) {
  static const char* names[] = {"x", "x'", "y", "y'"};
  std::ostringstream os;
  for (std::size_t i = 0; i < 4; ++i) {
    if (i) os << ' ';
    os << names[i] << '=';
    if (const RaySpec* r = as_ray(config[i])) os << "ray:" << r->name;
    else os << point_text(complex, std::get<BarycentricPoint>(config[i]));
  }
  return os.str();
}

std::string format_table(const ProbeReport& report) {
  std::ostringstream os;
  os << "configuration: " << report.configuration << '\n';
  os << std::setw(10) << "depth" << std::setw(18) << "value" << '\n';
  os << std::setprecision(10);
  for (const auto& [d, v] : report.table) os << std::setw(10) << d << std::setw(18) << v << '\n';
  for (const auto& [k, v] : report.parameters) os << k << " = " << v << '\n';
  os << "verdict: " << report.verdict << '\n';
  if (report.witness) os << "witness: " << *report.witness << '\n';
  return os.str();
}

ProbeReport dd_convergence_probe(const ExtendedMetric& m, const Configuration& config,
                                 const ConvergenceOptions& options) {
  if (options.depth_min < 0 || options.depth_max < options.depth_min)
    throw Error(ErrorCode::InvalidParameters, "need 0 <= depth_min <= depth_max");
  check_pattern(config, options.depth_max);
  ProbeReport r;
  r.configuration = describe(m.complex(), config);
  for (int k = options.depth_min; k <= options.depth_max; ++k) r.table.emplace_back(k, dd_at(m, config, k));
  double last_step = 0.0;
  if (r.table.size() >= 2) last_step = std::abs(r.table.back().second - r.table[r.table.size() - 2].second);
  r.parameters["last_step"] = last_step;
  r.parameters["threshold"] = options.threshold;
  r.verdict = last_step < options.threshold ? "converging" : "inconclusive";
  return r;
}

ProbeReport dd_divergence_probe(const ExtendedMetric& m, const Configuration& config,
                                const DivergenceOptions& options) {
  if (options.depth_min < 0 || options.depth_max <= options.depth_min)
    throw Error(ErrorCode::InvalidParameters, "need 0 <= depth_min < depth_max");
  check_pattern(config, options.depth_max);
  const bool any_ray = std::any_of(config.begin(), config.end(), [](const Slot& s) { return as_ray(s) != nullptr; });
  const bool crossed = same_ray(config[0], config[3]) || same_ray(config[1], config[2]);
  const bool straight = same_ray(config[0], config[2]) || same_ray(config[1], config[3]);
  if (any_ray && !crossed && !straight)
    throw Error(ErrorCode::InvalidConfiguration, "no crossed or straight pair shares a ray");

  ProbeReport r;
  r.configuration = describe(m.complex(), config);
  for (int k = options.depth_min; k <= options.depth_max; ++k) r.table.emplace_back(k, dd_at(m, config, k));
  const double slope = (r.table.back().second - r.table.front().second) / (options.depth_max - options.depth_min);
  r.parameters["slope"] = slope;
  if (slope >= options.slope_threshold) r.verdict = "+inf-divergent";
  else if (slope <= -options.slope_threshold) r.verdict = "-inf-divergent";
  else r.verdict = "bounded";

  // crossed and straight together (x = y = y' style) have no predicted sign
  if (crossed != straight) {
    const double expected = crossed ? 1.0 : -1.0;
    r.parameters["expected_sign"] = expected;
    const bool match = r.verdict == (crossed ? "+inf-divergent" : "-inf-divergent");
    r.parameters["sign_matches"] = match ? 1.0 : 0.0;
    if (!match) r.witness = "expected " + std::string(crossed ? "+inf" : "-inf") + " growth, got " + r.verdict;
  }
  return r;
}

ProbeReport decay_probe(const ExtendedMetric& m, const DecayOptions& options) {
  const auto qi = m.vertex_metric().qi();
  if (!qi) throw Error(ErrorCode::MissingQIConstants, "decay probe needs quasi-isometry constants (A, B)");
  if (options.lambda_grid.empty()) throw Error(ErrorCode::InvalidParameters, "empty lambda grid");
  const double T = 6.0 * (qi->A + qi->B);
  const SimplicialComplex& k = m.complex();
  const auto& word = m.path().word();
  const std::uint32_t n = static_cast<std::uint32_t>(k.vertex_count());
  Rng rng(options.seed);

  ProbeReport r;
  r.configuration = "sampled (u, a, b, c), T = " + std::to_string(T);
  std::vector<std::array<VertexId, 4>> kept;
  std::size_t excluded = 0;
  const auto V = [](VertexId v) { return BarycentricPoint::vertex(v); };

  for (std::size_t s = 0; s < options.samples; ++s) {
    const VertexId u{static_cast<std::uint32_t>(rng.below(n))};
    std::vector<VertexId> far, near;
    for (std::uint32_t z = 0; z < n; ++z) {
      const int d = word(u, VertexId{z});
      if (d >= 2 && d <= options.depth_max) far.push_back(VertexId{z});
      if (d <= 2) near.push_back(VertexId{z});
    }
    if (far.empty()) {
      ++excluded;
      continue;
    }
    const VertexId a = rng.pick(far);
    const auto geo = m.path().geodesic(u, a);
    const VertexId p = geo[1 + rng.below(geo.size() - 1)];
    // b beyond p: p lies on a geodesic from u to b
    std::vector<VertexId> beyond;
    for (std::uint32_t z = 0; z < n; ++z) {
      const VertexId Z{z};
      if (word(u, Z) <= options.depth_max && word(u, p) + word(p, Z) == word(u, Z)) beyond.push_back(Z);
    }
    const VertexId b = rng.pick(beyond);
    const VertexId c = rng.pick(near);

    const double m1 = double_difference_ext(m, V(u), V(a), V(b), V(c));
    const double m2 = double_difference_ext(m, V(u), V(b), V(a), V(c));
    const double mm = std::max(m1, m2);
    if (mm < T) {
      ++excluded;
      continue;
    }
    kept.push_back({u, a, b, c});
    r.table.emplace_back(mm, std::abs(double_difference_ext(m, V(u), V(c), V(a), V(b))));
  }
  std::stable_sort(r.table.begin(), r.table.end(), [](auto& x, auto& y) { return x.first < y.first; });

  r.parameters["T"] = T;
  r.parameters["samples_used"] = static_cast<double>(r.table.size());
  r.parameters["samples_excluded"] = static_cast<double>(excluded);
  std::vector<double> grid = options.lambda_grid;
  std::sort(grid.begin(), grid.end());
  std::optional<double> fitted;
  for (double lambda : grid) {
    const bool ok = std::all_of(r.table.begin(), r.table.end(),
                                [&](auto& row) { return row.second <= std::pow(lambda, row.first) + 1e-12; });
    if (ok) {
      fitted = lambda;
      break;
    }
  }
  if (fitted) {
    r.parameters["lambda"] = *fitted;
    r.verdict = "decay-consistent";
  } else {
    r.verdict = "violated";
    const double lambda = grid.back();
    std::size_t worst = 0;
    double worst_ratio = -1.0;
    for (std::size_t i = 0; i < r.table.size(); ++i) {
      const double ratio = r.table[i].second / std::pow(lambda, r.table[i].first);
      if (ratio > worst_ratio) worst_ratio = ratio, worst = i;
    }
    std::ostringstream os;
    os << "m = " << r.table[worst].first << ", |dd| = " << r.table[worst].second << " > " << lambda << "^m";
    r.witness = os.str();
  }
  return r;
}

std::vector<Quadruple> sample_quadruples(const SimplicialComplex& complex, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Quadruple> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const bool vertices = rng.chance(0.5);
    auto draw = [&] {
      return vertices ? BarycentricPoint::vertex(random_vertex(complex, rng)) : random_point(complex, rng);
    };
    BarycentricPoint a = draw(), b = draw(), c = draw(), d = draw();
    out.push_back({std::move(a), std::move(b), std::move(c), std::move(d)});
  }
  return out;
}

WindowsReport equivalence_windows_check(const ExtendedMetric& m, const std::vector<Quadruple>& samples,
                                        double tolerance) {
  WindowsReport r;
  const auto bp = m.b_prime();
  if (!bp) return r;
  r.ran = true;
  r.b_prime = *bp;
  r.samples = samples.size();
  const double window = 4.0 * *bp;
  std::vector<std::pair<double, double>> vertex_pairs;  // (DD_G, DDext)
  const auto& word = m.path().word();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [x, xp, y, yp] = samples[i];
    const double ext = double_difference_ext(m, x, xp, y, yp);
    const double hat = double_difference_bilinear(m, x, xp, y, yp);
    const double excess = std::abs(ext - hat) - window;
    if (excess > r.max_excess) {
      r.max_excess = excess;
      r.worst = i;
    }
    if (x.is_vertex() && xp.is_vertex() && y.is_vertex() && yp.is_vertex())
      vertex_pairs.emplace_back(double_difference_vertices(word, *x.as_vertex(), *xp.as_vertex(), *y.as_vertex(),
                                                           *yp.as_vertex()),
                                ext);
  }
  r.pass = r.max_excess <= tolerance;
  r.vertex_samples = vertex_pairs.size();

  bool first = true;
  for (double alpha : {1.0, 1.25, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0}) {
    double beta = 0.0;
    for (const auto& [g, e] : vertex_pairs) beta = std::max({beta, g / alpha - e, e - alpha * g});
    if (first || beta < r.beta - 1e-12) {
      r.alpha = alpha;
      r.beta = beta;
      first = false;
    }
  }
  return r;
}

}  // namespace metext
