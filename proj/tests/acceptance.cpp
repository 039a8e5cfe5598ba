// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "metext/error.hpp"
#include "metext/extension.hpp"
#include "metext/generators.hpp"
#include "metext/oracle.hpp"
#include "metext/probes.hpp"
#include "metext/random.hpp"

using namespace metext;

namespace {

using Complex = std::shared_ptr<const SimplicialComplex>;

Complex share(SimplicialComplex k) { return std::make_shared<const SimplicialComplex>(std::move(k)); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Tally kept across criteria: counts pairs compared against the registered
// lower bounds and any InternalInconsistency raised anywhere.
struct Tripwire {
  std::size_t comparisons = 0;
  std::size_t below = 0;
  std::size_t internal_errors = 0;
  double worst = 0.0;
} tripwire;

// Records d_X against every registered bound.
void observe_bounds(const PathMetric& pm, const BarycentricPoint& x, const BarycentricPoint& y, double value) {
  for (const auto& lb : pm.lower_bounds(x, y)) {
    ++tripwire.comparisons;
    tripwire.worst = std::max(tripwire.worst, lb.value - value);
    if (value < lb.value - 1e-9) ++tripwire.below;
  }
}

double dx(const PathMetric& pm, const BarycentricPoint& x, const BarycentricPoint& y, const PathOptions& o = {}) {
  const double v = pm.distance(x, y, o).value;
  observe_bounds(pm, x, y, v);
  return v;
}

ExtendedMetric word_extension(Complex k) { return ExtendedMetric(k, VertexMetric::from_word(word_metric(*k))); }

// d = 1.5 d_G + 0.5 off the diagonal; (A, B) = (1.5, 0.5)
ExtendedMetric affine_extension(Complex k) {
  const auto w = word_metric(*k);
  const std::size_t n = k->vertex_count();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = 0; v < n; ++v)
      if (u != v) m[u][v] = 1.5 * w(VertexId{u}, VertexId{v}) + 0.5;
  auto metric = validate_vertex_metric(*k, m).metric->with_qi(QiConstants{1.5, 0.5});
  return ExtendedMetric(k, metric);
}

std::vector<Complex> family() {
  const std::vector<std::vector<double>> pts{{0, 0}, {1, 0}, {2, 0}, {0.5, 0.8}, {1.5, 0.8}, {1, 1.6}, {2.5, 0.8}};
  return {share(tree_complex(2, 3)),
          share(tree_complex(3, 2)),
          share(path_complex(10)),
          share(cycle_complex(7)),
          share(cycle_complex(12)),
          share(rips_complex(cycle_graph(10), 2.0, 2)),
          share(rips_complex(cycle_graph(12), 3.0, 3)),
          share(rips_complex(pts, 1.0, 2)),
          share(random_complex(20, 0.2, 1, 2)),
          share(random_complex(30, 0.1, 2, 2)),
          share(random_complex(40, 0.06, 3, 3)),
          share(simplex_complex(4))};
}

BarycentricPoint V(VertexId v) { return BarycentricPoint::vertex(v); }

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// 1. --------------------------------------------------------------------
Outcome naive_failure() {
  Outcome o;
  std::size_t complexes = 0;
  Rng rng(1);
  for (const auto& k : family()) {
    if (k->edge_count() == 0) continue;
    const auto m = word_extension(k);
    std::vector<BarycentricPoint> pts;
    for (std::uint32_t v = 0; v < std::min<std::size_t>(k->vertex_count(), 6); ++v) pts.push_back(V(VertexId{v}));
    pts.push_back(random_interior_point(*k, rng));
    const auto scan = exhaustive_metric_scan([&](auto& a, auto& b) { return m.bilinear(a, b); }, pts);
    const bool found = std::any_of(scan.begin(), scan.end(), [&](const ScanViolation& s) {
      return s.kind == "identity" && s.i == pts.size() - 1 && s.j == s.i;
    });
    if (!found) o.pass = false;
    // midpoint of the first edge
    const auto& s = k->maximal_simplices().front();
    const auto mid = make_point(*k, std::vector<BarycentricPoint::Entry>{{s.vertices()[0], 0.5}, {s.vertices()[1], 0.5}});
    const double self = m.bilinear(mid, mid);
    if (std::abs(self - 0.5) > 1e-12) o.pass = false;
    ++complexes;
  }
  o.detail = std::to_string(complexes) + " complexes, D̂(x,x) > 0 found on each; edge midpoint D̂ = 0.5";
  return o;
}

// 2. --------------------------------------------------------------------
Outcome vertex_agreement() {
  Outcome o;
  std::size_t pairs = 0, full = 0, complexes = 0;
  PathOptions no_shortcuts;
  no_shortcuts.use_shortcuts = false;
  for (const auto& k : family()) {
    if (k->vertex_count() > 40) continue;
    ++complexes;
    const auto word = word_metric(*k);
    PathMetric pm(k);
    const auto n = static_cast<std::uint32_t>(k->vertex_count());
    for (std::uint32_t u = 0; u < n; ++u)
      for (std::uint32_t v = 0; v < n; ++v) {
        const double d = l1_path_distance(k, V(VertexId{u}), V(VertexId{v})).value;
        ++pairs;
        if (d != word(VertexId{u}, VertexId{v})) o.pass = false;
      }
    // the chain search itself, without closed forms
    Rng rng(20 + complexes);
    for (int i = 0; i < 6; ++i) {
      const VertexId u = random_vertex(*k, rng), v = random_vertex(*k, rng);
      const double d = dx(pm, V(u), V(v), no_shortcuts);
      ++full;
      if (std::abs(d - word(u, v)) > 1e-9) o.pass = false;
    }
  }
  if (complexes < 10) o.pass = false;
  o.detail = std::to_string(complexes) + " complexes, " + std::to_string(pairs) + " vertex pairs exact, " +
             std::to_string(full) + " by full chain search";
  return o;
}

// 3. --------------------------------------------------------------------
Outcome restriction_diameter() {
  Outcome o;
  double worst = 0.0;
  std::size_t pairs = 0;
  PathOptions no_shortcuts;
  no_shortcuts.use_shortcuts = false;
  std::uint64_t seed = 30;
  for (const auto& k : family()) {
    PathMetric pm(k);
    Rng rng(seed++);
    for (int i = 0; i < 200; ++i) {
      const auto& s = k->maximal_simplices()[rng.below(k->maximal_simplices().size())];
      const auto x = random_point_in(*k, s, rng), y = random_point_in(*k, s, rng);
      const double d = i < 15 ? dx(pm, x, y, no_shortcuts) : dx(pm, x, y);
      const double err = std::abs(d - simplex_l1(*k, x, y));
      worst = std::max(worst, err);
      if (err > 1e-9 || d > 1.0 + 1e-9) o.pass = false;
      ++pairs;
    }
  }
  o.detail = std::to_string(pairs) + " same-simplex pairs, max |d_X - l1| = " + fmt(worst);
  return o;
}

// 4. --------------------------------------------------------------------
Outcome disjoint_supports() {
  Outcome o;
  std::size_t pairs = 0;
  double min_dx = 1e300;
  std::uint64_t seed = 40;
  for (const auto& k : family()) {
    for (const auto& m : {word_extension(k), affine_extension(k)}) {
      Rng rng(seed++);
      std::size_t here = 0;
      for (int tries = 0; here < 20 && tries < 2000; ++tries) {
        const auto x = random_point(*k, rng), y = random_point(*k, rng);
        if (x.support().intersects(y.support())) continue;
        ++here;
        const double d = dx(m.path(), x, y);
        const double bil = m.bilinear(x, y);
        min_dx = std::min(min_dx, d);
        if (d < 1.0 - 1e-9) o.pass = false;
        if (bil > m.scale() * d + 1e-9) o.pass = false;
        const auto e = m.distance(x, y);
        if (e.value != bil) o.pass = false;
      }
      pairs += here;
    }
  }
  if (pairs < 200) o.pass = false;
  o.detail = std::to_string(pairs) + " disjoint-support pairs, min d_X = " + fmt(min_dx) + ", d̃ = D̂ on all";
  return o;
}

// 5. --------------------------------------------------------------------
Outcome metric_axioms() {
  Outcome o;
  std::size_t triples = 0, complexes = 0;
  double worst = 0.0;
  const std::vector<Complex> ks{share(random_complex(10, 0.35, 5, 2)), share(rips_complex(cycle_graph(9), 2.0, 2)),
                                share(tree_complex(2, 3))};
  std::uint64_t seed = 50;
  for (const auto& k : ks) {
    for (const auto& m : {word_extension(k), affine_extension(k)}) {
      ++complexes;
      Rng rng(seed++);
      for (int i = 0; i < 500; ++i) {
        const auto x = random_point(*k, rng), y = random_point(*k, rng), z = random_point(*k, rng);
        const double xy = m(x, y), yz = m(y, z), xz = m(x, z);
        if (xy != m(y, x)) o.pass = false;
        if (m(x, x) != 0.0) o.pass = false;
        if (!(x == y) && !(xy > 0.0)) o.pass = false;
        worst = std::max(worst, xz - xy - yz);
        if (xz > xy + yz + 1e-9) o.pass = false;
        const double Dxy = m.bilinear(x, y), Dxz = m.bilinear(x, z), Dyz = m.bilinear(y, z);
        if (Dxz > Dxy + Dyz + 1e-9) o.pass = false;
        if (Dxz > Dxy + 2.0 * m.constant() * dx(m.path(), y, z) + 1e-9) o.pass = false;
        ++triples;
      }
    }
  }
  o.detail = std::to_string(triples) + " triples on " + std::to_string(complexes) +
             " metrics; max triangle excess " + fmt(worst) + "; mixed (2C) and D̂ triangle hold";
  return o;
}

// 6. --------------------------------------------------------------------
BarycentricPoint grid_point(const SimplicialComplex& k, const Simplex& s, int n, Rng& rng) {
  std::vector<int> parts(s.size(), 0);
  for (int i = 0; i < n; ++i) ++parts[rng.below(s.size())];
  std::vector<BarycentricPoint::Entry> entries;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (parts[i]) entries.emplace_back(s.vertices()[i], double(parts[i]) / n);
  return make_point(k, entries);
}

Outcome oracle_agreement() {
  Outcome o;
  std::size_t pairs = 0;
  double worst_gap = 0.0;
  const std::vector<Complex> ks{share(random_complex(8, 0.4, 6, 2)), share(random_complex(12, 0.25, 16, 2)),
                                share(rips_complex(cycle_graph(8), 2.0, 2)), share(cycle_complex(6)),
                                share(tree_complex(2, 2))};
  PathOptions no_shortcuts;
  no_shortcuts.use_shortcuts = false;
  std::uint64_t seed = 60;
  for (const auto& k : ks) {
    if (k->dimension() > 2 || k->vertex_count() > 12) o.pass = false;
    PathMetric pm(k);
    const GridOracle g16(*k, 16), g32(*k, 32);
    Rng rng(seed++);
    for (int i = 0; i < 24; ++i) {
      const auto& ms = k->maximal_simplices();
      const auto x = grid_point(*k, ms[rng.below(ms.size())], 16, rng);
      const auto y = grid_point(*k, ms[rng.below(ms.size())], 16, rng);
      // odd pairs go through the full chain search
      const double exact = i % 2 ? dx(pm, x, y, no_shortcuts) : dx(pm, x, y);
      const double a = g16.distance(x, y), b = g32.distance(x, y);
      worst_gap = std::max(worst_gap, a - exact);
      if (exact > a + 1e-9 || a - exact > grid_tolerance(k->dimension(), 16, exact)) o.pass = false;
      if (exact > b + 1e-9 || b > a + 1e-12) o.pass = false;
      ++pairs;
    }
  }
  o.detail = std::to_string(pairs) + " grid pairs, max grid - exact at h=1/16: " + fmt(worst_gap) +
             "; h=1/32 never worse";
  return o;
}

// 7. --------------------------------------------------------------------
Outcome sandwich() {
  Outcome o;
  std::size_t pairs = 0, quads = 0;
  double worst = 0.0;
  std::uint64_t seed = 70;
  for (const auto& k : {share(random_complex(12, 0.3, 7, 2)), share(rips_complex(cycle_graph(10), 2.0, 2)),
                        share(tree_complex(2, 4))}) {
    for (const auto& m : {word_extension(k), affine_extension(k)}) {
      Rng rng(seed++);
      for (int i = 0; i < 150; ++i) {
        const auto x = i % 5 ? random_point(*k, rng) : V(random_vertex(*k, rng));
        const auto y = random_point(*k, rng);
        const auto r = sandwich_check(m, x, y);
        if (!r.ran || !r.pass) o.pass = false;
        worst = std::max(worst, r.excess);
        ++pairs;
      }
      const auto w = equivalence_windows_check(m, sample_quadruples(*k, 150, seed++));
      if (!w.ran || !w.pass) o.pass = false;
      worst = std::max(worst, w.max_excess);
      quads += w.samples;
    }
  }
  o.detail = std::to_string(pairs) + " pairs in [D̂ - B', D̂], " + std::to_string(quads) +
             " quadruples in the 4B' window; max excess " + fmt(worst);
  return o;
}

// 8. --------------------------------------------------------------------
Outcome dd_identities() {
  Outcome o;
  std::size_t tuples = 0;
  double worst = 0.0;
  auto track = [&](double residual) {
    worst = std::max(worst, std::abs(residual));
    if (std::abs(residual) > 1e-9) o.pass = false;
  };
  std::uint64_t seed = 80;
  for (const auto& k : {share(random_complex(10, 0.3, 8, 2)), share(rips_complex(cycle_graph(9), 2.0, 2))}) {
    const auto m = affine_extension(k);
    Rng rng(seed++);
    auto P = [&] { return random_point(*k, rng); };
    auto dd = [&](auto& a, auto& b, auto& c, auto& d) { return double_difference_ext(m, a, b, c, d); };
    for (int i = 0; i < 160; ++i) {
      const auto a = P(), ap = P(), app = P(), b = P(), bp = P(), x = P();
      track(dd(a, ap, b, bp) - dd(b, bp, a, ap));                      // (a) symmetry
      track(dd(a, ap, b, bp) + dd(ap, a, b, bp));                      // (b) antisymmetry
      track(dd(a, a, b, bp));                                          // (c)
      track(dd(a, ap, b, b));                                          // (c)
      track(dd(a, ap, b, bp) + dd(ap, app, b, bp) - dd(a, app, b, bp));  // (d) transitivity
      track(dd(a, b, ap, x) + dd(ap, a, b, x) + dd(b, ap, a, x));      // (e) cocycle
      // Gromov product consistency with the unhalved double difference
      track(dd(ap, a, b, ap) - 2.0 * gromov_product_ext(m, a, b, ap));
      ++tuples;
    }
  }
  o.detail = std::to_string(tuples) + " tuples, identities (a)-(e) and <c,a|b,c> = 2<a|b>_c, max residual " +
             fmt(worst);
  return o;
}

// 9. and 10. share a depth-10 binary tree ---------------------------------
struct TreeFixture {
  Complex k = share(tree_complex(2, 10));
  ExtendedMetric m = word_extension(k);
  std::vector<std::vector<int>> bfs_rows;  // lazily filled by distance()

  // Plain BFS from the test side; rows are cached per source.
  int distance(VertexId a, VertexId b) {
    if (bfs_rows.empty()) bfs_rows.resize(k->vertex_count());
    auto& row = bfs_rows[a.index];
    if (row.empty()) {
      row.assign(k->vertex_count(), -1);
      std::deque<VertexId> q{a};
      row[a.index] = 0;
      while (!q.empty()) {
        const auto u = q.front();
        q.pop_front();
        for (auto v : k->neighbors(u))
          if (row[v.index] < 0) row[v.index] = row[u.index] + 1, q.push_back(v);
      }
    }
    return row[b.index];
  }
};

TreeFixture& tree() {
  static TreeFixture t;
  return t;
}

Outcome divergence_sign() {
  Outcome o;
  auto& t = tree();
  const auto& k = *t.k;
  Rng rng(90);
  std::size_t rays = 0, steps = 0, exact = 0;
  double min_step = 1e300;
  const std::uint32_t n = static_cast<std::uint32_t>(k.vertex_count());
  const std::uint32_t first_leaf = n / 2;  // breadth-first order: the last level
  for (int r = 0; rays < 8 && r < 100; ++r) {
    const VertexId leaf{first_leaf + static_cast<std::uint32_t>(rng.below(n - first_leaf))};
    const RaySpec ray = make_ray(t.m.path(), VertexId{0}, leaf, "r");
    const int depth = ray.depth();
    const VertexId ap = random_vertex(k, rng), b = random_vertex(k, rng);
    // projection of a' and b onto the ray: the depth where both have branched off
    int proj = 0;
    for (int i = 0; i <= depth; ++i)
      for (VertexId w : {ap, b})
        if (t.distance(w, ray.vertices[i]) == t.distance(w, ray.base()) - i) proj = std::max(proj, i);
    if (depth - proj < 2) continue;  // both fixed points hang off the far end
    const DivergenceOptions opt{proj, depth, 0.5};
    const Configuration crossed{ray, V(ap), V(b), ray};
    const Configuration straight{ray, V(ap), ray, V(b)};
    const auto rc = dd_divergence_probe(t.m, crossed, opt);
    const auto rs = dd_divergence_probe(t.m, straight, opt);
    for (std::size_t i = 0; i < rc.table.size(); ++i) {
      const VertexId z = ray.vertices[proj + i];
      const int closed_crossed = t.distance(z, b) - t.distance(ap, b) + t.distance(ap, z);
      if (rc.table[i].second != closed_crossed || rs.table[i].second != -closed_crossed) o.pass = false;
      exact += 2;
      if (i > 0) {
        const double up = rc.table[i].second - rc.table[i - 1].second;
        const double down = rs.table[i].second - rs.table[i - 1].second;
        min_step = std::min({min_step, up, -down});
        if (up < 1.0 || down > -1.0) o.pass = false;
        ++steps;
      }
    }
    if (rc.verdict != "+inf-divergent" || rs.verdict != "-inf-divergent") o.pass = false;
    ++rays;
  }
  if (rays < 8) o.pass = false;
  o.detail = std::to_string(rays) + " rays, " + std::to_string(exact) + " values match the BFS closed form, " +
             std::to_string(steps) + " steps past the projection, min growth " + fmt(min_step);
  return o;
}

Outcome decay() {
  Outcome o;
  auto& t = tree();
  DecayOptions opt;
  opt.samples = 400;
  opt.seed = 10;
  const auto r = decay_probe(t.m, opt);
  std::size_t kept = 0;
  double worst = 0.0;
  for (auto [mm, v] : r.table) {
    ++kept;
    if (mm < 6.0 || v > std::pow(0.95, mm) + 1e-12) o.pass = false;
    worst = std::max(worst, v);
  }
  if (kept == 0 || r.verdict != "decay-consistent" || r.parameters.at("lambda") != opt.lambda_grid.front())
    o.pass = false;
  o.detail = std::to_string(kept) + " quadruples with m >= 6, max |<u,c|a,b>| = " + fmt(worst) + ", fitted lambda " +
             (r.parameters.count("lambda") ? fmt(r.parameters.at("lambda")) : std::string("none"));
  return o;
}

// 11. -------------------------------------------------------------------
Outcome automorphism_invariance() {
  Outcome o;
  std::size_t complexes = 0, checks = 0;
  double worst = 0.0;
  auto track = [&](double a, double b) {
    worst = std::max(worst, std::abs(a - b));
    if (std::abs(a - b) > 1e-12) o.pass = false;
    ++checks;
  };
  std::uint64_t seed = 110;
  for (const auto& k : {share(cycle_complex(7)), share(path_complex(6)), share(tree_complex(2, 3)),
                        share(simplex_complex(3)), share(rips_complex(cycle_graph(8), 2.0, 2))}) {
    const auto m = word_extension(k);
    const auto autos = find_automorphisms(*k, 6);
    if (autos.empty()) o.pass = false;
    ++complexes;
    Rng rng(seed++);
    for (const auto& g : autos)
      for (int i = 0; i < 8; ++i) {
        const auto a = random_point(*k, rng), b = random_point(*k, rng), c = random_point(*k, rng),
                   d = random_point(*k, rng);
        const auto ga = g.apply(a), gb = g.apply(b), gc = g.apply(c), gd = g.apply(d);
        track(m(ga, gb), m(a, b));
        track(double_difference_ext(m, ga, gb, gc, gd), double_difference_ext(m, a, b, c, d));
        track(gromov_product_ext(m, ga, gb, gc), gromov_product_ext(m, a, b, c));
      }
  }
  o.detail = std::to_string(complexes) + " complexes, " + std::to_string(checks) + " invariance checks, max drift " +
             fmt(worst);
  return o;
}

// 12. -------------------------------------------------------------------
Outcome tripwire_sweep() {
  // a dedicated sweep on top of everything observed so far
  std::uint64_t seed = 120;
  PathOptions no_shortcuts;
  no_shortcuts.use_shortcuts = false;
  for (const auto& k : family()) {
    PathMetric pm(k);
    Rng rng(seed++);
    for (int i = 0; i < 20; ++i) dx(pm, random_point(*k, rng), random_point(*k, rng), i < 4 ? no_shortcuts : PathOptions{});
  }
  Outcome o;
  o.pass = tripwire.below == 0 && tripwire.internal_errors == 0;
  o.detail = std::to_string(tripwire.comparisons) + " bound comparisons, " + std::to_string(tripwire.below) +
             " below, " + std::to_string(tripwire.internal_errors) + " internal errors, max bound - value " +
             fmt(tripwire.worst);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"naive bilinear failure", naive_failure},
      {"vertex agreement", vertex_agreement},
      {"restriction and diameter", restriction_diameter},
      {"disjoint supports", disjoint_supports},
      {"metric axioms of the extension", metric_axioms},
      {"grid oracle agreement", oracle_agreement},
      {"sandwich and 4B' window", sandwich},
      {"double difference identities", dd_identities},
      {"divergence signs on a tree", divergence_sign},
      {"decay probe on a tree", decay},
      {"automorphism invariance", automorphism_invariance},
      {"internal consistency tripwire", tripwire_sweep},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InternalInconsistency) ++tripwire.internal_errors;
      o = {false, std::string("error: ") + e.what()};
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%2zu] %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
