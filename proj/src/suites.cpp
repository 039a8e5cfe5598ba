#include "metext/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "metext/error.hpp"
#include "metext/generators.hpp"
#include "metext/io.hpp"
#include "metext/oracle.hpp"
#include "metext/probes.hpp"
#include "metext/random.hpp"

namespace metext {

unsigned worker_count() {
  if (const char* env = std::getenv("METRIC_EXT_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& job) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), count));
  std::vector<std::exception_ptr> errors(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < count;) {
          try {
            job(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
  }
  // lowest index first so the reported error does not depend on scheduling
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

bool SuiteReport::ok() const {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.ok(); });
}

std::string SuiteReport::text() const {
  std::ostringstream os;
  for (const auto& r : results) {
    std::string status = !r.ran ? "NOT RUN" : r.soft ? "INFO" : r.passed == r.checks ? "PASS" : "FAIL";
    os << std::left << std::setw(8) << status << std::setw(11) << r.suite << std::setw(28) << r.anchor;
    if (r.ran) os << r.passed << "/" << r.checks;
    if (!r.detail.empty()) os << "  " << r.detail;
    os << '\n';
  }
  return os.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"complex", "vertex", "path", "extension", "oracle", "probes", "workbench"};
  return names;
}

namespace {

using Point = BarycentricPoint;

// Tallies one property and remembers the first failure.
class Tally {
 public:
  Tally(std::string suite, std::string anchor) {
    r_.suite = std::move(suite);
    r_.anchor = std::move(anchor);
  }
  void check(bool ok, const std::function<std::string()>& why) {
    ++r_.checks;
    if (ok) ++r_.passed;
    else if (r_.detail.empty()) r_.detail = why();
  }
  void note(std::string text) {
    if (r_.detail.empty()) r_.detail = std::move(text);
  }
  CheckResult skip(std::string why) {
    r_.ran = false;
    r_.detail = std::move(why);
    return r_;
  }
  CheckResult soft() {
    r_.soft = true;
    return r_;
  }
  CheckResult done() { return r_; }

 private:
  CheckResult r_;
};

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

struct Context {
  const ExtendedMetric& m;
  const SuiteConfig& cfg;
  const SimplicialComplex& k;
  const PathMetric& path;
  const WordMetricTable& word;
  const VertexMetric& hat;
  std::vector<Automorphism> automorphisms;  // preserving d̂

  std::uint32_t n() const { return static_cast<std::uint32_t>(k.vertex_count()); }
  Rng rng(std::uint64_t salt) const { return Rng(cfg.seed * 0x9E3779B97F4A7C15ULL + salt); }
  Point random(Rng& r) const { return random_point(k, r); }
  Point vertex(std::uint32_t i) const { return Point::vertex(VertexId{i}); }
  double dx(const Point& x, const Point& y) const { return path.distance(x, y, m.options()).value; }
  bool has_edge() const { return k.edge_count() > 0; }
};

// Pair of points with disjoint supports, when the complex has one.
std::optional<std::pair<Point, Point>> disjoint_pair(const Context& c, Rng& r) {
  if (c.n() < 2) return std::nullopt;
  for (int tries = 0; tries < 100; ++tries) {
    Point x = c.random(r), y = c.random(r);
    if (!x.support().intersects(y.support())) return std::make_pair(std::move(x), std::move(y));
  }
  return std::nullopt;
}

template <class D>
void metric_sweep(Tally& t, const Context& c, Rng& r, const D& d, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    const Point x = c.random(r), y = c.random(r), z = c.random(r);
    const double xy = d(x, y), yx = d(y, x), yz = d(y, z), xz = d(x, z);
    t.check(xy == yx, [&] { return "asymmetric: " + num(xy) + " vs " + num(yx); });
    t.check(d(x, x) == 0.0, [&] { return "d(x,x) = " + num(d(x, x)); });
    const bool apart = half_l1(x, y) >= 1e-6;
    t.check(!apart || xy > 0.0, [&] { return "distinct points at distance 0"; });
    t.check(xz <= xy + yz + c.cfg.tolerance, [&] { return "triangle excess " + num(xz - xy - yz); });
  }
}

// Identities (a)-(e) of the double difference for any distance.
template <class D>
void dd_identities(Tally& t, const D& d, const Point& a, const Point& ap, const Point& app, const Point& b,
                   const Point& bp, double tol) {
  auto dd = [&](const Point& x, const Point& xp, const Point& y, const Point& yp) {
    return double_difference(d, x, xp, y, yp);
  };
  auto near = [&](double u, double v) { return std::abs(u - v) <= tol; };
  const double base = dd(a, ap, b, bp);
  t.check(near(base, dd(b, bp, a, ap)), [&] { return "(a) symmetry: " + num(base) + " vs " + num(dd(b, bp, a, ap)); });
  t.check(near(base, -dd(ap, a, b, bp)), [&] { return "(b) antisymmetry"; });
  t.check(near(dd(a, a, b, bp), 0.0) && near(dd(a, ap, b, b), 0.0), [&] { return "(c) repeated entries"; });
  t.check(near(base + dd(ap, app, b, bp), dd(a, app, b, bp)), [&] { return "(d) transitivity"; });
  t.check(near(dd(a, b, ap, bp) + dd(ap, a, b, bp) + dd(b, ap, a, bp), 0.0), [&] { return "(e) cocycle"; });
}

// ------------------------------------------------------------ complex

CheckResult face_closure(const Context& c) {
  Tally t("complex", "face-closure");
  for (const auto& s : c.k.maximal_simplices()) {
    const auto& v = s.vertices();
    if (v.size() > 12) continue;
    for (std::uint32_t mask = 1; mask < (1u << v.size()); ++mask) {
      std::vector<VertexId> sub;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (mask >> i & 1u) sub.push_back(v[i]);
      const Simplex face(sub);
      t.check(c.k.is_simplex(face), [&] { return c.k.describe(face) + " missing"; });
    }
  }
  return t.done();
}

CheckResult simplex_l1_axioms(const Context& c) {
  Tally t("complex", "simplex-l1-metric");
  auto r = c.rng(11);
  for (std::size_t i = 0; i < c.cfg.pairs; ++i) {
    const Simplex& s = r.pick(c.k.maximal_simplices());
    const Point x = random_point_in(c.k, s, r), y = random_point_in(c.k, s, r), z = random_point_in(c.k, s, r);
    const double xy = simplex_l1(c.k, x, y), yz = simplex_l1(c.k, y, z), xz = simplex_l1(c.k, x, z);
    t.check(xy == simplex_l1(c.k, y, x), [] { return "asymmetric"; });
    t.check(simplex_l1(c.k, x, x) == 0.0 && (x == y || xy > 0.0), [] { return "identity"; });
    t.check(xz <= xy + yz + c.cfg.tolerance, [&] { return "triangle excess " + num(xz - xy - yz); });
    t.check(xy <= 1.0 + c.cfg.tolerance, [&] { return "diameter exceeded: " + num(xy); });
  }
  return t.done();
}

CheckResult face_restriction(const Context& c) {
  Tally t("complex", "face-restriction");
  auto r = c.rng(12);
  for (std::size_t i = 0; i < c.cfg.pairs; ++i) {
    const Simplex& s = r.pick(c.k.maximal_simplices());
    std::vector<VertexId> sub;
    for (VertexId v : s)
      if (r.chance(0.6)) sub.push_back(v);
    if (sub.empty()) sub.push_back(s.vertices().front());
    const Simplex tau(sub);
    const Point x = random_point_in(c.k, tau, r), y = random_point_in(c.k, tau, r);
    // dense evaluation over sigma's coordinates
    double dense = 0.0;
    for (VertexId v : s) dense += std::abs(x.weight(v) - y.weight(v));
    dense *= 0.5;
    const double in_face = simplex_l1(c.k, x, y);
    t.check(std::abs(in_face - dense) <= 1e-12, [&] { return num(in_face) + " vs " + num(dense); });
  }
  return t.done();
}

CheckResult automorphism_l1(const Context& c) {
  Tally t("complex", "automorphism-l1");
  const auto autos = find_automorphisms(c.k, 4);
  if (autos.empty()) return t.skip("no nontrivial automorphism");
  auto r = c.rng(13);
  for (const auto& g : autos)
    for (std::size_t i = 0; i < 25; ++i) {
      const Simplex& s = r.pick(c.k.maximal_simplices());
      const Point x = random_point_in(c.k, s, r), y = random_point_in(c.k, s, r);
      t.check(simplex_l1(c.k, g.apply(x), g.apply(y)) == simplex_l1(c.k, x, y), [] { return "l1 not preserved"; });
    }
  return t.done();
}

// ------------------------------------------------------------ vertex

CheckResult vertex_agreement(const Context& c) {
  Tally t("vertex", "vertex-agreement");
  const std::uint32_t n = std::min<std::uint32_t>(c.n(), 40);
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v) {
      const double d = c.dx(c.vertex(u), c.vertex(v));
      t.check(d == c.word(VertexId{u}, VertexId{v}), [&] { return "d_X = " + num(d); });
    }
  // and without the closed forms, through the chain search
  PathOptions full = c.m.options();
  full.use_shortcuts = false;
  auto r = c.rng(21);
  for (int i = 0; i < 20 && c.n() > 1; ++i) {
    const VertexId u = random_vertex(c.k, r), v = random_vertex(c.k, r);
    const double d = c.path.distance(Point::vertex(u), Point::vertex(v), full).value;
    t.check(std::abs(d - c.word(u, v)) <= c.cfg.tolerance, [&] { return "chain search gives " + num(d); });
  }
  return t.done();
}

CheckResult linear_bound(const Context& c) {
  Tally t("vertex", "linear-bound");
  const double C = c.m.constant();
  double tight = 0.0;
  for (std::uint32_t u = 0; u < c.n(); ++u)
    for (std::uint32_t v = u + 1; v < c.n(); ++v) {
      const double slack = C * c.word(VertexId{u}, VertexId{v}) - c.hat(VertexId{u}, VertexId{v});
      t.check(slack >= -c.cfg.tolerance, [&] { return "C too small by " + num(-slack); });
      tight = std::max(tight, c.hat(VertexId{u}, VertexId{v}) / c.word(VertexId{u}, VertexId{v}));
    }
  if (!c.hat.supplied_constant() && c.n() >= 2)
    t.check(std::abs(tight - C) <= 1e-12 * C, [&] { return "minimal C not attained"; });
  return t.done();
}

CheckResult dd_vertices(const Context& c) {
  Tally t("vertex", "dd-identities-vertices");
  auto r = c.rng(22);
  auto d = [&](const Point& p, const Point& q) { return c.hat(*p.as_vertex(), *q.as_vertex()); };
  for (std::size_t i = 0; i < c.cfg.tuples; ++i) {
    auto v = [&] { return Point::vertex(random_vertex(c.k, r)); };
    dd_identities(t, d, v(), v(), v(), v(), v(), c.cfg.tolerance);
  }
  return t.done();
}

CheckResult gp_dd_vertices(const Context& c) {
  Tally t("vertex", "gp-dd-relation");
  auto r = c.rng(23);
  for (std::size_t i = 0; i < c.cfg.tuples; ++i) {
    const VertexId a = random_vertex(c.k, r), b = random_vertex(c.k, r), x = random_vertex(c.k, r),
                   y = random_vertex(c.k, r);
    const double dd = double_difference_vertices(c.hat, a, b, x, y);
    const double gp = gromov_product_vertices(c.hat, b, x, a) - gromov_product_vertices(c.hat, b, y, a);
    // with the unhalved double difference the relation carries a factor 2
    t.check(std::abs(dd - 2.0 * gp) <= c.cfg.tolerance, [&] { return num(dd) + " vs 2*" + num(gp); });
  }
  return t.done();
}

CheckResult hyperbolicity(const Context& c) {
  Tally t("vertex", "hyperbolicity");
  if (c.n() > 60) return t.skip("more than 60 vertices");
  t.note("delta(d_G) = " + num(hyperbolicity_delta(c.word)) + ", delta(d_hat) = " + num(hyperbolicity_delta(c.hat)));
  return t.soft();
}

// ------------------------------------------------------------ path

CheckResult path_axioms(const Context& c) {
  Tally t("path", "path-metric-axioms");
  auto r = c.rng(31);
  metric_sweep(t, c, r, [&](const Point& x, const Point& y) { return c.dx(x, y); }, c.cfg.triples);
  return t.done();
}

CheckResult path_restriction(const Context& c) {
  Tally t("path", "restriction-diameter");
  auto r = c.rng(32);
  PathOptions full = c.m.options();
  full.use_shortcuts = false;
  for (std::size_t i = 0; i < c.cfg.pairs; ++i) {
    const Simplex& s = r.pick(c.k.maximal_simplices());
    const Point x = random_point_in(c.k, s, r), y = random_point_in(c.k, s, r);
    const double l1 = simplex_l1(c.k, x, y);
    const double d = c.dx(x, y);
    t.check(std::abs(d - l1) <= c.cfg.tolerance && d <= 1.0 + c.cfg.tolerance,
            [&] { return "d_X = " + num(d) + ", simplex l1 = " + num(l1); });
    if (i < 40) {
      const double searched = c.path.distance(x, y, full).value;
      t.check(std::abs(searched - l1) <= c.cfg.tolerance, [&] { return "chain search gives " + num(searched); });
    }
  }
  return t.done();
}

CheckResult path_disjoint(const Context& c) {
  Tally t("path", "disjoint-support");
  auto r = c.rng(33);
  for (std::size_t i = 0; i < c.cfg.pairs; ++i) {
    auto p = disjoint_pair(c, r);
    if (!p) break;
    const double d = c.dx(p->first, p->second);
    t.check(d >= 1.0 - c.cfg.tolerance, [&] { return "d_X = " + num(d); });
  }
  if (t.done().checks == 0) return t.skip("no disjoint pair");
  return t.done();
}

CheckResult witness_soundness(const Context& c) {
  Tally t("path", "witness-soundness");
  auto r = c.rng(34);
  for (std::size_t i = 0; i < c.cfg.pairs; ++i) {
    const Point x = c.random(r), y = c.random(r);
    const auto res = c.path.distance(x, y, c.m.options());
    const double len = path_length(c.k, res.witness.points, res.witness.carriers);
    t.check(std::abs(len - res.value) <= c.cfg.tolerance && res.witness.points.front() == x &&
                res.witness.points.back() == y,
            [&] { return "witness length " + num(len) + " vs " + num(res.value); });
    for (const auto& lb : c.path.lower_bounds(x, y))
      t.check(res.value >= lb.value - c.cfg.tolerance, [&] { return lb.name + " bound exceeds value"; });
  }
  return t.done();
}

CheckResult path_automorphisms(const Context& c) {
  Tally t("path", "automorphism-invariance");
  const auto autos = find_automorphisms(c.k, 3);
  if (autos.empty()) return t.skip("no nontrivial automorphism");
  auto r = c.rng(35);
  for (const auto& g : autos)
    for (std::size_t i = 0; i < 20; ++i) {
      const Point x = c.random(r), y = c.random(r);
      const double a = c.dx(x, y), b = c.dx(g.apply(x), g.apply(y));
      t.check(std::abs(a - b) <= c.cfg.tolerance, [&] { return num(a) + " vs " + num(b); });
    }
  return t.done();
}

// ------------------------------------------------------------ extension

CheckResult ext_axioms(const Context& c) {
  Tally t("extension", "metric-axioms");
  auto r = c.rng(41);
  metric_sweep(t, c, r, c.m, c.cfg.triples);
  return t.done();
}

CheckResult mixed_inequality(const Context& c) {
  Tally t("extension", "mixed-and-bilinear-triangle");
  auto r = c.rng(42);
  const double C = c.m.constant();
  for (std::size_t i = 0; i < c.cfg.triples; ++i) {
    const Point x = c.random(r), y = c.random(r), z = c.random(r);
    const double xz = c.m.bilinear(x, z), xy = c.m.bilinear(x, y), yz = c.m.bilinear(y, z);
    t.check(xz <= xy + 2.0 * C * c.dx(y, z) + c.cfg.tolerance, [&] { return "mixed inequality fails"; });
    t.check(xz <= xy + yz + c.cfg.tolerance, [&] { return "bilinear triangle fails"; });
  }
  return t.done();
}

CheckResult ext_disjoint(const Context& c) {
  Tally t("extension", "disjoint-comparison");
  auto r = c.rng(43);
  for (std::size_t i = 0; i < c.cfg.pairs; ++i) {
    auto p = disjoint_pair(c, r);
    if (!p) break;
    const auto& [x, y] = *p;
    const double hat = c.m.bilinear(x, y);
    t.check(hat <= c.m.scale() * c.dx(x, y) + c.cfg.tolerance, [&] { return "D_hat above 3C d_X"; });
    t.check(c.m(x, y) == hat, [&] { return "d_tilde != D_hat"; });
  }
  if (t.done().checks == 0) return t.skip("no disjoint pair");
  return t.done();
}

CheckResult vertex_restriction(const Context& c) {
  Tally t("extension", "vertex-restriction");
  for (std::uint32_t u = 0; u < c.n(); ++u)
    for (std::uint32_t v = 0; v < c.n(); ++v)
      t.check(c.m(c.vertex(u), c.vertex(v)) == (u == v ? 0.0 : c.hat(VertexId{u}, VertexId{v})),
              [&] { return "d_tilde differs from d_hat"; });
  return t.done();
}

CheckResult ext_dd(const Context& c) {
  Tally t("extension", "dd-identities");
  auto r = c.rng(44);
  for (std::size_t i = 0; i < c.cfg.tuples; ++i) {
    const Point a = c.random(r), ap = c.random(r), app = c.random(r), b = c.random(r), bp = c.random(r);
    dd_identities(t, c.m, a, ap, app, b, bp, c.cfg.tolerance);
  }
  return t.done();
}

CheckResult ext_gp(const Context& c) {
  Tally t("extension", "gp-consistency");
  auto r = c.rng(45);
  for (std::size_t i = 0; i < c.cfg.tuples; ++i) {
    const Point a = c.random(r), b = c.random(r), cc = c.random(r);
    const double gp = gromov_product_ext(c.m, a, b, cc);
    const double dd = double_difference_ext(c.m, cc, a, b, cc);
    t.check(std::abs(dd - 2.0 * gp) <= c.cfg.tolerance, [&] { return num(dd) + " vs 2*" + num(gp); });
    t.check(gp >= -c.cfg.tolerance && gromov_product_ext(c.m, a, b, a) == 0.0, [&] { return "gp sign"; });
  }
  return t.done();
}

CheckResult sandwich(const Context& c) {
  Tally t("extension", "sandwich");
  if (!c.m.b_prime()) return t.skip("no quasi-isometry constants");
  auto r = c.rng(46);
  for (std::size_t i = 0; i < c.cfg.pairs; ++i) {
    const auto s = sandwich_check(c.m, c.random(r), c.random(r), c.cfg.tolerance);
    t.check(s.pass, [&] { return "excess " + num(s.excess); });
  }
  return t.done();
}

CheckResult ext_automorphisms(const Context& c) {
  Tally t("extension", "automorphism-invariance");
  if (c.automorphisms.empty()) return t.skip("no automorphism preserving d_hat");
  auto r = c.rng(47);
  const double tol = 1e-12;
  for (const auto& g : c.automorphisms)
    for (std::size_t i = 0; i < 20; ++i) {
      const Point a = c.random(r), b = c.random(r), x = c.random(r), y = c.random(r);
      const auto G = [&](const Point& p) { return g.apply(p); };
      t.check(std::abs(c.m(a, b) - c.m(G(a), G(b))) <= tol, [] { return "d_tilde not invariant"; });
      t.check(std::abs(double_difference_ext(c.m, a, b, x, y) - double_difference_ext(c.m, G(a), G(b), G(x), G(y))) <=
                  tol,
              [] { return "double difference not invariant"; });
      t.check(std::abs(gromov_product_ext(c.m, a, b, x) - gromov_product_ext(c.m, G(a), G(b), G(x))) <= tol,
              [] { return "Gromov product not invariant"; });
    }
  return t.done();
}

CheckResult defect(const Context& c) {
  Tally t("extension", "geodesic-defect");
  const auto rep = geodesic_defect(c.m, geodesic_triples(c.word, 2000, c.cfg.seed));
  bool is_word = true;
  for (std::uint32_t u = 0; u < c.n() && is_word; ++u)
    for (std::uint32_t v = 0; v < c.n() && is_word; ++v)
      is_word = c.hat(VertexId{u}, VertexId{v}) == c.word(VertexId{u}, VertexId{v});
  if (!is_word) {
    t.note("defect " + num(rep.defect) + " over " + std::to_string(rep.triples) + " geodesic triples");
    return t.soft();
  }
  t.check(rep.defect == 0.0, [&] { return "word metric defect " + num(rep.defect); });
  return t.done();
}

// ------------------------------------------------------------ oracle

CheckResult grid_sandwich(const Context& c) {
  Tally t("oracle", "grid-sandwich");
  if (c.k.dimension() > 3 || c.n() > 12) return t.skip("grid oracle limited to dim <= 3 and <= 12 vertices");
  const int n = c.cfg.grid_n;
  const GridOracle coarse(c.k, n), fine(c.k, 2 * n);
  auto r = c.rng(51);
  const std::size_t count = std::min<std::size_t>(c.cfg.pairs, 50);
  for (std::size_t i = 0; i < count; ++i) {
    const Point x = snap_to_grid(c.k, c.random(r), n), y = snap_to_grid(c.k, c.random(r), n);
    const double exact = c.dx(x, y), g = coarse.distance(x, y), g2 = fine.distance(x, y);
    const double tol = grid_tolerance(c.k.dimension(), n, exact);
    t.check(exact <= g + c.cfg.tolerance && g - exact <= tol,
            [&] { return "exact " + num(exact) + ", grid " + num(g) + ", tol " + num(tol); });
    t.check(g2 <= g + c.cfg.tolerance, [&] { return "refinement increased " + num(g) + " -> " + num(g2); });
  }
  return t.done();
}

CheckResult naive_failure(const Context& c) {
  Tally t("oracle", "naive-bilinear-failure");
  if (!c.has_edge()) return t.skip("complex has no edge");
  auto r = c.rng(52);
  std::vector<Point> pts{random_interior_point(c.k, r)};
  for (int i = 0; i < 20; ++i) pts.push_back(c.random(r));
  const auto bad = exhaustive_metric_scan([&](const Point& x, const Point& y) { return c.m.bilinear(x, y); }, pts);
  const bool found = std::any_of(bad.begin(), bad.end(), [](auto& v) { return v.kind == "identity" && v.i == v.j; });
  t.check(found, [] { return "no D_hat(x,x) > 0 found"; });
  const auto good = exhaustive_metric_scan(c.m, pts);
  t.check(good.empty(), [&] { return good.front().kind + " violation for d_tilde"; });
  return t.done();
}

CheckResult tree_gromov(const Context& c) {
  Tally t("oracle", "tree-gromov");
  if (c.k.dimension() > 1 || c.k.edge_count() + 1 != c.n()) return t.skip("not a tree");
  const TreeOracle tree(c.k);
  auto r = c.rng(53);
  for (int i = 0; i < 1000; ++i) {
    const VertexId a = random_vertex(c.k, r), b = random_vertex(c.k, r), cc = random_vertex(c.k, r);
    const double gp = gromov_product_vertices(c.word, a, b, cc);
    t.check(gp == tree.gromov(a, b, cc), [&] { return "gromov product " + num(gp); });
  }
  return t.done();
}

// ------------------------------------------------------------ probes

CheckResult windows(const Context& c) {
  Tally t("probes", "dd-windows");
  if (!c.m.b_prime()) return t.skip("no quasi-isometry constants");
  const auto samples = sample_quadruples(c.k, c.cfg.tuples, c.cfg.seed);
  const double window = 4.0 * *c.m.b_prime();
  for (const auto& [x, xp, y, yp] : samples) {
    const double gap = std::abs(double_difference_ext(c.m, x, xp, y, yp) - double_difference_bilinear(c.m, x, xp, y, yp));
    t.check(gap <= window + c.cfg.tolerance, [&] { return "window exceeded by " + num(gap - window); });
  }
  const auto rep = equivalence_windows_check(c.m, samples);
  t.note("fitted alpha = " + num(rep.alpha) + ", beta = " + num(rep.beta));
  return t.done();
}

CheckResult decay(const Context& c) {
  Tally t("probes", "decay");
  if (!c.m.vertex_metric().qi()) return t.skip("no quasi-isometry constants");
  DecayOptions opt;
  opt.seed = c.cfg.seed;
  opt.samples = 200;
  const auto rep = decay_probe(c.m, opt);
  t.note(rep.verdict + " with " + num(rep.parameters.at("samples_used")) + " samples at m >= T" +
         (rep.parameters.count("lambda") ? ", lambda = " + num(rep.parameters.at("lambda")) : ""));
  return t.soft();
}

CheckResult divergence(const Context& c) {
  Tally t("probes", "divergence-sign");
  // longest geodesic gives the deepest ray
  VertexId base{0}, far{0};
  int best = -1;
  for (std::uint32_t u = 0; u < c.n(); ++u)
    for (std::uint32_t v = 0; v < c.n(); ++v)
      if (c.word(VertexId{u}, VertexId{v}) > best) best = c.word(VertexId{u}, VertexId{v}), base = {u}, far = {v};
  if (best < 6) return t.skip("word diameter below 6");
  const RaySpec ray = make_ray(c.path, base, far, "r");
  DivergenceOptions opt;
  opt.depth_min = best / 2;
  opt.depth_max = best;
  const Point fixed_a = Point::vertex(base);
  const Point fixed_b = Point::vertex(ray.vertices[1]);
  const auto crossed = dd_divergence_probe(c.m, {ray, fixed_a, fixed_b, ray}, opt);
  const auto straight = dd_divergence_probe(c.m, {ray, fixed_a, ray, fixed_b}, opt);
  t.note("crossed " + crossed.verdict + ", straight " + straight.verdict);
  return t.soft();
}

CheckResult reproducibility(const Context& c) {
  Tally t("probes", "reproducibility");
  const auto q1 = sample_quadruples(c.k, 20, c.cfg.seed), q2 = sample_quadruples(c.k, 20, c.cfg.seed);
  for (std::size_t i = 0; i < q1.size(); ++i) {
    const double a = double_difference_ext(c.m, q1[i][0], q1[i][1], q1[i][2], q1[i][3]);
    const double b = double_difference_ext(c.m, q2[i][0], q2[i][1], q2[i][2], q2[i][3]);
    t.check(a == b, [] { return "values differ between runs"; });
  }
  return t.done();
}

// ------------------------------------------------------------ workbench

CheckResult round_trip(const Context& c) {
  Tally t("workbench", "round-trip");
  const auto text = complex_to_json(c.k).dump();
  t.check(complex_from_json(parse_json(text)) == c.k, [] { return "complex changed"; });
  const auto back = metric_from_json(c.k, c.word, parse_json(metric_to_json(c.k, c.hat).dump()));
  t.check(back.ok() && back.metric->matrix() == c.hat.matrix(), [] { return "metric changed"; });
  return t.done();
}

CheckResult determinism(const Context& c) {
  Tally t("workbench", "generator-determinism");
  for (std::uint64_t s = c.cfg.seed; s < c.cfg.seed + 5; ++s)
    t.check(random_complex(12, 0.3, s) == random_complex(12, 0.3, s), [] { return "random generator differs"; });
  t.check(rips_complex(cycle_graph(8), 2.0) == rips_complex(cycle_graph(8), 2.0), [] { return "rips differs"; });
  return t.done();
}

using Check = CheckResult (*)(const Context&);

const std::vector<std::pair<std::string, std::vector<Check>>>& registry() {
  static const std::vector<std::pair<std::string, std::vector<Check>>> r{
      {"complex", {face_closure, simplex_l1_axioms, face_restriction, automorphism_l1}},
      {"vertex", {vertex_agreement, linear_bound, dd_vertices, gp_dd_vertices, hyperbolicity}},
      {"path", {path_axioms, path_restriction, path_disjoint, witness_soundness, path_automorphisms}},
      {"extension",
       {ext_axioms, mixed_inequality, ext_disjoint, vertex_restriction, ext_dd, ext_gp, sandwich, ext_automorphisms,
        defect}},
      {"oracle", {grid_sandwich, naive_failure, tree_gromov}},
      {"probes", {windows, decay, divergence, reproducibility}},
      {"workbench", {round_trip, determinism}},
  };
  return r;
}

std::vector<Automorphism> invariant_automorphisms(const SimplicialComplex& k, const VertexMetric& hat) {
  std::vector<Automorphism> out;
  for (auto& g : find_automorphisms(k, 8)) {
    bool ok = true;
    for (std::uint32_t u = 0; u < k.vertex_count() && ok; ++u)
      for (std::uint32_t v = 0; v < k.vertex_count() && ok; ++v)
        ok = hat(VertexId{u}, VertexId{v}) == hat(g(VertexId{u}), g(VertexId{v}));
    if (ok) out.push_back(std::move(g));
    if (out.size() == 3) break;
  }
  return out;
}

}  // namespace

SuiteReport run_suites(const ExtendedMetric& metric, const std::vector<std::string>& suites, const SuiteConfig& config) {
  std::vector<Check> checks;
  for (const auto& name : suites) {
    if (name != "all" &&
        std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
      throw Error(ErrorCode::InvalidParameters, "unknown suite '" + name + "'");
  }
  for (const auto& [name, list] : registry()) {
    const bool wanted = std::any_of(suites.begin(), suites.end(), [&](auto& s) { return s == "all" || s == name; });
    if (wanted) checks.insert(checks.end(), list.begin(), list.end());
  }
  Context ctx{metric,
              config,
              metric.complex(),
              metric.path(),
              metric.path().word(),
              metric.vertex_metric(),
              invariant_automorphisms(metric.complex(), metric.vertex_metric())};
  SuiteReport report;
  report.results.resize(checks.size());
  parallel_for(checks.size(), [&](std::size_t i) { report.results[i] = checks[i](ctx); });
  return report;
}

}  // namespace metext
