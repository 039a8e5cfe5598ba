#include <doctest.h>

#include <deque>

#include "metext/error.hpp"
#include "metext/generators.hpp"
#include "metext/random.hpp"
#include "metext/vertex_metric.hpp"

using namespace metext;

namespace {

SimplicialComplex path_abcd() {
  return SimplicialComplex::build({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}});
}

std::vector<std::vector<double>> scaled(const WordMetricTable& w, double s, double shift = 0.0) {
  std::vector<std::vector<double>> m(w.size(), std::vector<double>(w.size()));
  for (std::uint32_t u = 0; u < w.size(); ++u)
    for (std::uint32_t v = 0; v < w.size(); ++v) m[u][v] = u == v ? 0.0 : s * w(VertexId{u}, VertexId{v}) + shift;
  return m;
}

// Independent reference: BFS parents from a, walk back from b to get the
// unique tree path, then the minimum BFS distance from c to that path.
int tree_distance_to_path(const SimplicialComplex& k, VertexId a, VertexId b, VertexId c) {
  const std::size_t n = k.vertex_count();
  auto bfs = [&](VertexId s) {
    std::vector<int> d(n, -1);
    std::vector<std::uint32_t> parent(n, s.index);
    std::deque<VertexId> q{s};
    d[s.index] = 0;
    while (!q.empty()) {
      auto u = q.front();
      q.pop_front();
      for (auto v : k.neighbors(u))
        if (d[v.index] < 0) d[v.index] = d[u.index] + 1, parent[v.index] = u.index, q.push_back(v);
    }
    return std::make_pair(d, parent);
  };
  const auto [da, parent] = bfs(a);
  const auto [dc, unused] = bfs(c);
  int best = dc[b.index];
  for (std::uint32_t x = b.index; x != a.index; x = parent[x]) best = std::min(best, dc[x]);
  return std::min(best, dc[a.index]);
}

}  // namespace

TEST_CASE("word metric examples") {
  const auto k = SimplicialComplex::build({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  const auto w = word_metric(k);
  CHECK(w(k.require("a"), k.require("c")) == 2);
  CHECK(w(k.require("a"), k.require("a")) == 0);
  const auto t = SimplicialComplex::build({"a", "b", "c"}, {{"a", "b", "c"}});
  const auto wt = word_metric(t);
  for (std::uint32_t u = 0; u < 3; ++u)
    for (std::uint32_t v = 0; v < 3; ++v) CHECK(wt(VertexId{u}, VertexId{v}) == (u == v ? 0 : 1));
}

TEST_CASE("word metric rejects disconnected complexes") {
  const auto k = SimplicialComplex::build({"a", "b", "c"}, {{"a", "b"}});
  CHECK_THROWS_AS(word_metric(k), Error);
  try {
    word_metric(k);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DisconnectedComplex);
  }
}

TEST_CASE("spheres") {
  const auto k = SimplicialComplex::build({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  const auto w = word_metric(k);
  CHECK(sphere(w, k.require("a"), 1) == std::vector<VertexId>{k.require("b")});
  CHECK(sphere(w, k.require("a"), 0) == std::vector<VertexId>{k.require("a")});
  CHECK(sphere(w, k.require("a"), 5).empty());
}

TEST_CASE("validate_vertex_metric") {
  const auto k = path_abcd();
  const auto w = word_metric(k);
  CHECK(validate_vertex_metric(k, scaled(w, 1.0)).ok());

  const auto p = SimplicialComplex::build({"u", "v", "w"}, {{"u", "v"}, {"v", "w"}});
  auto bad = validate_vertex_metric(p, {{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.violations.front().kind == ErrorCode::TriangleViolation);
  CHECK(bad.violations.front().w == p.require("v"));

  auto diag = validate_vertex_metric(p, {{0.1, 1, 2}, {1, 0, 1}, {2, 1, 0}});
  REQUIRE_FALSE(diag.ok());
  CHECK(diag.violations.front().kind == ErrorCode::NonzeroDiagonal);

  auto asym = validate_vertex_metric(p, {{0, 1, 2}, {1.5, 0, 1}, {2, 1, 0}});
  CHECK(std::any_of(asym.violations.begin(), asym.violations.end(),
                    [](auto& v) { return v.kind == ErrorCode::NotSymmetric; }));
  auto neg = validate_vertex_metric(p, {{0, -1, 2}, {-1, 0, 1}, {2, 1, 0}});
  CHECK(std::any_of(neg.violations.begin(), neg.violations.end(),
                    [](auto& v) { return v.kind == ErrorCode::NegativeDistance; }));
  CHECK_THROWS_AS(validate_vertex_metric(p, {{0, 1}, {1, 0}}), Error);
}

TEST_CASE("linear bound constant") {
  const auto k = path_abcd();
  const auto w = word_metric(k);
  CHECK(linear_bound_constant(*validate_vertex_metric(k, scaled(w, 1.0)).metric, w) == 1.0);
  CHECK(linear_bound_constant(*validate_vertex_metric(k, scaled(w, 2.0)).metric, w) == 2.0);
  try {
    linear_bound_constant(*validate_vertex_metric(k, scaled(w, 1.0)).metric, w, 0.5);
    FAIL("expected SuppliedConstantTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SuppliedConstantTooSmall);
  }
  CHECK(linear_bound_constant(*validate_vertex_metric(k, scaled(w, 1.0)).metric, w, 4.0) == 4.0);
}

TEST_CASE("property: least linear bound is tight at some pair") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto k = random_complex(8, 0.3, trial);
    const auto w = word_metric(k);
    auto m = scaled(w, 1.0);
    // random metric: d = d_G + small symmetric perturbation kept positive
    const double bump = rng.uniform(0.0, 0.5);
    for (std::size_t u = 0; u < m.size(); ++u)
      for (std::size_t v = u + 1; v < m.size(); ++v) m[u][v] = m[v][u] = m[u][v] + bump;
    const auto metric = *validate_vertex_metric(k, m).metric;
    const double C = linear_bound_constant(metric, w);
    double min_slack = 1e9;
    for (std::uint32_t u = 0; u < m.size(); ++u)
      for (std::uint32_t v = u + 1; v < m.size(); ++v) {
        const double slack = C * w(VertexId{u}, VertexId{v}) - metric(VertexId{u}, VertexId{v});
        CHECK(slack >= -1e-12);
        min_slack = std::min(min_slack, slack);
      }
    CHECK(min_slack == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("quasi-isometry constants") {
  const auto k = path_abcd();
  const auto w = word_metric(k);
  const auto id = *validate_vertex_metric(k, scaled(w, 1.0)).metric;
  auto ok = qi_constants_check(id, w, 1, 0);
  CHECK(ok.pass);
  CHECK(ok.derived_constant == 1.0);
  CHECK(qi_constants_check(*validate_vertex_metric(k, scaled(w, 1.0, 5.0)).metric, w, 1, 5).pass);
  auto bad = qi_constants_check(*validate_vertex_metric(k, scaled(w, 3.0)).metric, w, 2, 0);
  CHECK_FALSE(bad.pass);
  REQUIRE_FALSE(bad.witnesses.empty());
  CHECK(bad.witnesses.front().upper_side);
  CHECK_THROWS_AS(qi_constants_check(id, w, 0.5, 0), Error);
}

TEST_CASE("Gromov product at vertices") {
  const auto k = SimplicialComplex::build({"a", "b", "c"}, {{"a", "c"}, {"c", "b"}});
  const auto w = word_metric(k);
  CHECK(gromov_product_vertices(w, k.require("a"), k.require("b"), k.require("a")) == 0.0);
  CHECK(gromov_product_vertices(w, k.require("a"), k.require("b"), k.require("c")) == 0.0);
}

TEST_CASE("property: tree Gromov product equals distance to the geodesic") {
  const auto k = tree_complex(3, 3);
  const auto w = word_metric(k);
  Rng rng(9);
  for (int i = 0; i < 500; ++i) {
    const VertexId a = random_vertex(k, rng), b = random_vertex(k, rng), c = random_vertex(k, rng);
    CHECK(gromov_product_vertices(w, a, b, c) == tree_distance_to_path(k, a, b, c));
  }
}

TEST_CASE("double difference examples") {
  const auto k = path_abcd();
  const auto w = word_metric(k);
  const VertexId a = k.require("a"), b = k.require("b"), c = k.require("c"), d = k.require("d");
  CHECK(double_difference_vertices(w, a, a, c, d) == 0.0);
  CHECK(double_difference_vertices(w, a, b, c, d) == -double_difference_vertices(w, b, a, c, d));
  // d(a,d) - d(b,d) - d(a,c) + d(b,c) = 3 - 2 - 2 + 1
  CHECK(double_difference_vertices(w, a, b, d, c) == 0.0);
}

TEST_CASE("property: double difference identities and Gromov product relation at vertices") {
  const auto k = random_complex(15, 0.2, 11);
  const auto w = word_metric(k);
  auto m = scaled(w, 1.5, 0.25);
  const auto metric = *validate_vertex_metric(k, m).metric;
  Rng rng(12);
  auto V = [&] { return random_vertex(k, rng); };
  auto dd = [&](VertexId x, VertexId xp, VertexId y, VertexId yp) {
    return double_difference_vertices(metric, x, xp, y, yp);
  };
  for (int i = 0; i < 500; ++i) {
    const VertexId a = V(), ap = V(), app = V(), b = V(), bp = V(), x = V();
    CHECK(dd(a, ap, b, bp) == doctest::Approx(dd(b, bp, a, ap)).epsilon(1e-12));
    CHECK(dd(a, ap, b, bp) == doctest::Approx(-dd(ap, a, b, bp)).epsilon(1e-12));
    CHECK(dd(a, a, b, bp) == 0.0);
    CHECK(dd(a, ap, b, b) == 0.0);
    CHECK(dd(a, ap, b, bp) + dd(ap, app, b, bp) == doctest::Approx(dd(a, app, b, bp)).epsilon(1e-12));
    CHECK(dd(a, b, ap, x) + dd(ap, a, b, x) + dd(b, ap, a, x) == doctest::Approx(0.0).epsilon(1e-12));
    const double gp = gromov_product_vertices(metric, b, ap, a) - gromov_product_vertices(metric, b, bp, a);
    CHECK(dd(a, b, ap, bp) == doctest::Approx(2.0 * gp).epsilon(1e-12));
  }
}

TEST_CASE("hyperbolicity delta") {
  // four-point form as an independent reference: half the gap between the
  // two largest of the three pair sums
  auto four_point = [](const WordMetricTable& w) {
    double delta = 0.0;
    const auto n = static_cast<std::uint32_t>(w.size());
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = 0; y < n; ++y)
        for (std::uint32_t z = 0; z < n; ++z)
          for (std::uint32_t t = 0; t < n; ++t) {
            auto d = [&](std::uint32_t p, std::uint32_t q) { return double(w(VertexId{p}, VertexId{q})); };
            double s[3] = {d(x, y) + d(z, t), d(x, z) + d(y, t), d(x, t) + d(y, z)};
            std::sort(s, s + 3);
            delta = std::max(delta, (s[2] - s[1]) / 2);
          }
    return delta;
  };
  const auto tree = tree_complex(2, 3);
  CHECK(hyperbolicity_delta(word_metric(tree)) == 0.0);
  CHECK(four_point(word_metric(tree)) == 0.0);
  CHECK(hyperbolicity_delta(word_metric(simplex_complex(5))) <= 1.0);
  CHECK(hyperbolicity_delta(word_metric(simplex_complex(0))) == 0.0);
  // the based form is bounded by the four-point form
  for (int s = 0; s < 4; ++s) {
    const auto w = word_metric(random_complex(10, 0.15, s));
    CHECK(hyperbolicity_delta(w) <= four_point(w) + 1e-12);
    CHECK(four_point(w) <= 2 * hyperbolicity_delta(w) + 1e-12);
  }
  CHECK(hyperbolicity_delta(word_metric(cycle_complex(8))) > 0.0);
}
