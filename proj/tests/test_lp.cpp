#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "metext/lp.hpp"
#include "metext/random.hpp"

using namespace metext;

namespace {

// n x n assignment as an LP: x_ij >= 0, rows and columns sum to 1. The
// polytope is integral, so the optimum equals the best permutation.
lp::LinearProgram assignment(const std::vector<std::vector<double>>& c) {
  const std::size_t n = c.size();
  lp::LinearProgram p;
  const auto base = p.add_vars(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p.cost[base + i * n + j] = c[i][j];
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<std::size_t, double>> row, col;
    for (std::size_t j = 0; j < n; ++j) {
      row.emplace_back(base + i * n + j, 1.0);
      col.emplace_back(base + j * n + i, 1.0);
    }
    p.add_row(row, 1.0);
    p.add_row(col, 1.0);
  }
  return p;
}

double best_permutation(const std::vector<std::vector<double>>& c) {
  std::vector<std::size_t> perm(c.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = 1e300;
  do {
    double s = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) s += c[i][perm[i]];
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("tiny programs") {
  lp::LinearProgram p;
  p.add_vars(2);
  p.cost = {1.0, 2.0};
  p.add_row({{0, 1.0}, {1, 1.0}}, 3.0);
  auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::Optimal);
  CHECK(s.value == doctest::Approx(3.0));
  CHECK(s.x[0] == doctest::Approx(3.0));
  CHECK(s.x[1] == doctest::Approx(0.0));
}

TEST_CASE("negative right-hand sides are handled") {
  lp::LinearProgram p;
  p.add_vars(2, 1.0);
  p.add_row({{0, -1.0}, {1, -1.0}}, -2.0);
  auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::Optimal);
  CHECK(s.value == doctest::Approx(2.0));
}

TEST_CASE("infeasible and unbounded") {
  lp::LinearProgram inf;
  inf.add_vars(1);
  inf.add_row({{0, 1.0}}, -1.0);
  CHECK(lp::solve(inf).status == lp::Status::Infeasible);

  lp::LinearProgram unb;
  unb.add_vars(2);
  unb.cost = {-1.0, 0.0};
  unb.add_row({{0, 1.0}, {1, -1.0}}, 0.0);
  CHECK(lp::solve(unb).status == lp::Status::Unbounded);
}

TEST_CASE("redundant equality rows") {
  lp::LinearProgram p;
  p.add_vars(3);
  p.cost = {1.0, 0.5, 2.0};
  p.add_row({{0, 1.0}, {1, 1.0}, {2, 1.0}}, 1.0);
  p.add_row({{0, 2.0}, {1, 2.0}, {2, 2.0}}, 2.0);
  auto s = lp::solve(p);
  REQUIRE(s.status == lp::Status::Optimal);
  CHECK(s.value == doctest::Approx(0.5));
}

TEST_CASE("property: assignment LPs match brute-force permutations") {
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng.below(4);
    std::vector<std::vector<double>> c(n, std::vector<double>(n));
    for (auto& row : c)
      for (auto& v : row) v = rng.chance(0.3) ? double(rng.below(4)) : rng.uniform(-2.0, 5.0);
    const auto s = lp::solve(assignment(c));
    REQUIRE(s.status == lp::Status::Optimal);
    CHECK(s.value == doctest::Approx(best_permutation(c)).epsilon(1e-10));
    // the reported vertex is feasible
    for (double v : s.x) CHECK(v >= -1e-9);
  }
}

TEST_CASE("property: solving is deterministic") {
  Rng rng(18);
  std::vector<std::vector<double>> c(4, std::vector<double>(4));
  for (auto& row : c)
    for (auto& v : row) v = double(rng.below(3));  // many ties
  const auto a = lp::solve(assignment(c)), b = lp::solve(assignment(c));
  CHECK(a.x == b.x);
  CHECK(a.value == b.value);
}
