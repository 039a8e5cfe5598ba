#include "metext/path_metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "metext/error.hpp"
#include "metext/lp.hpp"

namespace metext {

namespace {

constexpr double kImprovement = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// One layer of breakpoint coordinates: either the fixed endpoint weights or
// LP variables over a vertex set.
struct Layer {
  std::vector<VertexId> vertices;
  std::vector<double> constant;  // used when var_base is unset
  std::optional<std::size_t> var_base;

  std::optional<std::size_t> var(VertexId v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v || !var_base) return std::nullopt;
    return *var_base + static_cast<std::size_t>(it - vertices.begin());
  }
  double fixed(VertexId v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v || var_base) return 0.0;
    return constant[static_cast<std::size_t>(it - vertices.begin())];
  }
};

Layer fixed_layer(const BarycentricPoint& p) {
  Layer l;
  for (const auto& [v, w] : p.entries()) {
    l.vertices.push_back(v);
    l.constant.push_back(w);
  }
  return l;
}

Layer variable_layer(lp::LinearProgram& program, const Simplex& s) {
  Layer l;
  l.vertices = s.vertices();
  l.var_base = program.add_vars(s.size());
  std::vector<std::pair<std::size_t, double>> sum;
  for (std::size_t k = 0; k < s.size(); ++k) sum.emplace_back(*l.var_base + k, 1.0);
  program.add_row(sum, 1.0);
  return l;
}

// Adds ½ Σ_u |a_u - b_u| between two consecutive layers.
void add_segment(lp::LinearProgram& program, const Layer& a, const Layer& b) {
  std::vector<VertexId> verts;
  std::set_union(a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(),
                 std::back_inserter(verts));
  for (VertexId u : verts) {
    const std::size_t pos = program.add_vars(2, 0.5);
    std::vector<std::pair<std::size_t, double>> terms{{pos, -1.0}, {pos + 1, 1.0}};
    double rhs = 0.0;
    if (auto j = a.var(u)) terms.emplace_back(*j, 1.0);
    else rhs -= a.fixed(u);
    if (auto j = b.var(u)) terms.emplace_back(*j, -1.0);
    else rhs += b.fixed(u);
    program.add_row(terms, rhs);
  }
}

// Earth mover tail from a variable layer to the fixed point y.
void add_transport_tail(lp::LinearProgram& program, const Layer& from, const BarycentricPoint& y,
                        const WordMetricTable& word) {
  const auto& ys = y.entries();
  const std::size_t base = program.add_vars(from.vertices.size() * ys.size());
  for (std::size_t i = 0; i < from.vertices.size(); ++i)
    for (std::size_t k = 0; k < ys.size(); ++k)
      program.cost[base + i * ys.size() + k] = word(from.vertices[i], ys[k].first);
  for (std::size_t i = 0; i < from.vertices.size(); ++i) {
    std::vector<std::pair<std::size_t, double>> terms{{*from.var_base + i, -1.0}};
    for (std::size_t k = 0; k < ys.size(); ++k) terms.emplace_back(base + i * ys.size() + k, 1.0);
    program.add_row(terms, 0.0);
  }
  for (std::size_t k = 0; k < ys.size(); ++k) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t i = 0; i < from.vertices.size(); ++i) terms.emplace_back(base + i * ys.size() + k, 1.0);
    program.add_row(terms, ys[k].second);
  }
}

BarycentricPoint extract_point(const SimplicialComplex& complex, const Layer& layer, const std::vector<double>& x) {
  std::vector<BarycentricPoint::Entry> e;
  for (std::size_t k = 0; k < layer.vertices.size(); ++k) {
    const double w = x[*layer.var_base + k];
    if (w > kWeightFloor) e.emplace_back(layer.vertices[k], w);
  }
  return make_point(complex, std::move(e));
}

void check_chain(const SimplicialComplex& complex, std::span<const Simplex> chain) {
  if (chain.empty()) throw Error(ErrorCode::InvalidCarrier, "empty chain");
  for (const auto& s : chain)
    if (!complex.is_simplex(s)) throw Error(ErrorCode::InvalidCarrier, complex.describe(s) + " is not a simplex");
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    if (!chain[i].intersects(chain[i + 1]))
      throw Error(ErrorCode::EmptyIntersection,
                  complex.describe(chain[i]) + " and " + complex.describe(chain[i + 1]) + " are disjoint");
}

struct ChainProgram {
  lp::LinearProgram program;
  std::vector<Layer> layers;  // layer 0 = x, last = y or the free end
};

// Fixed end: the chain minimisation proper. Free end (word != nullptr): the
// last layer ranges over the whole last simplex and is charged its earth
// mover distance to y, which bounds every completion of the chain.
ChainProgram build_chain_program(std::span<const Simplex> chain, const BarycentricPoint& x, const BarycentricPoint& y,
                                 const WordMetricTable* free_end_word) {
  ChainProgram cp;
  cp.layers.push_back(fixed_layer(x));
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    cp.layers.push_back(variable_layer(cp.program, chain[i].intersected(chain[i + 1])));
  if (free_end_word) cp.layers.push_back(variable_layer(cp.program, chain.back()));
  else cp.layers.push_back(fixed_layer(y));
  for (std::size_t i = 1; i < cp.layers.size(); ++i) add_segment(cp.program, cp.layers[i - 1], cp.layers[i]);
  if (free_end_word) add_transport_tail(cp.program, cp.layers.back(), y, *free_end_word);
  return cp;
}

lp::Solution solve_or_throw(const lp::LinearProgram& program) {
  auto sol = lp::solve(program);
  if (sol.status != lp::Status::Optimal)
    throw Error(ErrorCode::InternalInconsistency, "chain program was not solved to optimality");
  return sol;
}

PathWitness reversed(PathWitness w) {
  std::reverse(w.points.begin(), w.points.end());
  std::reverse(w.carriers.begin(), w.carriers.end());
  return w;
}

}  // namespace

double path_length(const SimplicialComplex& complex, std::span<const BarycentricPoint> points,
                   std::span<const Simplex> carriers) {
  if (points.empty()) throw Error(ErrorCode::InvalidCarrier, "a path needs at least one point");
  if (carriers.size() + 1 != points.size())
    throw Error(ErrorCode::InvalidCarrier, "a path with r segments needs r carriers");
  double total = 0.0;
  for (std::size_t i = 0; i < carriers.size(); ++i) {
    const Simplex& s = carriers[i];
    if (!complex.is_simplex(s) || !s.contains(points[i].support()) || !s.contains(points[i + 1].support()))
      throw Error(ErrorCode::InvalidCarrier, "carrier " + complex.describe(s) + " does not contain segment " +
                                                 std::to_string(i + 1));
    total += half_l1(points[i], points[i + 1]);
  }
  return total;
}

ChainSolution chain_lp(const SimplicialComplex& complex, std::span<const Simplex> chain, const BarycentricPoint& x,
                       const BarycentricPoint& y) {
  check_chain(complex, chain);
  if (!chain.front().contains(x.support()) || !chain.back().contains(y.support()))
    throw Error(ErrorCode::EndpointNotInCarrier, "endpoints must lie in the first and last simplex of the chain");

  auto cp = build_chain_program(chain, x, y, nullptr);
  auto sol = solve_or_throw(cp.program);
  ChainSolution out;
  out.value = sol.value;
  out.points.push_back(x);
  for (std::size_t i = 1; i + 1 < cp.layers.size(); ++i) out.points.push_back(extract_point(complex, cp.layers[i], sol.x));
  out.points.push_back(y);
  return out;
}

// ------------------------------------------------------------ PathMetric

PathMetric::PathMetric(std::shared_ptr<const SimplicialComplex> complex)
    : complex_(std::move(complex)), word_(word_metric(*complex_)) {}

std::vector<VertexId> PathMetric::geodesic(VertexId from, VertexId to) const {
  std::vector<VertexId> path{from};
  VertexId cur = from;
  while (cur != to) {
    const int left = word_(cur, to);
    for (VertexId z : complex_->neighbors(cur)) {
      if (word_(z, to) == left - 1) {
        cur = z;
        break;
      }
    }
    path.push_back(cur);
  }
  return path;
}

PathWitness PathMetric::routing_path(const BarycentricPoint& x, const BarycentricPoint& y) const {
  double best = kInf;
  VertexId bu{}, bv{};
  for (const auto& [u, xu] : x.entries())
    for (const auto& [v, yv] : y.entries()) {
      const double cost = (1.0 - xu) + word_(u, v) + (1.0 - yv);
      if (cost < best - kImprovement) {
        best = cost;
        bu = u;
        bv = v;
      }
    }

  PathWitness w;
  w.points.push_back(x);
  if (!(x.as_vertex() == bu)) {
    w.carriers.push_back(x.support());
    w.points.push_back(BarycentricPoint::vertex(bu));
  }
  const auto edge_path = geodesic(bu, bv);
  for (std::size_t i = 1; i < edge_path.size(); ++i) {
    w.carriers.push_back(Simplex({edge_path[i - 1], edge_path[i]}));
    w.points.push_back(BarycentricPoint::vertex(edge_path[i]));
  }
  if (!(y.as_vertex() == bv)) {
    w.carriers.push_back(y.support());
    w.points.push_back(y);
  }
  w.length = path_length(*complex_, w.points, w.carriers);
  return w;
}

double PathMetric::transport_bound(const BarycentricPoint& x, const BarycentricPoint& y) const {
  const auto& xs = x.entries();
  const auto& ys = y.entries();
  if (xs.size() == 1 && ys.size() == 1) return word_(xs[0].first, ys[0].first);
  lp::LinearProgram program;
  program.add_vars(xs.size() * ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t k = 0; k < ys.size(); ++k) program.cost[i * ys.size() + k] = word_(xs[i].first, ys[k].first);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t k = 0; k < ys.size(); ++k) terms.emplace_back(i * ys.size() + k, 1.0);
    program.add_row(terms, xs[i].second);
  }
  for (std::size_t k = 0; k < ys.size(); ++k) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t i = 0; i < xs.size(); ++i) terms.emplace_back(i * ys.size() + k, 1.0);
    program.add_row(terms, ys[k].second);
  }
  return solve_or_throw(program).value;
}

// Weight of a path in the sphere S_k around u0 is w_k. Along any path
// length >= ½ Σ_k TV(w_k). If supp(P) ⊆ S_0 ∪ S_1 and supp(Q) lies at
// distance >= m from u0, every sphere S_k with 1 <= k <= m-1 is crossed
// completely: the first point touching S_{k+1} is preceded by a point with
// all its weight in S_k, so TV(w_k) >= (1 - w_k(P)) + (1 - w_k(Q)).
// Other spheres contribute |w_k(P) - w_k(Q)|.
double PathMetric::sphere_bound(const BarycentricPoint& x, const BarycentricPoint& y) const {
  double best = 0.0;
  auto one_side = [&](const BarycentricPoint& p, const BarycentricPoint& q) {
    for (const auto& [u0, unused] : p.entries()) {
      int m = std::numeric_limits<int>::max();
      int kmax = 1;
      for (const auto& [w, wq] : q.entries()) {
        m = std::min(m, word_(u0, w));
        kmax = std::max(kmax, word_(u0, w));
      }
      std::vector<double> wp(kmax + 1, 0.0), wq(kmax + 1, 0.0);
      for (const auto& [v, a] : p.entries()) wp[word_(u0, v)] += a;
      for (const auto& [v, a] : q.entries()) wq[word_(u0, v)] += a;
      double sum = 0.0;
      for (int k = 0; k <= kmax; ++k) {
        if (k >= 1 && k <= m - 1) sum += (1.0 - wp[k]) + (1.0 - wq[k]);
        else sum += std::abs(wp[k] - wq[k]);
      }
      best = std::max(best, 0.5 * sum);
    }
  };
  one_side(x, y);
  one_side(y, x);
  return best;
}

std::vector<LowerBound> PathMetric::lower_bounds(const BarycentricPoint& x, const BarycentricPoint& y) const {
  std::vector<LowerBound> out;
  out.push_back({"coordinate", half_l1(x, y)});
  out.push_back({"disjoint_support", x.support().intersects(y.support()) ? 0.0 : 1.0});
  out.push_back({"sphere", sphere_bound(x, y)});
  out.push_back({"transport", transport_bound(x, y)});
  return out;
}

double PathMetric::best_lower_bound(const BarycentricPoint& x, const BarycentricPoint& y) const {
  double best = 0.0;
  for (const auto& lb : lower_bounds(x, y)) best = std::max(best, lb.value);
  return best;
}

PathResult PathMetric::search(const BarycentricPoint& x, const BarycentricPoint& y, const PathOptions& options) const {
  const SimplicialComplex& k = *complex_;
  const Simplex sx = x.support();
  const Simplex sy = y.support();

  int gap = std::numeric_limits<int>::max();
  for (VertexId u : sx)
    for (VertexId v : sy) gap = std::min(gap, word_(u, v));
  // Point -> vertex <= 1, vertex -> vertex = d_G, vertex -> point <= 1.
  const int upper = 2 + gap;
  const int radius = upper + 1;
  // An explicit cap is hard; the default one doubles whenever a chain cut
  // off by it could still beat the incumbent.
  const bool soft_cap = !options.max_chain_length;
  int max_len = options.max_chain_length.value_or(2 * upper + 3);
  if (max_len < 1) throw Error(ErrorCode::InvalidParameters, "max_chain_length must be >= 1");

  // Every point of a path of length <= U stays within d_G distance U of
  // supp(x), so its carriers lie in the ball of radius U + 1.
  std::vector<bool> in_ball(k.vertex_count(), false);
  for (std::uint32_t z = 0; z < k.vertex_count(); ++z)
    for (VertexId u : sx)
      if (word_(u, VertexId{z}) <= radius) in_ball[z] = true;
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < k.maximal_simplices().size(); ++i) {
    const auto& s = k.maximal_simplices()[i];
    if (std::all_of(s.begin(), s.end(), [&](VertexId v) { return in_ball[v.index]; })) candidates.push_back(i);
  }

  PathResult result;
  double incumbent = kInf;
  if (options.use_shortcuts) {
    result.witness = routing_path(x, y);
    incumbent = result.witness.length;
  }
  double unresolved = kInf;  // smallest bound among nodes cut off by the depth cap

  // Best-first over partial chains, keyed by the relaxed value: every
  // completion of a chain costs at least its bound, so the search stops once
  // the cheapest open chain cannot beat the incumbent.
  struct Node {
    double bound;
    std::size_t order;  // insertion order breaks ties deterministically
    std::vector<std::size_t> chain;
    bool operator>(const Node& o) const { return bound != o.bound ? bound > o.bound : order > o.order; }
  };
  std::priority_queue<Node, std::vector<Node>, std::greater<>> open;
  std::vector<Node> deferred;  // children past a soft cap
  std::size_t pushed = 0;
  std::vector<Simplex> chain;

  auto load = [&](const std::vector<std::size_t>& indices) {
    chain.clear();
    for (std::size_t i : indices) chain.push_back(k.maximal_simplices()[i]);
  };
  auto chain_bound = [&] {
    if (++result.nodes > options.max_nodes)
      throw Error(ErrorCode::ChainBudgetExceeded, "node budget of " + std::to_string(options.max_nodes) +
                                                      " exhausted before optimality was proven");
    return solve_or_throw(build_chain_program(chain, x, y, &word_).program).value;
  };

  for (std::size_t c : candidates) {
    if (!k.maximal_simplices()[c].contains(sx)) continue;
    load({c});
    const double b = chain_bound();
    if (b < incumbent - kImprovement) open.push({b, pushed++, {c}});
  }

  for (;;) {
    if (open.empty() || open.top().bound >= incumbent - kImprovement) {
      std::erase_if(deferred, [&](const Node& n) { return n.bound >= incumbent - kImprovement; });
      if (deferred.empty()) break;
      max_len *= 2;
      for (auto& n : deferred) open.push(std::move(n));
      deferred.clear();
      continue;
    }
    const Node node = open.top();
    open.pop();
    load(node.chain);
    if (chain.back().contains(sy)) {
      ChainSolution sol = chain_lp(k, chain, x, y);
      ++result.chains;
      if (sol.value < incumbent - kImprovement) {
        incumbent = sol.value;
        result.witness.points = std::move(sol.points);
        result.witness.carriers = chain;
        result.witness.length = path_length(k, result.witness.points, result.witness.carriers);
      }
      if (node.bound >= incumbent - kImprovement) continue;
    }

    const Simplex last = chain.back();
    for (std::size_t c : candidates) {
      const Simplex& next = k.maximal_simplices()[c];
      if (next == last || !next.intersects(last)) continue;
      if (options.enumerate_simple_chains_only &&
          std::find(node.chain.begin(), node.chain.end(), c) != node.chain.end())
        continue;
      // If last ∩ next sits inside an earlier chain simplex, the breakpoint
      // is reachable from there in one segment, so the shorter chain that
      // jumps straight to next is at least as good.
      const Simplex face = last.intersected(next);
      if (std::any_of(chain.begin(), chain.end() - 1, [&](const Simplex& s) { return s.contains(face); })) continue;
      chain.push_back(next);
      const double b = chain_bound();
      chain.pop_back();
      if (b >= incumbent - kImprovement) continue;
      const bool capped = static_cast<int>(node.chain.size()) >= max_len;
      if (capped && !soft_cap) {
        unresolved = std::min(unresolved, b);
        continue;
      }
      auto extended = node.chain;
      extended.push_back(c);
      if (capped)
        deferred.push_back({b, pushed++, std::move(extended)});
      else
        open.push({b, pushed++, std::move(extended)});
    }
  }

  if (!std::isfinite(incumbent) && !std::isfinite(unresolved))
    throw Error(ErrorCode::DisconnectedComplex, "no chain of simplices joins the two points");
  if (unresolved < incumbent - kImprovement)
    throw Error(ErrorCode::ChainBudgetExceeded, "chains longer than " + std::to_string(max_len) +
                                                    " could still improve the distance; raise max_chain_length");
  result.value = incumbent;
  return result;
}

PathResult PathMetric::distance(const BarycentricPoint& x0, const BarycentricPoint& y0,
                                const PathOptions& options) const {
  // Canonical argument order keeps d_X(x,y) and d_X(y,x) bitwise equal.
  const bool swapped = y0 < x0;
  const BarycentricPoint& x = swapped ? y0 : x0;
  const BarycentricPoint& y = swapped ? x0 : y0;

  PathResult result;
  if (x == y) {
    result.witness.points = {x};
  } else if (auto s = options.use_shortcuts ? common_simplex(*complex_, x, y) : std::nullopt) {
    result.value = half_l1(x, y);
    result.witness.points = {x, y};
    result.witness.carriers = {*s};
    result.witness.length = result.value;
  } else if (options.use_shortcuts && x.is_vertex() && y.is_vertex()) {
    result.witness = routing_path(x, y);
    result.value = word_(*x.as_vertex(), *y.as_vertex());
  } else {
    result = search(x, y, options);
  }

  if (std::abs(result.witness.length - result.value) > kTolerance)
    throw Error(ErrorCode::InternalInconsistency, "witness length " + std::to_string(result.witness.length) +
                                                      " differs from value " + std::to_string(result.value));
  for (const auto& lb : lower_bounds(x, y)) {
    if (result.value < lb.value - kTolerance)
      throw Error(ErrorCode::InternalInconsistency, "path distance " + std::to_string(result.value) + " below " +
                                                        lb.name + " bound " + std::to_string(lb.value));
  }
  if (swapped) result.witness = reversed(std::move(result.witness));
  return result;
}

PathResult l1_path_distance(std::shared_ptr<const SimplicialComplex> complex, const BarycentricPoint& x,
                            const BarycentricPoint& y, const PathOptions& options) {
  return PathMetric(std::move(complex)).distance(x, y, options);
}

}  // namespace metext
