#include "metext/lp.hpp"

#include <cmath>
#include <limits>

namespace metext::lp {

std::size_t LinearProgram::add_vars(std::size_t count, double c) {
  const std::size_t first = num_vars;
  num_vars += count;
  cost.resize(num_vars, c);
  for (auto& row : rows) row.resize(num_vars, 0.0);
  return first;
}

void LinearProgram::add_row(const std::vector<std::pair<std::size_t, double>>& terms, double value) {
  std::vector<double> row(num_vars, 0.0);
  for (const auto& [j, a] : terms) row.at(j) += a;
  rows.push_back(std::move(row));
  rhs.push_back(value);
}

namespace {

constexpr double kPivotEps = 1e-11;
constexpr double kFeasibilityEps = 1e-9;

class Tableau {
 public:
  Tableau(const LinearProgram& p)
      : m_(p.rows.size()), n_(p.num_vars), cols_(n_ + m_ + 1), t_(m_ * cols_, 0.0), obj_(cols_, 0.0), basis_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      const double sign = p.rhs[i] < 0.0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = sign * p.rows[i][j];
      at(i, n_ + i) = 1.0;
      at(i, cols_ - 1) = sign * p.rhs[i];
      basis_[i] = n_ + i;
    }
  }

  double& at(std::size_t i, std::size_t j) { return t_[i * cols_ + j]; }
  double at(std::size_t i, std::size_t j) const { return t_[i * cols_ + j]; }
  double rhs(std::size_t i) const { return at(i, cols_ - 1); }

  void set_objective(const std::vector<double>& c) {
    std::fill(obj_.begin(), obj_.end(), 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) obj_[j] = c[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = basis_[i] < c.size() ? c[basis_[i]] : 0.0;
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) obj_[j] -= cb * at(i, j);
    }
  }

  /// Runs simplex iterations over columns [0, allowed). Returns false when
  /// the objective is unbounded below.
  bool optimize(std::size_t allowed) {
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (obj_[j] < -kPivotEps) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return true;

      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = at(i, enter);
        if (a <= kPivotEps) continue;
        const double ratio = rhs(i) / a;
        // ties go to the smallest basic variable index (Bland)
        const bool better = leave == m_ || ratio < best - 1e-14 ||
                            (ratio <= best + 1e-14 && basis_[i] < basis_[leave]);
        if (better) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j < cols_; ++j) at(r, j) /= p;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) at(i, j) -= f * at(r, j);
      at(i, c) = 0.0;
    }
    const double f = obj_[c];
    if (f != 0.0) {
      for (std::size_t j = 0; j < cols_; ++j) obj_[j] -= f * at(r, j);
      obj_[c] = 0.0;
    }
    basis_[r] = c;
  }

  /// Pivots artificial variables out of the basis where possible; rows
  /// whose artificial cannot leave are redundant and get zeroed.
  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      std::size_t col = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (std::abs(at(i, j)) > kPivotEps) {
          col = j;
          break;
        }
      }
      if (col < n_) pivot(i, col);
    }
  }

  double phase_one_value() const { return -obj_[cols_ - 1]; }

  std::vector<double> primal() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = std::max(0.0, rhs(i));
    return x;
  }

  std::size_t vars() const { return n_; }

 private:
  std::size_t m_, n_, cols_;
  std::vector<double> t_;
  std::vector<double> obj_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Solution solve(const LinearProgram& program) {
  Solution out;
  Tableau tab(program);

  const std::size_t n = program.num_vars;
  const std::size_t m = program.rows.size();
  std::vector<double> phase_one(n + m, 0.0);
  for (std::size_t i = 0; i < m; ++i) phase_one[n + i] = 1.0;
  tab.set_objective(phase_one);
  tab.optimize(n + m);
  if (tab.phase_one_value() > kFeasibilityEps) {
    out.status = Status::Infeasible;
    return out;
  }
  tab.expel_artificials();

  tab.set_objective(program.cost);
  if (!tab.optimize(n)) {
    out.status = Status::Unbounded;
    return out;
  }
  out.status = Status::Optimal;
  out.x = tab.primal();
  out.value = 0.0;
  for (std::size_t j = 0; j < n; ++j) out.value += program.cost[j] * out.x[j];
  return out;
}

}  // namespace metext::lp
