#pragma once

#include <cstddef>
#include <vector>

namespace metext::lp {

/// minimize cost . x  subject to  rows x = rhs,  x >= 0.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<double> cost;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;

  /// Appends a zero-cost variable block and returns the index of its first
  /// variable.
  std::size_t add_vars(std::size_t count, double c = 0.0);
  /// Appends an equality row from (variable, coefficient) terms.
  void add_row(const std::vector<std::pair<std::size_t, double>>& terms, double value);
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  double value = 0.0;
  std::vector<double> x;
};

/// Dense two-phase primal simplex with Bland's rule. Bland's rule makes the
/// pivot sequence, and therefore the returned vertex, a deterministic
/// function of the input.
Solution solve(const LinearProgram& program);

}  // namespace metext::lp
