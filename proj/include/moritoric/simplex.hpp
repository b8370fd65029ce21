#pragma once

#include <cstddef>
#include <vector>

#include "moritoric/lattice.hpp"

namespace moritoric {

enum class Relation { LessEqual, Equal, GreaterEqual };

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;
  RationalVector values;  // one entry per declared variable
};

/// Exact two-phase tableau simplex over Q with Bland's anti-cycling rule.
/// Variables are nonnegative unless declared free.
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t num_vars);

  std::size_t num_vars() const { return num_vars_; }

  void set_free(std::size_t var);
  void add_constraint(RationalVector coeffs, Relation rel, Rational rhs);
  /// Objective to maximize; defaults to zero (pure feasibility).
  void set_objective(RationalVector coeffs);

  LpSolution solve() const;

 private:
  struct Row {
    RationalVector coeffs;
    Relation rel;
    Rational rhs;
  };

  std::size_t num_vars_;
  std::vector<bool> free_;
  std::vector<Row> rows_;
  RationalVector objective_;
};

/// True iff target lies in the cone generated by the given vectors (all of the
/// same length).
bool in_conic_hull(std::span<const RationalVector> generators, std::span<const Rational> target);

}  // namespace moritoric
