#include "moritoric/simplex.hpp"

#include <cstdint>
#include <stdexcept>
#include <utility>

namespace moritoric {

LinearProgram::LinearProgram(std::size_t num_vars)
    : num_vars_(num_vars), free_(num_vars, false), objective_(num_vars) {}

void LinearProgram::set_free(std::size_t var) { free_.at(var) = true; }

void LinearProgram::add_constraint(RationalVector coeffs, Relation rel, Rational rhs) {
  if (coeffs.size() != num_vars_) throw std::invalid_argument("constraint length mismatch");
  rows_.push_back({std::move(coeffs), rel, std::move(rhs)});
}

void LinearProgram::set_objective(RationalVector coeffs) {
  if (coeffs.size() != num_vars_) throw std::invalid_argument("objective length mismatch");
  objective_ = std::move(coeffs);
}

namespace {

struct Tableau {
  std::vector<RationalVector> rows;  // constraint coefficients
  RationalVector rhs;
  std::vector<std::size_t> basis;
  RationalVector reduced;  // c_j - c_B B^-1 A_j
  Rational value;          // c_B B^-1 b

  void pivot(std::size_t r, std::size_t c) {
    const std::size_t width = rows[r].size();
    Rational inv = 1 / rows[r][c];
    for (std::size_t j = 0; j < width; ++j) rows[r][j] *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = 0; j < width; ++j)
        if (rows[r][j] != 0) rows[i][j] -= f * rows[r][j];
      rhs[i] -= f * rhs[r];
    }
    if (reduced[c] != 0) {
      Rational f = reduced[c];
      for (std::size_t j = 0; j < width; ++j)
        if (rows[r][j] != 0) reduced[j] -= f * rows[r][j];
      value += f * rhs[r];
    }
    basis[r] = c;
  }

  void price(const RationalVector& cost) {
    reduced = cost;
    value = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Rational& cb = cost[basis[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < reduced.size(); ++j)
        if (rows[i][j] != 0) reduced[j] -= cb * rows[i][j];
      value += cb * rhs[i];
    }
  }

  // Maximizes with Bland's rule; returns false when unbounded.
  bool optimize(std::size_t usable_cols) {
    while (true) {
      std::size_t enter = usable_cols;
      for (std::size_t j = 0; j < usable_cols; ++j)
        if (reduced[j] > 0) {
          enter = j;
          break;
        }
      if (enter == usable_cols) return true;
      std::size_t leave = rows.size();
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][enter] <= 0) continue;
        Rational ratio = rhs[i] / rows[i][enter];
        if (leave == rows.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == rows.size()) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpSolution LinearProgram::solve() const {
  // column layout: structural (free vars split in two), slacks, artificials
  std::vector<std::size_t> pos_col(num_vars_), neg_col(num_vars_, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t v = 0; v < num_vars_; ++v) {
    pos_col[v] = cols++;
    if (free_[v]) neg_col[v] = cols++;
  }
  const std::size_t structural = cols;
  std::size_t slack_count = 0;
  for (const auto& row : rows_)
    if (row.rel != Relation::Equal) ++slack_count;
  const std::size_t m = rows_.size();
  const std::size_t real_cols = structural + slack_count;
  const std::size_t total = real_cols + m;

  Tableau t;
  t.rows.assign(m, RationalVector(total));
  t.rhs.resize(m);
  t.basis.resize(m);
  std::size_t slack = structural;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = rows_[i];
    auto& tr = t.rows[i];
    for (std::size_t v = 0; v < num_vars_; ++v) {
      tr[pos_col[v]] = row.coeffs[v];
      if (free_[v]) tr[neg_col[v]] = -row.coeffs[v];
    }
    if (row.rel == Relation::LessEqual) tr[slack++] = 1;
    if (row.rel == Relation::GreaterEqual) tr[slack++] = -1;
    t.rhs[i] = row.rhs;
    if (t.rhs[i] < 0) {
      for (auto& x : tr) x = -x;
      t.rhs[i] = -t.rhs[i];
    }
    tr[real_cols + i] = 1;
    t.basis[i] = real_cols + i;
  }

  RationalVector phase1(total);
  for (std::size_t i = 0; i < m; ++i) phase1[real_cols + i] = -1;
  t.price(phase1);
  t.optimize(total);

  LpSolution out;
  if (t.value < 0) {
    out.status = LpStatus::Infeasible;
    return out;
  }

  // Drive zero-level artificials out of the basis; drop redundant rows.
  for (std::size_t i = 0; i < t.rows.size();) {
    if (t.basis[i] < real_cols) {
      ++i;
      continue;
    }
    std::size_t c = 0;
    while (c < real_cols && t.rows[i][c] == 0) ++c;
    if (c < real_cols) {
      t.pivot(i, c);
      ++i;
    } else {
      t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
      t.rhs.erase(t.rhs.begin() + static_cast<std::ptrdiff_t>(i));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
    }
  }

  RationalVector phase2(total);
  for (std::size_t v = 0; v < num_vars_; ++v) {
    phase2[pos_col[v]] = objective_[v];
    if (free_[v]) phase2[neg_col[v]] = -objective_[v];
  }
  t.price(phase2);
  if (!t.optimize(real_cols)) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  RationalVector x(total);
  for (std::size_t i = 0; i < t.rows.size(); ++i) x[t.basis[i]] = t.rhs[i];
  out.status = LpStatus::Optimal;
  out.objective = t.value;
  out.values.resize(num_vars_);
  for (std::size_t v = 0; v < num_vars_; ++v) {
    out.values[v] = x[pos_col[v]];
    if (free_[v]) out.values[v] -= x[neg_col[v]];
  }
  return out;
}

bool in_conic_hull(std::span<const RationalVector> generators, std::span<const Rational> target) {
  const std::size_t k = generators.size();
  if (k == 0) return is_zero(target);
  LinearProgram lp(k);
  for (std::size_t i = 0; i < target.size(); ++i) {
    RationalVector row(k);
    for (std::size_t j = 0; j < k; ++j) row[j] = generators[j][i];
    lp.add_constraint(std::move(row), Relation::Equal, target[i]);
  }
  return lp.solve().status == LpStatus::Optimal;
}

}  // namespace moritoric
