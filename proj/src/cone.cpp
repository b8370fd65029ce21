#include "moritoric/cone.hpp"

#include <algorithm>
#include <set>

#include "moritoric/simplex.hpp"

namespace moritoric::cone {

namespace {

std::vector<RationalVector> as_rational(std::span<const LatticeVector> gens) {
  std::vector<RationalVector> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(to_rational(g));
  return out;
}

std::size_t ambient(std::span<const LatticeVector> gens) { return gens.empty() ? 0 : gens.front().size(); }

RationalMatrix rows_of(std::span<const LatticeVector> gens, std::span<const std::size_t> pick, std::size_t n) {
  RationalMatrix m(pick.size(), n);
  for (std::size_t i = 0; i < pick.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = gens[pick[i]][j];
  return m;
}

// Calls visit on every k-subset of {0..n-1} in lexicographic order.
template <class Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(std::span<const std::size_t>(idx));
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::size_t dimension(std::span<const LatticeVector> generators) {
  if (generators.empty()) return 0;
  return rank(matrix_from_rows(generators, ambient(generators)));
}

bool is_strongly_convex(std::span<const LatticeVector> generators) {
  const std::size_t k = generators.size();
  if (k == 0) return true;
  const std::size_t n = ambient(generators);
  if (dimension(generators) == k) return true;
  // feasible {lambda >= 0, sum lambda = 1, sum lambda_i g_i = 0} means a line
  LinearProgram lp(k);
  for (std::size_t c = 0; c < n; ++c) {
    RationalVector row(k);
    for (std::size_t i = 0; i < k; ++i) row[i] = generators[i][c];
    lp.add_constraint(std::move(row), Relation::Equal, 0);
  }
  lp.add_constraint(RationalVector(k, Rational(1)), Relation::Equal, 1);
  return lp.solve().status == LpStatus::Infeasible;
}

bool is_extreme(std::span<const LatticeVector> generators, std::size_t i) {
  std::vector<RationalVector> others;
  for (std::size_t j = 0; j < generators.size(); ++j)
    if (j != i) others.push_back(to_rational(generators[j]));
  return !in_conic_hull(others, to_rational(generators[i]));
}

bool contains(std::span<const LatticeVector> generators, std::span<const Integer> point) {
  auto gens = as_rational(generators);
  return in_conic_hull(gens, to_rational(point));
}

std::vector<Facet> facets(std::span<const LatticeVector> generators) {
  std::vector<Facet> out;
  const std::size_t k = generators.size();
  if (k == 0) return out;
  const std::size_t n = ambient(generators);
  const std::size_t d = dimension(generators);
  if (d == 0) return out;
  std::set<std::vector<std::size_t>> seen;

  for_each_subset(k, d - 1, [&](std::span<const std::size_t> subset) {
    RationalMatrix sub = rows_of(generators, subset, n);
    if (rank(sub) != d - 1) return;
    // any functional vanishing on the subset but not on the whole cone
    RationalVector normal;
    for (auto& b : null_space(sub)) {
      bool nonzero = std::any_of(generators.begin(), generators.end(),
                                 [&](const LatticeVector& g) { return dot(b, g) != 0; });
      if (nonzero) {
        normal = std::move(b);
        break;
      }
    }
    if (normal.empty()) return;
    int sign = 0;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < k; ++i) {
      Rational v = dot(normal, generators[i]);
      if (v == 0) {
        members.push_back(i);
        continue;
      }
      int s = v > 0 ? 1 : -1;
      if (sign == 0) sign = s;
      if (s != sign) return;
    }
    if (!seen.insert(members).second) return;
    LatticeVector integral = primitive_integer_multiple(normal);
    if (sign < 0)
      for (auto& x : integral) x = -x;
    out.push_back({std::move(members), std::move(integral)});
  });
  return out;
}

bool intersect_in_common_face(std::span<const LatticeVector> a, std::span<const LatticeVector> b,
                              std::span<const std::size_t> common_a, std::span<const std::size_t> common_b) {
  const std::size_t n = a.empty() ? ambient(b) : ambient(a);
  auto in = [](std::span<const std::size_t> list, std::size_t i) {
    return std::find(list.begin(), list.end(), i) != list.end();
  };
  // variables: m_0..m_{n-1}, t
  LinearProgram lp(n + 1);
  for (std::size_t j = 0; j <= n; ++j) lp.set_free(j);
  bool strict = false;
  auto functional_row = [&](const LatticeVector& v, int sign, int t_coeff) {
    RationalVector row(n + 1);
    for (std::size_t j = 0; j < n; ++j) row[j] = sign * v[j];
    row[n] = t_coeff;
    return row;
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (in(common_a, i)) {
      lp.add_constraint(functional_row(a[i], 1, 0), Relation::Equal, 0);
    } else {
      lp.add_constraint(functional_row(a[i], 1, -1), Relation::GreaterEqual, 0);
      strict = true;
    }
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (in(common_b, i)) {
      lp.add_constraint(functional_row(b[i], 1, 0), Relation::Equal, 0);
    } else {
      lp.add_constraint(functional_row(b[i], -1, -1), Relation::GreaterEqual, 0);
      strict = true;
    }
  }
  if (!strict) return true;
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector row(n + 1);
    row[j] = 1;
    lp.add_constraint(row, Relation::LessEqual, 1);
    lp.add_constraint(row, Relation::GreaterEqual, -1);
  }
  RationalVector t_row(n + 1);
  t_row[n] = 1;
  lp.add_constraint(t_row, Relation::LessEqual, 1);
  lp.set_objective(t_row);
  auto sol = lp.solve();
  return sol.status == LpStatus::Optimal && sol.objective > 0;
}

std::vector<RationalVector> lineality_space(std::span<const LatticeVector> generators, std::size_t ambient_dim) {
  std::vector<LatticeVector> inside;
  for (const auto& g : generators) {
    LatticeVector neg(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) neg[j] = -g[j];
    if (contains(generators, neg)) inside.push_back(g);
  }
  std::vector<RationalVector> basis;
  if (inside.empty()) return basis;
  auto ech = row_reduce(to_rational(matrix_from_rows(inside, ambient_dim)));
  for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) basis.push_back(ech.reduced.row_vector(r));
  return basis;
}

}  // namespace moritoric::cone
