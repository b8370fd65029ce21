#include <doctest.h>

#include "moritoric/simplex.hpp"

using namespace moritoric;

TEST_CASE("two-variable optimum") {
  LinearProgram lp(2);
  lp.add_constraint({1, 2}, Relation::LessEqual, 4);
  lp.add_constraint({3, 1}, Relation::LessEqual, 6);
  lp.set_objective({1, 1});
  auto s = lp.solve();
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == Rational(14, 5));
  CHECK(s.values == RationalVector{Rational(8, 5), Rational(6, 5)});
}

TEST_CASE("infeasible and unbounded programs") {
  LinearProgram infeasible(1);
  infeasible.add_constraint({1}, Relation::GreaterEqual, 2);
  infeasible.add_constraint({1}, Relation::LessEqual, 1);
  CHECK(infeasible.solve().status == LpStatus::Infeasible);

  LinearProgram unbounded(2);
  unbounded.add_constraint({1, -1}, Relation::LessEqual, 1);
  unbounded.set_objective({1, 0});
  CHECK(unbounded.solve().status == LpStatus::Unbounded);
}

TEST_CASE("free variables and equalities") {
  LinearProgram lp(2);
  lp.set_free(0);
  lp.add_constraint({1, 1}, Relation::Equal, -3);
  lp.add_constraint({0, 1}, Relation::LessEqual, 2);
  lp.set_objective({-1, 0});
  auto s = lp.solve();
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.values[0] == -5);
  CHECK(s.values[1] == 2);
  CHECK(s.objective == 5);
}

TEST_CASE("degenerate program terminates under Bland's rule") {
  // Beale's cycling example
  LinearProgram lp(4);
  lp.add_constraint({Rational(1, 4), -8, -1, 9}, Relation::LessEqual, 0);
  lp.add_constraint({Rational(1, 2), -12, Rational(-1, 2), 3}, Relation::LessEqual, 0);
  lp.add_constraint({0, 0, 1, 0}, Relation::LessEqual, 1);
  lp.set_objective({Rational(3, 4), -20, Rational(1, 2), -6});
  auto s = lp.solve();
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == Rational(5, 4));
}

TEST_CASE("redundant equality rows") {
  LinearProgram lp(2);
  lp.add_constraint({1, 1}, Relation::Equal, 2);
  lp.add_constraint({2, 2}, Relation::Equal, 4);
  lp.set_objective({1, 0});
  auto s = lp.solve();
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(s.objective == 2);
}

TEST_CASE("conic hull membership") {
  std::vector<RationalVector> gens = {{1, 0}, {1, 1}};
  CHECK(in_conic_hull(gens, RationalVector{2, 1}));
  CHECK(in_conic_hull(gens, RationalVector{0, 0}));
  CHECK_FALSE(in_conic_hull(gens, RationalVector{0, 1}));
  CHECK_FALSE(in_conic_hull(gens, RationalVector{1, -1}));
}
