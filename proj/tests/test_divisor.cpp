#include <doctest.h>

#include <random>

#include "fixtures.hpp"

using namespace moritoric;
using namespace fixtures;

namespace {

// F_1 with one more ray (2,1) between u1 and u4.
Fan f1_blown_up() {
  return Fan(2, {{1, 0}, {0, 1}, {-1, -1}, {1, 1}, {2, 1}}, {{0, 4}, {4, 3}, {3, 1}, {1, 2}, {2, 0}}, "F_1+");
}

ToricDivisor random_boundary(std::mt19937_64& gen, std::size_t rays) {
  ToricDivisor d = ToricDivisor::zero(rays);
  for (std::size_t i = 0; i < rays; ++i) {
    long q = 1 + static_cast<long>(gen() % 6);
    d[i] = fraction(static_cast<long>(gen() % static_cast<unsigned long>(q + 1)), q);
  }
  return d;
}

}  // namespace

TEST_CASE("canonical divisor") {
  CHECK(canonical_divisor(p2()) == divisor({-1, -1, -1}));
  CHECK(canonical_divisor(f1()) == divisor({-1, -1, -1, -1}));
  CHECK(canonical_divisor(cube_fan()).coeffs == RationalVector(8, Rational(-1)));
}

TEST_CASE("Q-Cartier data") {
  Fan cube = cube_fan();
  auto data = q_cartier_data(cube, anticanonical(cube));
  REQUIRE(data);
  CHECK(data->functionals[0] == RationalVector{-1, 0, 0});
  CHECK_FALSE(q_cartier_data(cube, ToricDivisor::unit(8, 0)));
  for (const auto& f : simplicial_fixtures()) CHECK(q_cartier_data(f, ToricDivisor::unit(f.num_rays(), 0)));
  CHECK(thrown_kind([] { q_cartier_data(p2(), divisor({1, 0})); }) == ErrorKind::InvalidInput);
}

TEST_CASE("Cartier test") {
  CHECK(is_cartier(p2(), divisor({1, 0, 0})));
  CHECK_FALSE(is_cartier(p112(), divisor({1, 0, 0})));
  CHECK(is_cartier(p112(), divisor({2, 0, 0})));
  CHECK(is_cartier(cube_fan(), anticanonical(cube_fan())));
  CHECK(thrown_kind([] { is_cartier(cube_fan(), ToricDivisor::unit(8, 0)); }) == ErrorKind::NotQCartier);
}

TEST_CASE("support function is well defined") {
  std::mt19937_64 gen(5);
  for (const auto& f : simplicial_fixtures()) {
    ToricDivisor d = random_boundary(gen, f.num_rays());
    auto data = q_cartier_data(f, d);
    REQUIRE(data);
    for (std::size_t c = 0; c < f.num_cones(); ++c)
      for (auto r : f.cone(c)) CHECK(dot(data->functionals[c], f.ray(r)) == -d[r]);
    for (std::size_t r = 0; r < f.num_rays(); ++r) CHECK(support_function(f, *data, f.ray(r)) == -d[r]);
  }
}

TEST_CASE("pullback") {
  CHECK(pullback(p2(), p2(), divisor({1, 2, 3})) == divisor({1, 2, 3}));
  CHECK(pullback(p2(), f1(), divisor({1, 1, 1})) == divisor({1, 1, 1, 2}));
  auto q = qfactorialize(cube_fan(), 0).fan;
  CHECK(pullback(cube_fan(), q, anticanonical(cube_fan())).coeffs == RationalVector(8, Rational(1)));
  CHECK(thrown_kind([] { pullback(f1(), p2(), divisor({1, 1, 1, 1})); }) == ErrorKind::NotARefinement);
  CHECK(thrown_kind([&] { pullback(cube_fan(), q, ToricDivisor::unit(8, 0)); }) == ErrorKind::NotQCartier);
}

TEST_CASE("pullback is functorial") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    ToricDivisor d = random_boundary(gen, 3);
    auto direct = pullback(p2(), f1_blown_up(), d);
    auto staged = pullback(f1(), f1_blown_up(), pullback(p2(), f1(), d));
    CHECK(direct == staged);
  }
}

TEST_CASE("crepant boundary") {
  auto q = qfactorialize(cube_fan(), 0).fan;
  ToricDivisor half = ToricDivisor(RationalVector(8, Rational(1, 2)));
  CHECK(crepant_boundary(cube_fan(), q, half).divisor == half);
  CHECK(crepant_boundary(p2(), p2(), divisor({0, Rational(1, 3), 1})).divisor == divisor({0, Rational(1, 3), 1}));

  auto all_one = crepant_boundary(p2(), f1(), divisor({1, 1, 1}));
  CHECK(all_one.divisor == divisor({1, 1, 1, 1}));
  CHECK(all_one.out_of_range.empty());

  auto zero = crepant_boundary(p2(), f1(), divisor({0, 0, 0}));
  CHECK(zero.divisor == divisor({0, 0, 0, -1}));
  CHECK(zero.out_of_range == std::vector<std::size_t>{3});

  CHECK(thrown_kind([] { crepant_boundary(p2(), f1(), divisor({2, 0, 0})); }) == ErrorKind::BadBoundary);
}

TEST_CASE("crepant boundary coefficients never exceed one") {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 30; ++trial) {
    ToricDivisor d = random_boundary(gen, 3);
    auto result = crepant_boundary(p2(), f1_blown_up(), d);
    for (std::size_t r = 0; r < 3; ++r) CHECK(result.divisor[r] == d[r]);
    for (const auto& c : result.divisor.coeffs) CHECK(c <= 1);
  }
}

TEST_CASE("nef and ample") {
  CHECK(is_nef(p2(), divisor({1, 0, 0})));
  CHECK(is_ample(p2(), divisor({1, 0, 0})));
  CHECK(is_nef(f1(), anticanonical(f1())));
  CHECK(is_ample(f1(), anticanonical(f1())));
  CHECK(is_nef(f2(), anticanonical(f2())));
  CHECK_FALSE(is_ample(f2(), anticanonical(f2())));
  CHECK_FALSE(is_nef(f1(), divisor({0, 0, 0, 1})));
  CHECK(is_ample(cube_fan(), anticanonical(cube_fan())));
  CHECK(thrown_kind([] { is_nef(cube_fan(), ToricDivisor::unit(8, 0)); }) == ErrorKind::NotQCartier);
}

TEST_CASE("principal divisors are Cartier and numerically trivial") {
  std::vector<Fan> fans = simplicial_fixtures();
  fans.push_back(cube_fan());
  for (const auto& f : fans) {
    INFO(f.name());
    for (std::size_t i = 0; i < f.dim(); ++i) {
      LatticeVector m(f.dim());
      m[i] = 1;
      ToricDivisor d = principal_divisor(f, m);
      CHECK(is_cartier(f, d));
      for (const auto& x : intersect_all(f, d, walls(f))) CHECK(x == 0);
    }
  }
}
