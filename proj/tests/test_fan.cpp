#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "moritoric/cone.hpp"

using namespace moritoric;
using namespace fixtures;

namespace {

bool has_violation(const Fan& f, const std::string& kind) {
  for (const auto& v : validate_fan(f))
    if (v.kind == kind) return true;
  return false;
}

std::vector<Fan> complete_fixtures() {
  auto out = simplicial_fixtures();
  out.push_back(cube_fan());
  out.push_back(non_projective());
  return out;
}

}  // namespace

TEST_CASE("validate_fan") {
  CHECK(validate_fan(p2()).empty());

  auto problems = validate_fan(overlapping());
  REQUIRE(problems.size() == 1);
  CHECK(problems.front().kind == "intersection_not_face");
  CHECK(problems.front().message.find("intersection not a face") != std::string::npos);

  Fan doubled(2, {{2, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(has_violation(doubled, "ray_not_primitive"));

  Fan unused(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}});
  CHECK(has_violation(unused, "ray_unused"));

  Fan line(1, {{1}, {-1}}, {{0, 1}});
  CHECK(has_violation(line, "cone_not_strongly_convex"));

  Fan interior(2, {{1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}});
  CHECK(has_violation(interior, "ray_not_extreme"));

  Fan face(2, {{1, 0}, {0, 1}}, {{0, 1}, {0}});
  CHECK(has_violation(face, "cone_is_face"));

  CHECK(thrown_kind([] { Fan(2, {{1, 0}}, {{0, 1}}); }) == ErrorKind::InvalidFan);
  CHECK(thrown_kind([] { Fan(2, {{1, 0, 0}}, {{0}}); }) == ErrorKind::InvalidFan);
}

TEST_CASE("every fixture is a valid fan") {
  for (const auto& f : complete_fixtures()) {
    INFO(f.name());
    CHECK(validate_fan(f).empty());
  }
}

TEST_CASE("completeness") {
  CHECK(is_complete(p2()));
  CHECK_FALSE(is_complete(Fan(2, {{1, 0}, {0, 1}}, {{0, 1}})));
  CHECK(is_complete(cube_fan()));
  CHECK_FALSE(is_complete(Fan(2, {{1, 0}, {0, 1}, {-1, 0}}, {{0, 1}, {1, 2}})));
  CHECK(thrown_kind([] { walls(Fan(2, {{1, 0}, {0, 1}}, {{0, 1}})); }) == ErrorKind::NotComplete);
}

TEST_CASE("random directions land in the support of complete fans") {
  std::mt19937_64 gen(1000);
  for (const auto& f : complete_fixtures()) {
    INFO(f.name());
    const std::size_t n = f.dim();
    for (int sample = 0; sample < 1000; ++sample) {
      LatticeVector v(n);
      for (auto& x : v) x = static_cast<long>(gen() % 101) - 50;
      if (is_zero(v)) continue;
      std::vector<std::size_t> owners;
      for (std::size_t c = 0; c < f.num_cones(); ++c)
        if (cone_contains(f, f.cone(c), v)) owners.push_back(c);
      CHECK(!owners.empty());
      if (owners.size() > 1) {
        // on the boundary: v lies on a facet hyperplane of its cone
        auto facets = cone::facets(f.generators(f.cone(owners.front())));
        bool on_boundary = false;
        for (const auto& fc : facets) on_boundary = on_boundary || dot(fc.normal, v) == 0;
        CHECK(on_boundary);
      }
    }
  }
}

TEST_CASE("simplicial, smooth and multiplicity") {
  CHECK(is_simplicial(p2()));
  CHECK(is_smooth(p2()));
  CHECK_FALSE(is_simplicial(cube_fan()));
  CHECK_FALSE(is_smooth(cube_fan()));
  CHECK(is_simplicial(p112()));
  CHECK_FALSE(is_smooth(p112()));

  CHECK(multiplicity(p2(), Cone{0, 1}) == 1);
  CHECK(multiplicity(p112(), Cone{0, 1}) == 2);
  CHECK(multiplicity(fake_p2(), Cone{0, 1}) == 3);
  CHECK(multiplicity(p2(), Cone{}) == 1);
  CHECK(thrown_kind([] { multiplicity(cube_fan(), cube_fan().cone(0)); }) == ErrorKind::NonSimplicialCone);
}

TEST_CASE("walls") {
  CHECK(walls(p2()).size() == 3);
  CHECK(walls(f1()).size() == 4);
  CHECK(walls(cube_fan()).size() == 12);
  for (const auto& f : complete_fixtures()) {
    INFO(f.name());
    std::size_t facet_total = 0;
    for (const auto& c : f.cones()) facet_total += cone_facets(f, c).size();
    auto ws = walls(f);
    CHECK(ws.size() * 2 == facet_total);
    for (const auto& w : ws) {
      CHECK(w.left < w.right);
      CHECK(f.cone(w.left).intersect(f.cone(w.right)) == w.tau);
      CHECK(cone_dimension(f, w.tau) + 1 == f.dim());
    }
  }
}

TEST_CASE("refinements") {
  CHECK(refines(p2(), p2()));
  CHECK(refines(f1(), p2()));
  CHECK_FALSE(refines(p2(), f1()));
  CHECK_FALSE(refines(Fan(2, {{1, 0}, {0, 1}}, {{0, 1}}), p2()));

  // P^2 <- F_1 <- F_1 blown up once more between u1 and u4
  Fan finer(2, {{1, 0}, {0, 1}, {-1, -1}, {1, 1}, {2, 1}}, {{0, 4}, {4, 3}, {3, 1}, {1, 2}, {2, 0}});
  CHECK(refines(finer, f1()));
  CHECK(refines(finer, p2()));
  for (const auto& f : complete_fixtures()) CHECK(refines(f, f));
  auto cube_q = qfactorialize(cube_fan(), 3).fan;
  CHECK(refines(cube_q, cube_fan()));
  CHECK_FALSE(refines(cube_fan(), cube_q));
}

TEST_CASE("projectivity") {
  auto cert = is_projective(p2());
  REQUIRE(cert);
  CHECK(verify_projectivity_certificate(p2(), *cert));
  auto cube_cert = is_projective(cube_fan());
  REQUIRE(cube_cert);
  CHECK(verify_projectivity_certificate(cube_fan(), *cube_cert));
  for (const auto& f : simplicial_fixtures()) {
    INFO(f.name());
    auto c = is_projective(f);
    REQUIRE(c);
    CHECK(verify_projectivity_certificate(f, *c));
  }
  CHECK_FALSE(is_projective(non_projective()));
}

namespace {

// Number of height vectors in {-2, ..., 2}^rays whose piecewise-linear
// interpolation is strictly convex across every wall (simplicial 3-fans).
long small_certificates(const Fan& f) {
  auto ws = walls(f);
  std::vector<RationalMatrix> inverse;  // functional of a cone as a linear map of its heights
  for (const auto& c : f.cones()) {
    RationalMatrix m(3, 3);
    std::size_t i = 0;
    for (auto r : c) {
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = f.ray(r)[j];
      ++i;
    }
    RationalMatrix inv(3, 3);
    for (std::size_t k = 0; k < 3; ++k) {
      RationalVector e(3);
      e[k] = 1;
      auto col = solve_rational(m, e)->particular;
      for (std::size_t j = 0; j < 3; ++j) inv(j, k) = col[j];
    }
    inverse.push_back(inv);
  }
  const std::size_t r = f.num_rays();
  std::vector<long> h(r, -2);
  long found = 0;
  while (true) {
    std::vector<RationalVector> m;
    for (std::size_t c = 0; c < f.num_cones(); ++c) {
      RationalVector hs;
      for (auto ray : f.cone(c)) hs.push_back(h[ray]);
      RationalVector mc(3);
      for (std::size_t j = 0; j < 3; ++j) mc[j] = dot(inverse[c].row(j), std::span<const Rational>(hs));
      m.push_back(mc);
    }
    bool convex = true;
    for (const auto& w : ws) {
      auto u = f.cone(w.right).minus(w.tau).front();
      if (!(dot(m[w.left], f.ray(u)) < h[u])) {
        convex = false;
        break;
      }
    }
    if (convex) ++found;
    std::size_t k = 0;
    while (k < r && h[k] == 2) h[k++] = -2;
    if (k == r) break;
    ++h[k];
  }
  return found;
}

}  // namespace

TEST_CASE("exhaustive search over small certificates") {
  CHECK(small_certificates(projective_space(3)) > 0);
  CHECK(small_certificates(non_projective()) == 0);
}

TEST_CASE("projective space recognition") {
  CHECK(is_projective_space(p2()));
  CHECK(is_projective_space(projective_space(3)));
  CHECK_FALSE(is_projective_space(fake_p2()));
  CHECK_FALSE(is_projective_space(f1()));
  CHECK_FALSE(is_projective_space(p112()));
  CHECK(is_projective_space(weighted_projective({2, 2, 2})));
}
