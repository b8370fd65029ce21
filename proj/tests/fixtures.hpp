#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "moritoric/constructions.hpp"
#include "moritoric/divisor.hpp"
#include "moritoric/error.hpp"
#include "moritoric/fan.hpp"
#include "moritoric/mori.hpp"

namespace fixtures {

using namespace moritoric;

template <class F>
std::optional<ErrorKind> thrown_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

inline Fan p2() { return projective_space(2); }

// u1, u2, u3, u4 = (1,0), (0,1), (-1,-1), (1,1): P^2 blown up at a fixed point.
inline Fan f1() {
  return Fan(2, {{1, 0}, {0, 1}, {-1, -1}, {1, 1}}, {{0, 3}, {3, 1}, {1, 2}, {2, 0}}, "F_1");
}

inline Fan f2() { return hirzebruch(2); }

inline Fan p1xp1() { return product(projective_space(1), projective_space(1)); }

// f_1, f_2, f_3 = (1,1), (-1,1), (0,-1)
inline Fan p112() { return Fan(2, {{1, 1}, {-1, 1}, {0, -1}}, {{0, 1}, {1, 2}, {0, 2}}, "P(1,1,2)"); }

inline Fan fake_p2() { return fano_rho_one({{1, 0}, {1, 3}, {-2, -3}}).fan; }

// Two cones overlapping in a 2-dimensional region.
inline Fan overlapping() { return Fan(2, {{1, 0}, {0, 1}, {1, 1}}, {{0, 1}, {0, 2}}, "overlap"); }

// Complete simplicial 3-fold fan without a strictly convex support function:
// an inner triangle B twisted against an outer triangle A over the plane z = 1,
// closed off below by a single ray.
inline Fan non_projective() {
  std::vector<LatticeVector> rays = {{4, -2, 1}, {-2, 4, 1}, {-2, -2, 1}, {2, -1, 1},
                                     {-1, 2, 1}, {-1, -1, 1}, {0, 0, -1}};
  enum { A1, A2, A3, B1, B2, B3, Bottom };
  std::vector<Cone> cones = {{A1, A2, B2}, {A1, B2, B1}, {A2, A3, B3},     {A2, B3, B2},     {A3, A1, B1},
                             {A3, B1, B3}, {B1, B2, B3}, {A1, A2, Bottom}, {A2, A3, Bottom}, {A3, A1, Bottom}};
  return Fan(3, std::move(rays), std::move(cones), "non-projective");
}

inline Wall find_wall(const Fan& f, const Cone& tau) {
  for (const auto& w : walls(f))
    if (w.tau == tau) return w;
  throw std::runtime_error("no such wall");
}

inline std::size_t wall_index(const std::vector<Wall>& ws, const Cone& tau) {
  for (std::size_t i = 0; i < ws.size(); ++i)
    if (ws[i].tau == tau) return i;
  throw std::runtime_error("no such wall");
}

inline ToricDivisor divisor(std::vector<Rational> c) { return ToricDivisor(std::move(c)); }

inline ToricDivisor anticanonical(const Fan& f) { return Rational(-1) * canonical_divisor(f); }

// Complete simplicial fixtures used by the structural property tests.
inline std::vector<Fan> simplicial_fixtures() {
  std::vector<Fan> out = {projective_space(1), p2(), projective_space(3), f1(), f2(), hirzebruch(3), p1xp1(),
                          p112(), fake_p2(), product(p2(), projective_space(1))};
  for (auto w : std::vector<std::vector<Integer>>{{1, 2, 3}, {2, 3, 4}, {1, 1, 2, 3}, {2, 2, 3, 3}, {1, 2, 2, 3, 3}})
    out.push_back(weighted_projective(w));
  out.push_back(qfactorialize(cube_fan(), 0).fan);
  return out;
}

}  // namespace fixtures
