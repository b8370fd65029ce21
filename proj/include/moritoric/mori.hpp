#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "moritoric/divisor.hpp"
#include "moritoric/fan.hpp"

namespace moritoric {

/// The linear relation among the rays of the two maximal cones adjacent to a
/// simplicial wall. Scaled so that it equals the degree vector of V(tau):
/// the coefficient at opposite_right is mult(tau) / mult(right cone).
struct WallRelation {
  Wall wall;
  RationalVector coefficients;  // indexed by ray, zero off the two cones
  std::size_t opposite_left;    // the ray of the left cone not in tau
  std::size_t opposite_right;   // the ray of the right cone not in tau
};

/// degrees[rho] = D_rho . V(tau)
struct CurveClass {
  RationalVector degrees;
};

/// Throws NonSimplicialWall.
WallRelation wall_relation(const Fan& f, const Wall& w);
CurveClass curve_class(const Fan& f, const Wall& w);

/// sum_rho d_rho * degrees[rho]. Throws NonSimplicialWall.
Rational intersect_via_relation(const Fan& f, const ToricDivisor& d, const Wall& w);

/// <m_left - m_right, v> for a lattice point v mapping to -1 in N / N_tau,
/// with the left cone on the nonnegative side.
Rational intersect_via_cartier(const Fan& f, const CartierData& data, const Wall& w);

/// Relation route when both adjacent cones are simplicial, Cartier route
/// otherwise (throws NotQCartier).
Rational intersect(const Fan& f, const ToricDivisor& d, const Wall& w);

/// D . V(tau) for every wall in order; Cartier data is solved once.
RationalVector intersect_all(const Fan& f, const ToricDivisor& d, const std::vector<Wall>& ws);

struct ExtremalRay {
  RationalVector representative;
  std::vector<std::size_t> walls;  // indices into MoriConeReport::walls
};

/// Wall classes are written as functionals on a basis of the Q-Cartier
/// divisors; for simplicial fans the basis is the standard one and a class is
/// its degree vector.
struct MoriConeReport {
  std::vector<Wall> walls;
  std::vector<RationalVector> basis;
  std::vector<RationalVector> classes;
  std::vector<ExtremalRay> extremal;
  std::size_t picard_rank = 0;

  /// D . V(tau_wall). Throws NotQCartier if D is outside the basis span.
  Rational pairing(const ToricDivisor& d, std::size_t wall) const;
  /// Coordinates of D in the basis.
  RationalVector coordinates(const ToricDivisor& d) const;
};

/// Throws NotComplete.
MoriConeReport mori_cone(const Fan& f);

/// u = s * v for some rational s > 0.
bool positively_proportional(std::span<const Rational> u, std::span<const Rational> v);

struct RayLength {
  std::size_t ray;           // index into MoriConeReport::extremal
  std::size_t witness_wall;  // wall index realizing the minimum
  Rational length;           // min over member walls of -(K+D).V(tau)
  Rational max_length;
  bool within_n_plus_one;
  bool within_n;
};

struct ConeTheoremReport {
  std::size_t dim = 0;
  std::vector<RayLength> rays;  // (K+D)-negative extremal rays
  bool exception = false;       // fan is P^n and sum d < 1
  bool holds() const;
};

/// Throws BadBoundary, NotQCartier, NotComplete.
ConeTheoremReport cone_theorem_check(const Fan& f, const ToricDivisor& d);

struct ShortWall {
  std::size_t index;  // into walls(f)
  Wall wall;
  Rational length;  // -K . V(tau)
};

/// For a Q-factorial Fano fan of Picard number one: the wall minimizing
/// -K.V(tau) (lowest index on ties) if that is <= n, nullopt iff P^n.
/// Throws NotFanoRhoOne.
std::optional<ShortWall> find_short_wall(const Fan& f);

enum class FujitaMode { Nef, Ample };

struct FujitaReport {
  FujitaMode mode = FujitaMode::Nef;
  Rational min_degree;        // min over walls of L.V(tau)
  bool hypothesis_met = false;
  bool conclusion_holds = false;  // K+D+L nef (resp. ample)
  bool exception = false;         // the P^n exception triple
  bool passed() const { return !hypothesis_met || conclusion_holds || exception; }
};

/// Throws BadBoundary, NotCartier, NotQCartier, NotComplete.
FujitaReport fujita_check(const Fan& f, const ToricDivisor& d, const ToricDivisor& l, FujitaMode mode);

/// Contracts the extremal ray with the given index of mori_cone(f).
/// Throws NotExtremal, NotComplete.
Fan contract(const Fan& f, std::size_t extremal_index);

}  // namespace moritoric
