#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "moritoric/fan.hpp"
#include "moritoric/lattice.hpp"

namespace moritoric {

/// Rays e_1, ..., e_n, -(e_1 + ... + e_n); maximal cones are the n-subsets.
Fan projective_space(std::size_t n);

/// P(w) on N = Z^(n+1) / saturation(Z w). Rays are the primitive images of
/// the standard basis in input order; maximal cones are the n-subsets.
/// Throws InvalidInput for fewer than two weights or a non-positive weight.
Fan weighted_projective(const std::vector<Integer>& weights);

/// c_i = u_i w_i / gcd_j(u_j w_j), where u_i is the index of the image of
/// e_i over its primitive generator. Aligned with the input order.
std::vector<Integer> well_formed_weights(const std::vector<Integer>& weights);

/// well_formed_weights sorted ascending.
std::vector<Integer> normalize_weights(const std::vector<Integer>& weights);

/// The wall <f_1, ..., f_(n-1)> of weighted_projective(weights) after
/// ordering the rays by ascending well-formed weight (ties by input order).
Cone wps_distinguished_wall(const std::vector<Integer>& weights);

struct FanoRhoOne {
  Fan fan;
  LatticeVector relation;  // a_i > 0 with sum a_i v_i = 0, gcd 1
};

/// Complete simplicial fan with maximal cones omitting one vector each.
/// Throws BadConfiguration.
FanoRhoOne fano_rho_one(const std::vector<LatticeVector>& vectors);

/// Rays (1,0), (0,1), (-1,a), (0,-1).
Fan hirzebruch(long a);
Fan product(const Fan& f, const Fan& g);
/// Rays (+-1, +-1, +-1), one non-simplicial cone per face of the cube.
Fan cube_fan();

/// Complete simplicial projective fan from a seeded regular triangulation.
/// dim in {2, 3, 4}, ray_budget >= dim + 1. Throws InvalidInput.
Fan random_complete_fan(std::size_t dim, std::size_t ray_budget, std::uint64_t seed);

/// Random complete simplicial fan with dim + 1 rays; roughly one in four is
/// a unimodular image of P^n.
FanoRhoOne random_fano_rho_one(std::size_t dim, std::uint64_t seed);

/// A random complete fan (dim 3 or 4) in which some pairs of adjacent
/// simplicial cones are merged into non-simplicial bipyramids.
Fan random_coarsening(std::size_t dim, std::size_t ray_budget, std::uint64_t seed);

/// Per non-simplicial cone of the input: the new cells subdividing it and a
/// functional per cell with <m, u> = heights[u] on the cell's rays and
/// <m, u> < heights[u] on the other rays of the cone.
struct CellCertificate {
  std::size_t original_cone;
  std::vector<std::size_t> cells;
  std::vector<RationalVector> functionals;
};

struct RelativeCertificate {
  LatticeVector heights;
  std::vector<CellCertificate> cones;
};

struct QFactorialization {
  Fan fan;
  RelativeCertificate certificate;
};

/// Small projective Q-factorialization by a regular subdivision of every
/// non-simplicial cone. Simplicial cones are kept in place; the cells of a
/// subdivided cone follow in lexicographic order. Throws InvalidFan,
/// GenericityFailure.
QFactorialization qfactorialize(const Fan& f, std::uint64_t seed);

bool verify_relative_certificate(const Fan& original, const QFactorialization& q);

/// Heights H(seed, ray, attempt) in [1, 2^16].
Integer lifting_height(std::uint64_t seed, std::size_t ray, std::size_t attempt);

/// Exists A in GL(n, Z) mapping rays bijectively onto rays and cones onto
/// cones.
bool lattice_isomorphic(const Fan& f, const Fan& g);

}  // namespace moritoric
