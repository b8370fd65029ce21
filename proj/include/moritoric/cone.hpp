#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "moritoric/lattice.hpp"

// Exact polyhedral algebra on finitely generated rational cones. A cone is
// passed as the list of its generators; positions in that list identify rays.
namespace moritoric::cone {

std::size_t dimension(std::span<const LatticeVector> generators);

/// Contains no line: no nontrivial nonnegative combination of generators is 0.
bool is_strongly_convex(std::span<const LatticeVector> generators);

/// generators[i] is not in the cone spanned by the others.
bool is_extreme(std::span<const LatticeVector> generators, std::size_t i);

bool contains(std::span<const LatticeVector> generators, std::span<const Integer> point);

struct Facet {
  std::vector<std::size_t> members;  // positions of generators on the facet
  LatticeVector normal;              // nonnegative on the cone, zero on the facet
};

/// Facets by rank tests over (dim - 1)-subsets. Works for cones with
/// lineality as well; a cone equal to its own span has no facets.
std::vector<Facet> facets(std::span<const LatticeVector> generators);

/// True iff cone(a) ∩ cone(b) = cone(a[i] for i in common_a) is a face of both,
/// where common_a / common_b list the positions of the shared generators.
/// Decided by an exact separating-hyperplane LP.
bool intersect_in_common_face(std::span<const LatticeVector> a, std::span<const LatticeVector> b,
                              std::span<const std::size_t> common_a, std::span<const std::size_t> common_b);

/// Basis (rows) of the lineality space cone ∩ (-cone) as a rational subspace.
std::vector<RationalVector> lineality_space(std::span<const LatticeVector> generators, std::size_t ambient_dim);

}  // namespace moritoric::cone
