#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "moritoric/lattice.hpp"

namespace moritoric {

/// A cone of a fan, named by the sorted set of indices of its rays. The empty
/// set is the zero cone.
class Cone {
 public:
  Cone() = default;
  Cone(std::initializer_list<std::size_t> rays);
  explicit Cone(std::vector<std::size_t> rays);

  const std::vector<std::size_t>& rays() const { return rays_; }
  std::size_t size() const { return rays_.size(); }
  bool empty() const { return rays_.empty(); }
  bool contains(std::size_t ray) const;

  Cone intersect(const Cone& other) const;
  bool is_subset_of(const Cone& other) const;
  /// Ray indices of this cone that are not in other.
  std::vector<std::size_t> minus(const Cone& other) const;

  auto begin() const { return rays_.begin(); }
  auto end() const { return rays_.end(); }

  friend auto operator<=>(const Cone&, const Cone&) = default;

 private:
  std::vector<std::size_t> rays_;
};

/// X(Δ): primitive rays of N = Z^dim and the maximal cones. Fans are values;
/// ray order is significant and preserved.
class Fan {
 public:
  /// Checks shapes and index ranges only; geometric axioms are reported by
  /// validate_fan. Throws InvalidFan.
  Fan(std::size_t dim, std::vector<LatticeVector> rays, std::vector<Cone> cones, std::string name = {});

  std::size_t dim() const { return dim_; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const LatticeVector& ray(std::size_t i) const { return rays_.at(i); }
  std::size_t num_rays() const { return rays_.size(); }
  const std::vector<Cone>& cones() const { return cones_; }
  const Cone& cone(std::size_t i) const { return cones_.at(i); }
  std::size_t num_cones() const { return cones_.size(); }
  const std::string& name() const { return name_; }

  /// Generators of a cone, in the cone's index order.
  std::vector<LatticeVector> generators(const Cone& c) const;
  std::optional<std::size_t> find_ray(const LatticeVector& v) const;

  Fan with_name(std::string name) const;

  friend bool operator==(const Fan& a, const Fan& b) {
    return a.dim_ == b.dim_ && a.rays_ == b.rays_ && a.cones_ == b.cones_;
  }

 private:
  std::size_t dim_;
  std::vector<LatticeVector> rays_;
  std::vector<Cone> cones_;
  std::string name_;
};

struct Wall {
  Cone tau;
  std::size_t left;   // index of a maximal cone containing tau
  std::size_t right;  // index of the other one

  friend bool operator==(const Wall&, const Wall&) = default;
};

struct Violation {
  std::string kind;
  std::string message;
};

std::vector<Violation> validate_fan(const Fan& f);

std::size_t cone_dimension(const Fan& f, const Cone& c);

bool is_complete(const Fan& f);
bool is_simplicial(const Fan& f);
bool is_smooth(const Fan& f);
bool is_simplicial_cone(const Fan& f, const Cone& c);

/// Index of the sublattice spanned by the cone's rays in the saturated
/// lattice of its span. Throws NonSimplicialCone.
Integer multiplicity(const Fan& f, const Cone& c);

/// Facets of every maximal cone, each with its two adjacent maximal cones,
/// ordered by (left, facet). Throws NotComplete.
std::vector<Wall> walls(const Fan& f);

/// The facets (as ray-index cones) of a maximal cone.
std::vector<Cone> cone_facets(const Fan& f, const Cone& c);

bool cone_contains(const Fan& f, const Cone& c, const LatticeVector& point);

/// Index of some maximal cone containing the point, if any.
std::optional<std::size_t> locate(const Fan& f, const LatticeVector& point);

bool refines(const Fan& fine, const Fan& coarse);

/// A strictly convex piecewise-linear function on the fan, linear on each
/// maximal cone: <functionals[s], ray> = heights[ray] for every ray of cone s,
/// and across each wall the functional of one side lies strictly below the
/// heights on the opposite ray of the other side.
struct ProjectivityCertificate {
  RationalVector heights;
  std::vector<RationalVector> functionals;
};

/// Exact LP search for a certificate; nullopt iff the fan is not projective.
/// Throws NotComplete.
std::optional<ProjectivityCertificate> is_projective(const Fan& f);

/// Independent check of a certificate against the fan.
bool verify_projectivity_certificate(const Fan& f, const ProjectivityCertificate& cert);

bool is_projective_space(const Fan& f);

}  // namespace moritoric
