#include "moritoric/fan.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "moritoric/cone.hpp"
#include "moritoric/error.hpp"
#include "moritoric/simplex.hpp"

namespace moritoric {

Cone::Cone(std::initializer_list<std::size_t> rays) : Cone(std::vector<std::size_t>(rays)) {}

Cone::Cone(std::vector<std::size_t> rays) : rays_(std::move(rays)) {
  std::sort(rays_.begin(), rays_.end());
  rays_.erase(std::unique(rays_.begin(), rays_.end()), rays_.end());
}

bool Cone::contains(std::size_t ray) const { return std::binary_search(rays_.begin(), rays_.end(), ray); }

Cone Cone::intersect(const Cone& other) const {
  std::vector<std::size_t> out;
  std::set_intersection(rays_.begin(), rays_.end(), other.rays_.begin(), other.rays_.end(),
                        std::back_inserter(out));
  return Cone(std::move(out));
}

bool Cone::is_subset_of(const Cone& other) const {
  return std::includes(other.rays_.begin(), other.rays_.end(), rays_.begin(), rays_.end());
}

std::vector<std::size_t> Cone::minus(const Cone& other) const {
  std::vector<std::size_t> out;
  std::set_difference(rays_.begin(), rays_.end(), other.rays_.begin(), other.rays_.end(),
                      std::back_inserter(out));
  return out;
}

Fan::Fan(std::size_t dim, std::vector<LatticeVector> rays, std::vector<Cone> cones, std::string name)
    : dim_(dim), rays_(std::move(rays)), cones_(std::move(cones)), name_(std::move(name)) {
  for (std::size_t i = 0; i < rays_.size(); ++i)
    if (rays_[i].size() != dim_)
      throw Error(ErrorKind::InvalidFan, "ray " + std::to_string(i) + " has the wrong length");
  for (std::size_t c = 0; c < cones_.size(); ++c)
    for (auto r : cones_[c])
      if (r >= rays_.size())
        throw Error(ErrorKind::InvalidFan, "cone " + std::to_string(c) + " references missing ray " +
                                               std::to_string(r));
}

std::vector<LatticeVector> Fan::generators(const Cone& c) const {
  std::vector<LatticeVector> out;
  out.reserve(c.size());
  for (auto r : c) out.push_back(rays_.at(r));
  return out;
}

std::optional<std::size_t> Fan::find_ray(const LatticeVector& v) const {
  auto it = std::find(rays_.begin(), rays_.end(), v);
  if (it == rays_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - rays_.begin());
}

Fan Fan::with_name(std::string name) const { return Fan(dim_, rays_, cones_, std::move(name)); }

namespace {

std::string cone_label(std::size_t i) { return "cone " + std::to_string(i); }

std::vector<std::size_t> positions_of(const Cone& c, const Cone& sub) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < c.rays().size(); ++i)
    if (sub.contains(c.rays()[i])) out.push_back(i);
  return out;
}

}  // namespace

std::vector<Violation> validate_fan(const Fan& f) {
  std::vector<Violation> out;
  const auto& rays = f.rays();
  bool rays_ok = true;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (is_zero(rays[i])) {
      out.push_back({"ray_zero", "ray " + std::to_string(i) + " is zero"});
      rays_ok = false;
    } else if (!is_primitive(rays[i])) {
      out.push_back({"ray_not_primitive", "ray " + std::to_string(i) + " not primitive"});
    }
    for (std::size_t j = i + 1; j < rays.size(); ++j)
      if (rays[i] == rays[j])
        out.push_back({"duplicate_ray", "rays " + std::to_string(i) + " and " + std::to_string(j) + " coincide"});
  }
  std::vector<bool> used(rays.size(), false);
  for (const auto& c : f.cones())
    for (auto r : c) used[r] = true;
  for (std::size_t i = 0; i < rays.size(); ++i)
    if (!used[i]) out.push_back({"ray_unused", "ray " + std::to_string(i) + " is in no maximal cone"});
  if (f.cones().empty()) out.push_back({"no_cones", "fan has no maximal cones"});
  if (!rays_ok) return out;

  std::vector<bool> cone_ok(f.num_cones(), true);
  for (std::size_t c = 0; c < f.num_cones(); ++c) {
    auto gens = f.generators(f.cone(c));
    if (!cone::is_strongly_convex(gens)) {
      out.push_back({"cone_not_strongly_convex", cone_label(c) + " contains a line"});
      cone_ok[c] = false;
      continue;
    }
    if (cone::dimension(gens) == gens.size()) continue;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (!cone::is_extreme(gens, i)) {
        out.push_back({"ray_not_extreme", "ray " + std::to_string(f.cone(c).rays()[i]) + " is not an extreme ray of " +
                                              cone_label(c)});
        cone_ok[c] = false;
      }
  }

  for (std::size_t a = 0; a < f.num_cones(); ++a)
    for (std::size_t b = a + 1; b < f.num_cones(); ++b) {
      const Cone& ca = f.cone(a);
      const Cone& cb = f.cone(b);
      std::string pair = cone_label(a) + " and " + cone_label(b);
      if (ca == cb) {
        out.push_back({"duplicate_cone", pair + " are identical"});
        continue;
      }
      if (ca.is_subset_of(cb) || cb.is_subset_of(ca)) {
        out.push_back({"cone_is_face", pair + ": one maximal cone is a face of the other"});
        continue;
      }
      if (!cone_ok[a] || !cone_ok[b]) continue;
      Cone common = ca.intersect(cb);
      auto pa = positions_of(ca, common);
      auto pb = positions_of(cb, common);
      if (!cone::intersect_in_common_face(f.generators(ca), f.generators(cb), pa, pb))
        out.push_back({"intersection_not_face", pair + ": intersection not a face"});
    }
  return out;
}

std::size_t cone_dimension(const Fan& f, const Cone& c) { return cone::dimension(f.generators(c)); }

bool is_simplicial_cone(const Fan& f, const Cone& c) { return cone_dimension(f, c) == c.size(); }

bool is_simplicial(const Fan& f) {
  return std::all_of(f.cones().begin(), f.cones().end(), [&](const Cone& c) { return is_simplicial_cone(f, c); });
}

Integer multiplicity(const Fan& f, const Cone& c) {
  if (!is_simplicial_cone(f, c)) throw Error(ErrorKind::NonSimplicialCone, "multiplicity needs a simplicial cone");
  if (c.empty()) return 1;
  auto gens = f.generators(c);
  return sublattice_index(matrix_from_rows(gens, f.dim()));
}

bool is_smooth(const Fan& f) {
  if (!is_simplicial(f)) return false;
  return std::all_of(f.cones().begin(), f.cones().end(), [&](const Cone& c) { return multiplicity(f, c) == 1; });
}

std::vector<Cone> cone_facets(const Fan& f, const Cone& c) {
  std::vector<Cone> out;
  auto gens = f.generators(c);
  if (cone::dimension(gens) == gens.size()) {
    for (auto r : c) {
      std::vector<std::size_t> rest;
      for (auto s : c)
        if (s != r) rest.push_back(s);
      out.emplace_back(std::move(rest));
    }
  } else {
    for (const auto& facet : cone::facets(gens)) {
      std::vector<std::size_t> idx;
      for (auto p : facet.members) idx.push_back(c.rays()[p]);
      out.emplace_back(std::move(idx));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::map<Cone, std::vector<std::size_t>> facet_incidence(const Fan& f) {
  std::map<Cone, std::vector<std::size_t>> incidence;
  for (std::size_t c = 0; c < f.num_cones(); ++c)
    for (auto& facet : cone_facets(f, f.cone(c))) incidence[facet].push_back(c);
  return incidence;
}

}  // namespace

bool is_complete(const Fan& f) {
  if (f.cones().empty()) return false;
  for (const auto& c : f.cones())
    if (cone_dimension(f, c) != f.dim()) return false;
  for (const auto& [facet, owners] : facet_incidence(f))
    if (owners.size() != 2) return false;
  return true;
}

std::vector<Wall> walls(const Fan& f) {
  if (!is_complete(f)) throw Error(ErrorKind::NotComplete, "walls need a complete fan");
  auto incidence = facet_incidence(f);
  std::vector<Wall> out;
  for (std::size_t c = 0; c < f.num_cones(); ++c)
    for (auto& facet : cone_facets(f, f.cone(c))) {
      const auto& owners = incidence.at(facet);
      std::size_t other = owners[0] == c ? owners[1] : owners[0];
      if (other > c) out.push_back({facet, c, other});
    }
  return out;
}

bool cone_contains(const Fan& f, const Cone& c, const LatticeVector& point) {
  return cone::contains(f.generators(c), point);
}

std::optional<std::size_t> locate(const Fan& f, const LatticeVector& point) {
  for (std::size_t c = 0; c < f.num_cones(); ++c)
    if (cone_contains(f, f.cone(c), point)) return c;
  return std::nullopt;
}

bool refines(const Fan& fine, const Fan& coarse) {
  if (fine.dim() != coarse.dim()) return false;
  // containment of every fine cone in a coarse one
  std::vector<std::size_t> home(fine.num_cones());
  for (std::size_t c = 0; c < fine.num_cones(); ++c) {
    const Cone& fc = fine.cone(c);
    bool found = false;
    for (std::size_t k = 0; k < coarse.num_cones() && !found; ++k) {
      bool inside = std::all_of(fc.begin(), fc.end(),
                                [&](std::size_t r) { return cone_contains(coarse, coarse.cone(k), fine.ray(r)); });
      if (inside) {
        home[c] = k;
        found = true;
      }
    }
    if (!found) return false;
  }
  // every coarse cone is covered by the full-dimensional fine cones inside it
  for (std::size_t k = 0; k < coarse.num_cones(); ++k) {
    const Cone& kc = coarse.cone(k);
    auto kgens = coarse.generators(kc);
    const std::size_t kdim = cone::dimension(kgens);
    auto boundary = cone::facets(kgens);
    std::vector<std::size_t> inside;
    for (std::size_t c = 0; c < fine.num_cones(); ++c) {
      const Cone& fc = fine.cone(c);
      if (cone_dimension(fine, fc) != kdim) continue;
      bool in = std::all_of(fc.begin(), fc.end(), [&](std::size_t r) { return cone_contains(coarse, kc, fine.ray(r)); });
      if (in) inside.push_back(c);
    }
    if (inside.empty()) return false;
    std::map<Cone, int> shared;
    for (auto c : inside)
      for (auto& facet : cone_facets(fine, fine.cone(c))) ++shared[facet];
    for (const auto& [facet, count] : shared) {
      if (count == 2) continue;
      if (count > 2) return false;
      bool on_boundary = std::any_of(boundary.begin(), boundary.end(), [&](const cone::Facet& bf) {
        return std::all_of(facet.begin(), facet.end(), [&](std::size_t r) { return dot(bf.normal, fine.ray(r)) == 0; });
      });
      if (!on_boundary) return false;
    }
  }
  return true;
}

namespace {

// n linearly independent rays of a full-dimensional cone, greedily in order.
std::vector<std::size_t> cone_basis(const Fan& f, const Cone& c) {
  std::vector<std::size_t> basis;
  std::vector<LatticeVector> picked;
  for (auto r : c) {
    picked.push_back(f.ray(r));
    if (rank(matrix_from_rows(picked, f.dim())) == picked.size()) {
      basis.push_back(r);
    } else {
      picked.pop_back();
    }
    if (basis.size() == f.dim()) break;
  }
  return basis;
}

// Coordinates of v in the given basis rays.
RationalVector coordinates(const Fan& f, const std::vector<std::size_t>& basis, const LatticeVector& v) {
  RationalMatrix m(f.dim(), basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < f.dim(); ++i) m(i, j) = f.ray(basis[j])[i];
  auto sol = solve_rational(m, to_rational(v));
  if (!sol) throw Error(ErrorKind::InvalidFan, "ray outside the span of its cone basis");
  return sol->particular;
}

RationalVector functional_through(const Fan& f, const std::vector<std::size_t>& basis, const RationalVector& heights) {
  RationalMatrix m(basis.size(), f.dim());
  RationalVector rhs;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < f.dim(); ++j) m(i, j) = f.ray(basis[i])[j];
    rhs.push_back(heights[basis[i]]);
  }
  return solve_rational(m, rhs)->particular;
}

}  // namespace

std::optional<ProjectivityCertificate> is_projective(const Fan& f) {
  auto ws = walls(f);
  const std::size_t r = f.num_rays();
  // variables g_0..g_{r-1} in [0, 2] (heights h = g - 1), then the margin t
  LinearProgram lp(r + 1);
  lp.set_free(r);
  std::vector<std::vector<std::size_t>> bases;
  for (const auto& c : f.cones()) bases.push_back(cone_basis(f, c));

  // h_target - sum coeff_b h_b (+ margin) expressed in g
  auto add_row = [&](const std::vector<std::size_t>& basis, const RationalVector& coeff, std::size_t target,
                     bool margin) {
    RationalVector row(r + 1);
    Rational shift = 1;
    row[target] += 1;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      row[basis[b]] -= coeff[b];
      shift -= coeff[b];
    }
    if (margin) {
      row[r] = -1;
      lp.add_constraint(std::move(row), Relation::GreaterEqual, shift);
    } else {
      lp.add_constraint(std::move(row), Relation::Equal, shift);
    }
  };

  for (std::size_t c = 0; c < f.num_cones(); ++c)
    for (auto ray : f.cone(c)) {
      if (std::find(bases[c].begin(), bases[c].end(), ray) != bases[c].end()) continue;
      add_row(bases[c], coordinates(f, bases[c], f.ray(ray)), ray, false);
    }
  for (const auto& w : ws) {
    std::size_t opposite = f.cone(w.right).minus(w.tau).front();
    add_row(bases[w.left], coordinates(f, bases[w.left], f.ray(opposite)), opposite, true);
  }
  for (std::size_t i = 0; i < r; ++i) {
    RationalVector row(r + 1);
    row[i] = 1;
    lp.add_constraint(std::move(row), Relation::LessEqual, 2);
  }
  RationalVector objective(r + 1);
  objective[r] = 1;
  lp.add_constraint(objective, Relation::LessEqual, 1);
  lp.set_objective(objective);

  auto sol = lp.solve();
  if (sol.status != LpStatus::Optimal || sol.objective <= 0) return std::nullopt;
  ProjectivityCertificate cert;
  for (std::size_t i = 0; i < r; ++i) cert.heights.push_back(sol.values[i] - 1);
  for (std::size_t c = 0; c < f.num_cones(); ++c) cert.functionals.push_back(functional_through(f, bases[c], cert.heights));
  return cert;
}

bool verify_projectivity_certificate(const Fan& f, const ProjectivityCertificate& cert) {
  if (cert.heights.size() != f.num_rays() || cert.functionals.size() != f.num_cones()) return false;
  for (std::size_t c = 0; c < f.num_cones(); ++c)
    for (auto r : f.cone(c))
      if (dot(cert.functionals[c], f.ray(r)) != cert.heights[r]) return false;
  for (const auto& w : walls(f)) {
    for (auto u : f.cone(w.right).minus(w.tau))
      if (!(dot(cert.functionals[w.left], f.ray(u)) < cert.heights[u])) return false;
    for (auto u : f.cone(w.left).minus(w.tau))
      if (!(dot(cert.functionals[w.right], f.ray(u)) < cert.heights[u])) return false;
  }
  return true;
}

bool is_projective_space(const Fan& f) {
  if (f.num_rays() != f.dim() + 1) return false;
  if (!is_complete(f) || !is_simplicial(f)) return false;
  return std::all_of(f.cones().begin(), f.cones().end(), [&](const Cone& c) { return multiplicity(f, c) == 1; });
}

}  // namespace moritoric
