#include "moritoric/mori.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "moritoric/cone.hpp"
#include "moritoric/error.hpp"
#include "moritoric/simplex.hpp"

namespace moritoric {

namespace {

bool simplicial_wall(const Fan& f, const Wall& w) {
  return f.cone(w.left).size() == f.dim() && f.cone(w.right).size() == f.dim() &&
         is_simplicial_cone(f, f.cone(w.left)) && is_simplicial_cone(f, f.cone(w.right));
}

}  // namespace

WallRelation wall_relation(const Fan& f, const Wall& w) {
  if (!simplicial_wall(f, w)) throw Error(ErrorKind::NonSimplicialWall, "adjacent cones are not simplicial");
  const std::size_t n = f.dim();
  const std::size_t u = f.cone(w.left).minus(w.tau).front();
  const std::size_t u_prime = f.cone(w.right).minus(w.tau).front();

  // columns: rays of tau, then u; solve M x = -u'
  std::vector<std::size_t> cols(w.tau.begin(), w.tau.end());
  cols.push_back(u);
  RationalMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = f.ray(cols[j])[i];
  RationalVector rhs;
  for (std::size_t i = 0; i < n; ++i) rhs.push_back(-Rational(f.ray(u_prime)[i]));
  auto sol = solve_rational(m, rhs);
  if (!sol || !sol->null_basis.empty()) throw Error(ErrorKind::InvalidFan, "wall cone is degenerate");

  Rational scale = Rational(multiplicity(f, w.tau)) / Rational(multiplicity(f, f.cone(w.right)));
  WallRelation rel{w, RationalVector(f.num_rays()), u, u_prime};
  for (std::size_t j = 0; j < n; ++j) rel.coefficients[cols[j]] = sol->particular[j] * scale;
  rel.coefficients[u_prime] = scale;
  if (rel.coefficients[u] <= 0) throw Error(ErrorKind::InvalidFan, "opposite rays lie on the same side of the wall");
  return rel;
}

CurveClass curve_class(const Fan& f, const Wall& w) { return {wall_relation(f, w).coefficients}; }

Rational intersect_via_relation(const Fan& f, const ToricDivisor& d, const Wall& w) {
  auto cls = curve_class(f, w);
  return dot(d.coeffs, cls.degrees);
}

Rational intersect_via_cartier(const Fan& f, const CartierData& data, const Wall& w) {
  const std::size_t n = f.dim();
  RationalMatrix tau(w.tau.size(), n);
  std::size_t i = 0;
  for (auto r : w.tau) {
    for (std::size_t j = 0; j < n; ++j) tau(i, j) = f.ray(r)[j];
    ++i;
  }
  auto normals = null_space(tau);
  if (normals.size() != 1) throw Error(ErrorKind::InvalidFan, "wall is not of codimension one");
  LatticeVector normal = primitive_integer_multiple(normals.front());
  const LatticeVector& w_ray = f.ray(f.cone(w.left).minus(w.tau).front());
  Integer height = dot(normal, w_ray);
  if (height < 0) {
    for (auto& x : normal) x = -x;
    height = -height;
  }
  RationalVector diff = data.functionals[w.left];
  for (std::size_t j = 0; j < n; ++j) diff[j] -= data.functionals[w.right][j];
  return -dot(diff, w_ray) / Rational(height);
}

Rational intersect(const Fan& f, const ToricDivisor& d, const Wall& w) {
  if (simplicial_wall(f, w)) return intersect_via_relation(f, d, w);
  auto data = q_cartier_data(f, d);
  if (!data) throw Error(ErrorKind::NotQCartier, "divisor is not Q-Cartier");
  return intersect_via_cartier(f, *data, w);
}

RationalVector intersect_all(const Fan& f, const ToricDivisor& d, const std::vector<Wall>& ws) {
  RationalVector out;
  std::optional<CartierData> data;
  for (const auto& w : ws) {
    if (simplicial_wall(f, w)) {
      out.push_back(intersect_via_relation(f, d, w));
      continue;
    }
    if (!data) {
      data = q_cartier_data(f, d);
      if (!data) throw Error(ErrorKind::NotQCartier, "divisor is not Q-Cartier");
    }
    out.push_back(intersect_via_cartier(f, *data, w));
  }
  return out;
}

bool positively_proportional(std::span<const Rational> u, std::span<const Rational> v) {
  if (u.size() != v.size()) return false;
  std::size_t i = 0;
  while (i < v.size() && v[i] == 0) ++i;
  if (i == v.size()) return is_zero(u);
  Rational s = u[i] / v[i];
  if (s <= 0) return false;
  for (std::size_t j = 0; j < u.size(); ++j)
    if (u[j] != s * v[j]) return false;
  return true;
}

RationalVector MoriConeReport::coordinates(const ToricDivisor& d) const {
  const std::size_t r = d.size();
  RationalMatrix m(r, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < r; ++i) m(i, j) = basis[j][i];
  auto sol = solve_rational(m, d.coeffs);
  if (!sol) throw Error(ErrorKind::NotQCartier, "divisor is not Q-Cartier");
  return sol->particular;
}

Rational MoriConeReport::pairing(const ToricDivisor& d, std::size_t wall) const {
  return dot(coordinates(d), classes.at(wall));
}

MoriConeReport mori_cone(const Fan& f) {
  MoriConeReport report;
  report.walls = walls(f);
  report.basis = q_cartier_basis(f);
  if (is_simplicial(f)) {
    for (const auto& w : report.walls) report.classes.push_back(curve_class(f, w).degrees);
  } else {
    report.classes.assign(report.walls.size(), RationalVector(report.basis.size()));
    for (std::size_t b = 0; b < report.basis.size(); ++b) {
      auto data = q_cartier_data(f, ToricDivisor(report.basis[b]));
      for (std::size_t w = 0; w < report.walls.size(); ++w)
        report.classes[w][b] = intersect_via_cartier(f, *data, report.walls[w]);
    }
  }

  RationalMatrix all(report.classes.size(), report.basis.size());
  for (std::size_t w = 0; w < report.classes.size(); ++w)
    for (std::size_t j = 0; j < report.basis.size(); ++j) all(w, j) = report.classes[w][j];
  report.picard_rank = rank(all);

  // group walls by ray of their class
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t w = 0; w < report.classes.size(); ++w) {
    if (is_zero(report.classes[w])) continue;
    auto it = std::find_if(groups.begin(), groups.end(), [&](const std::vector<std::size_t>& g) {
      return positively_proportional(report.classes[w], report.classes[g.front()]);
    });
    if (it == groups.end()) {
      groups.push_back({w});
    } else {
      it->push_back(w);
    }
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    std::vector<RationalVector> others;
    for (std::size_t h = 0; h < groups.size(); ++h)
      if (h != g) others.push_back(report.classes[groups[h].front()]);
    const auto& rep = report.classes[groups[g].front()];
    if (!in_conic_hull(others, rep)) report.extremal.push_back({rep, groups[g]});
  }
  return report;
}

bool ConeTheoremReport::holds() const {
  return std::all_of(rays.begin(), rays.end(),
                     [&](const RayLength& r) { return r.within_n_plus_one && (r.within_n || exception); });
}

ConeTheoremReport cone_theorem_check(const Fan& f, const ToricDivisor& d) {
  if (d.size() != f.num_rays()) throw Error(ErrorKind::InvalidInput, "boundary length does not match the fan");
  require_boundary(d);
  if (!is_complete(f)) throw Error(ErrorKind::NotComplete, "cone theorem needs a complete fan");
  ToricDivisor log_canonical = canonical_divisor(f) + d;
  if (!q_cartier_data(f, log_canonical)) throw Error(ErrorKind::NotQCartier, "K + D is not Q-Cartier");

  auto report = mori_cone(f);
  auto coords = report.coordinates(log_canonical);
  ConeTheoremReport out;
  out.dim = f.dim();
  out.exception = is_projective_space(f) && d.total() < 1;
  const Rational n = Rational(static_cast<long>(f.dim()));
  for (std::size_t k = 0; k < report.extremal.size(); ++k) {
    const auto& ray = report.extremal[k];
    if (dot(coords, ray.representative) >= 0) continue;
    RayLength len{k, ray.walls.front(), 0, 0, false, false};
    bool first = true;
    for (auto w : ray.walls) {
      Rational value = -dot(coords, report.classes[w]);
      if (first || value < len.length) {
        len.length = value;
        len.witness_wall = w;
      }
      if (first || value > len.max_length) len.max_length = value;
      first = false;
    }
    len.within_n_plus_one = len.length <= n + 1;
    len.within_n = len.length <= n;
    out.rays.push_back(len);
  }
  return out;
}

std::optional<ShortWall> find_short_wall(const Fan& f) {
  if (f.num_rays() != f.dim() + 1 || !is_complete(f) || !is_simplicial(f))
    throw Error(ErrorKind::NotFanoRhoOne, "expected a complete simplicial fan with n + 1 rays");
  if (is_projective_space(f)) return std::nullopt;
  auto ws = walls(f);
  auto anti = Rational(-1) * canonical_divisor(f);
  std::optional<ShortWall> best;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    Rational value = intersect_via_relation(f, anti, ws[i]);
    if (!best || value < best->length) best = ShortWall{i, ws[i], value};
  }
  if (best && best->length > Rational(static_cast<long>(f.dim()))) return std::nullopt;
  return best;
}

FujitaReport fujita_check(const Fan& f, const ToricDivisor& d, const ToricDivisor& l, FujitaMode mode) {
  if (d.size() != f.num_rays() || l.size() != f.num_rays())
    throw Error(ErrorKind::InvalidInput, "divisor length does not match the fan");
  require_boundary(d);
  if (!is_complete(f)) throw Error(ErrorKind::NotComplete, "Fujita check needs a complete fan");
  if (!is_cartier(f, l)) throw Error(ErrorKind::NotCartier, "L is not Cartier");
  ToricDivisor log_canonical = canonical_divisor(f) + d;
  if (!q_cartier_data(f, log_canonical)) throw Error(ErrorKind::NotQCartier, "K + D is not Q-Cartier");

  auto ws = walls(f);
  auto l_degrees = intersect_all(f, l, ws);
  FujitaReport out;
  out.mode = mode;
  out.min_degree = *std::min_element(l_degrees.begin(), l_degrees.end());
  const Rational n = Rational(static_cast<long>(f.dim()));
  auto target = intersect_all(f, log_canonical + l, ws);
  const bool p_n = is_projective_space(f);
  if (mode == FujitaMode::Nef) {
    out.hypothesis_met = out.min_degree >= n;
    out.conclusion_holds = std::all_of(target.begin(), target.end(), [](const Rational& x) { return x >= 0; });
    out.exception = p_n && d.total() < 1 && out.min_degree == n;
  } else {
    out.hypothesis_met = out.min_degree >= n + 1;
    out.conclusion_holds = std::all_of(target.begin(), target.end(), [](const Rational& x) { return x > 0; });
    out.exception = p_n && is_zero(d.coeffs) && out.min_degree == n + 1;
  }
  return out;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

LatticeVector row_times(const LatticeVector& v, const IntegerMatrix& p) {
  LatticeVector out(p.cols());
  for (std::size_t j = 0; j < p.cols(); ++j)
    for (std::size_t i = 0; i < p.rows(); ++i) out[j] += v[i] * p(i, j);
  return out;
}

}  // namespace

Fan contract(const Fan& f, std::size_t extremal_index) {
  auto report = mori_cone(f);
  if (extremal_index >= report.extremal.size())
    throw Error(ErrorKind::NotExtremal, "no extremal ray with index " + std::to_string(extremal_index));
  const auto& ray = report.extremal[extremal_index];
  std::vector<bool> contracted(report.walls.size(), false);
  for (auto w : ray.walls) contracted[w] = true;

  DisjointSets sets(f.num_cones());
  for (auto w : ray.walls) sets.unite(report.walls[w].left, report.walls[w].right);
  for (std::size_t w = 0; w < report.walls.size(); ++w)
    if (!contracted[w] && sets.find(report.walls[w].left) == sets.find(report.walls[w].right))
      throw Error(ErrorKind::NotExtremal, "merged cones meet along a wall off the ray");

  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t c = 0; c < f.num_cones(); ++c) groups[sets.find(c)].push_back(c);

  struct Merged {
    std::vector<std::size_t> cones;
    std::vector<std::size_t> rays;
    std::vector<LatticeVector> gens;
    bool pointed;
  };
  std::vector<Merged> merged;
  for (auto& [root, members] : groups) {
    Merged m{members, {}, {}, true};
    Cone all;
    for (auto c : members) all = Cone([&] {
        auto v = all.rays();
        v.insert(v.end(), f.cone(c).begin(), f.cone(c).end());
        return v;
      }());
    m.rays = all.rays();
    m.gens = f.generators(all);
    m.pointed = cone::is_strongly_convex(m.gens);

    // the union of the member cones must be their convex hull
    auto hull_facets = cone::facets(m.gens);
    for (auto c : members)
      for (const auto& facet : cone_facets(f, f.cone(c))) {
        int owners = 0;
        for (auto other : members)
          if (facet.is_subset_of(f.cone(other))) ++owners;
        if (owners == 2) continue;
        bool on_boundary = std::any_of(hull_facets.begin(), hull_facets.end(), [&](const cone::Facet& hf) {
          return std::all_of(facet.begin(), facet.end(), [&](std::size_t r) { return dot(hf.normal, f.ray(r)) == 0; });
        });
        if (!on_boundary) throw Error(ErrorKind::NotExtremal, "merged cones do not form a convex cone");
      }
    merged.push_back(std::move(m));
  }

  const bool any_pointed = std::any_of(merged.begin(), merged.end(), [](const Merged& m) { return m.pointed; });
  const bool all_pointed = std::all_of(merged.begin(), merged.end(), [](const Merged& m) { return m.pointed; });
  if (any_pointed && !all_pointed) throw Error(ErrorKind::NotExtremal, "mixed birational and fiber-type merging");

  std::string name = f.name().empty() ? "contraction" : f.name() + "/contraction";
  Fan out(0, {}, {});
  if (all_pointed) {
    std::vector<Cone> cones;
    std::vector<bool> used(f.num_rays(), false);
    for (const auto& m : merged) {
      std::vector<std::size_t> extreme;
      for (std::size_t i = 0; i < m.gens.size(); ++i)
        if (cone::is_extreme(m.gens, i)) extreme.push_back(m.rays[i]);
      for (auto r : extreme) used[r] = true;
      cones.emplace_back(std::move(extreme));
    }
    std::vector<std::size_t> remap(f.num_rays());
    std::vector<LatticeVector> rays;
    for (std::size_t r = 0; r < f.num_rays(); ++r)
      if (used[r]) {
        remap[r] = rays.size();
        rays.push_back(f.ray(r));
      }
    for (auto& c : cones) {
      std::vector<std::size_t> idx;
      for (auto r : c) idx.push_back(remap[r]);
      c = Cone(std::move(idx));
    }
    out = Fan(f.dim(), std::move(rays), std::move(cones), name);
  } else {
    auto lineality = cone::lineality_space(merged.front().gens, f.dim());
    for (const auto& m : merged) {
      auto other = cone::lineality_space(m.gens, f.dim());
      std::vector<LatticeVector> both;
      for (const auto& v : lineality) both.push_back(primitive_integer_multiple(v));
      for (const auto& v : other) both.push_back(primitive_integer_multiple(v));
      if (other.size() != lineality.size() || rank(matrix_from_rows(both, f.dim())) != lineality.size())
        throw Error(ErrorKind::NotExtremal, "merged cones have different lineality spaces");
    }
    std::vector<LatticeVector> lineality_gens;
    for (const auto& v : lineality) lineality_gens.push_back(primitive_integer_multiple(v));
    IntegerMatrix quotient = saturated_quotient_map(matrix_from_rows(lineality_gens, f.dim()), f.dim());
    const std::size_t qdim = quotient.cols();

    std::vector<LatticeVector> rays;
    std::vector<std::vector<std::size_t>> cone_rays(merged.size());
    for (std::size_t r = 0; r < f.num_rays(); ++r) {
      LatticeVector image = row_times(f.ray(r), quotient);
      if (is_zero(image)) continue;
      image = primitivize(image);
      for (std::size_t g = 0; g < merged.size(); ++g) {
        const auto& m = merged[g];
        if (std::find(m.rays.begin(), m.rays.end(), r) == m.rays.end()) continue;
        std::vector<LatticeVector> images;
        for (const auto& gen : m.gens) {
          LatticeVector im = row_times(gen, quotient);
          if (!is_zero(im)) images.push_back(primitivize(im));
        }
        std::sort(images.begin(), images.end());
        images.erase(std::unique(images.begin(), images.end()), images.end());
        auto pos = std::find(images.begin(), images.end(), image) - images.begin();
        if (!cone::is_extreme(images, static_cast<std::size_t>(pos))) continue;
        auto found = std::find(rays.begin(), rays.end(), image);
        std::size_t idx = static_cast<std::size_t>(found - rays.begin());
        if (found == rays.end()) rays.push_back(image);
        cone_rays[g].push_back(idx);
      }
    }
    std::vector<Cone> cones;
    for (auto& c : cone_rays) cones.emplace_back(std::move(c));
    std::sort(cones.begin(), cones.end());
    cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
    out = Fan(qdim, std::move(rays), std::move(cones), name);
  }
  auto problems = validate_fan(out);
  if (!problems.empty()) throw Error(ErrorKind::NotExtremal, "contraction is not a fan: " + problems.front().message);
  return out;
}

}  // namespace moritoric
