#include "moritoric/constructions.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>

#include "moritoric/cone.hpp"
#include "moritoric/error.hpp"
#include "moritoric/mori.hpp"
#include "moritoric/simplex.hpp"

namespace moritoric {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Raw engine output only; the standard distributions are not portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

 private:
  std::mt19937_64 engine_;
};

void for_each_subset(std::size_t k, std::size_t d, const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  if (d > k) return;
  std::vector<std::size_t> idx(d);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (!fn(idx)) return;
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == k - d + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::string join_integers(const std::vector<Integer>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s;
}

std::vector<Cone> all_subsets(std::size_t k, std::size_t d) {
  std::vector<Cone> out;
  for_each_subset(k, d, [&](const std::vector<std::size_t>& s) {
    out.emplace_back(s);
    return true;
  });
  return out;
}

struct Cell {
  std::vector<std::size_t> members;  // positions in the generator list
  RationalVector functional;
};

// Lower cells of the lifting u -> (u, h(u)) for generators spanning a d-dim
// space: d-subsets S with <m, u> = h on S and < h elsewhere. nullopt when a
// lower cell is not a simplex.
std::optional<std::vector<Cell>> lower_cells(const std::vector<LatticeVector>& gens, const std::vector<Integer>& heights,
                                             std::size_t d, std::size_t ambient) {
  std::vector<Cell> cells;
  bool generic = true;
  for_each_subset(gens.size(), d, [&](const std::vector<std::size_t>& s) {
    RationalMatrix m(d, ambient);
    RationalVector rhs;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < ambient; ++j) m(i, j) = gens[s[i]][j];
      rhs.push_back(heights[s[i]]);
    }
    if (rank(m) != d) return true;
    auto sol = solve_rational(m, rhs);
    bool tie = false;
    for (std::size_t r = 0, k = 0; r < gens.size(); ++r) {
      if (k < d && s[k] == r) {
        ++k;
        continue;
      }
      Rational value = dot(sol->particular, gens[r]);
      if (value > heights[r]) return true;
      if (value == heights[r]) tie = true;
    }
    if (tie) {
      generic = false;
      return false;
    }
    cells.push_back({s, std::move(sol->particular)});
    return true;
  });
  if (!generic) return std::nullopt;
  return cells;
}

bool positively_spanning(const std::vector<LatticeVector>& rays, std::size_t dim) {
  std::vector<RationalVector> gens;
  for (const auto& r : rays) gens.push_back(to_rational(r));
  for (std::size_t i = 0; i < dim; ++i)
    for (int sign : {1, -1}) {
      RationalVector target(dim);
      target[i] = sign;
      if (!in_conic_hull(gens, target)) return false;
    }
  return true;
}

LatticeVector random_primitive(Rng& rng, std::size_t dim, long range) {
  while (true) {
    LatticeVector v(dim);
    for (auto& x : v) x = rng.between(-range, range);
    if (!is_zero(v) && is_primitive(v)) return v;
  }
}

std::vector<LatticeVector> projective_generators(std::size_t n) {
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < n; ++i) {
    LatticeVector e(n);
    e[i] = 1;
    rays.push_back(e);
  }
  rays.push_back(LatticeVector(n, Integer(-1)));
  return rays;
}

}  // namespace

Fan projective_space(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "projective space needs n >= 1");
  return Fan(n, projective_generators(n), all_subsets(n + 1, n), "P^" + std::to_string(n));
}

namespace {

void check_weights(const std::vector<Integer>& weights) {
  if (weights.size() < 2) throw Error(ErrorKind::InvalidInput, "need at least two weights");
  for (const auto& w : weights)
    if (w <= 0) throw Error(ErrorKind::InvalidInput, "weights must be positive");
}

// Images of the standard basis in Z^(n+1) / saturation(Z w), not primitivized.
std::vector<LatticeVector> wps_images(const std::vector<Integer>& weights) {
  check_weights(weights);
  const std::size_t k = weights.size();
  IntegerMatrix relation(1, k);
  for (std::size_t i = 0; i < k; ++i) relation(0, i) = weights[i];
  IntegerMatrix p = saturated_quotient_map(relation, k);
  std::vector<LatticeVector> images;
  for (std::size_t i = 0; i < k; ++i) images.emplace_back(p.row(i).begin(), p.row(i).end());
  return images;
}

}  // namespace

Fan weighted_projective(const std::vector<Integer>& weights) {
  auto images = wps_images(weights);
  std::vector<LatticeVector> rays;
  for (const auto& v : images) rays.push_back(primitivize(v));
  const std::size_t n = weights.size() - 1;
  return Fan(n, std::move(rays), all_subsets(n + 1, n), "P(" + join_integers(weights) + ")");
}

std::vector<Integer> well_formed_weights(const std::vector<Integer>& weights) {
  auto images = wps_images(weights);
  std::vector<Integer> c;
  for (std::size_t i = 0; i < weights.size(); ++i) c.push_back(gcd(images[i]) * weights[i]);
  Integer d = gcd(c);
  for (auto& x : c) x /= d;
  return c;
}

std::vector<Integer> normalize_weights(const std::vector<Integer>& weights) {
  auto c = well_formed_weights(weights);
  std::sort(c.begin(), c.end());
  return c;
}

Cone wps_distinguished_wall(const std::vector<Integer>& weights) {
  auto c = well_formed_weights(weights);
  std::vector<std::size_t> order(c.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return c[a] < c[b]; });
  order.resize(c.size() - 2);
  return Cone(std::move(order));
}

FanoRhoOne fano_rho_one(const std::vector<LatticeVector>& vectors) {
  if (vectors.size() < 2) throw Error(ErrorKind::BadConfiguration, "need n + 1 >= 2 vectors");
  const std::size_t n = vectors.size() - 1;
  RationalMatrix cols(n, n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    if (vectors[j].size() != n)
      throw Error(ErrorKind::BadConfiguration, "vector " + std::to_string(j) + " has the wrong length");
    if (is_zero(vectors[j]) || !is_primitive(vectors[j]))
      throw Error(ErrorKind::BadConfiguration, "vector " + std::to_string(j) + " is not primitive");
    for (std::size_t i = 0; i < n; ++i) cols(i, j) = vectors[j][i];
  }
  auto kernel = null_space(cols);
  if (kernel.size() != 1) throw Error(ErrorKind::BadConfiguration, "vectors do not span with a single relation");
  LatticeVector a = primitive_integer_multiple(kernel.front());
  if (a.front() < 0)
    for (auto& x : a) x = -x;
  for (const auto& x : a)
    if (x <= 0) throw Error(ErrorKind::BadConfiguration, "relation has a non-positive coefficient");
  std::vector<Cone> cones;
  for (std::size_t i = 0; i <= n; ++i) {
    std::vector<std::size_t> c;
    for (std::size_t j = 0; j <= n; ++j)
      if (j != i) c.push_back(j);
    cones.emplace_back(std::move(c));
  }
  return {Fan(n, vectors, std::move(cones), "fano"), std::move(a)};
}

Fan hirzebruch(long a) {
  std::vector<LatticeVector> rays = {{1, 0}, {0, 1}, {-1, Integer(a)}, {0, -1}};
  return Fan(2, std::move(rays), {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, "F_" + std::to_string(a));
}

Fan product(const Fan& f, const Fan& g) {
  const std::size_t n = f.dim() + g.dim();
  std::vector<LatticeVector> rays;
  for (const auto& r : f.rays()) {
    LatticeVector v(n);
    std::copy(r.begin(), r.end(), v.begin());
    rays.push_back(std::move(v));
  }
  for (const auto& r : g.rays()) {
    LatticeVector v(n);
    std::copy(r.begin(), r.end(), v.begin() + static_cast<std::ptrdiff_t>(f.dim()));
    rays.push_back(std::move(v));
  }
  std::vector<Cone> cones;
  for (const auto& a : f.cones())
    for (const auto& b : g.cones()) {
      std::vector<std::size_t> c = a.rays();
      for (auto r : b) c.push_back(r + f.num_rays());
      cones.emplace_back(std::move(c));
    }
  return Fan(n, std::move(rays), std::move(cones), f.name() + "x" + g.name());
}

Fan cube_fan() {
  std::vector<LatticeVector> rays;
  for (int x : {1, -1})
    for (int y : {1, -1})
      for (int z : {1, -1}) rays.push_back({x, y, z});
  std::vector<Cone> cones;
  for (std::size_t axis = 0; axis < 3; ++axis)
    for (int sign : {1, -1}) {
      std::vector<std::size_t> c;
      for (std::size_t r = 0; r < rays.size(); ++r)
        if (rays[r][axis] == sign) c.push_back(r);
      cones.emplace_back(std::move(c));
    }
  return Fan(3, std::move(rays), std::move(cones), "cube");
}

Fan random_complete_fan(std::size_t dim, std::size_t ray_budget, std::uint64_t seed) {
  if (dim < 2 || dim > 4) throw Error(ErrorKind::InvalidInput, "random fans are available in dimensions 2 to 4");
  if (ray_budget < dim + 1) throw Error(ErrorKind::InvalidInput, "ray budget must be at least dim + 1");
  Rng rng(seed);
  long range = dim == 2 ? 3 : 2;
  for (std::size_t attempt = 0;; ++attempt) {
    if (attempt > 0 && attempt % 200 == 0) ++range;
    std::vector<LatticeVector> rays;
    std::size_t draws = 0;
    while (rays.size() < ray_budget && draws < 50 * ray_budget) {
      ++draws;
      auto v = random_primitive(rng, dim, range);
      if (std::find(rays.begin(), rays.end(), v) == rays.end()) rays.push_back(std::move(v));
    }
    if (rays.size() < ray_budget) continue;
    if (!positively_spanning(rays, dim)) {
      if (attempt < 50) continue;
      for (auto& g : projective_generators(dim))
        if (std::find(rays.begin(), rays.end(), g) == rays.end()) rays.push_back(std::move(g));
    }

    // heights close to the Euclidean norm put every ray on the lower hull
    std::vector<Integer> heights;
    for (const auto& r : rays) {
      Integer norm2 = 0;
      for (const auto& x : r) norm2 += x * x;
      Integer scaled = norm2 << 32;
      Integer h = sqrt(scaled);
      heights.push_back(h + static_cast<long>(rng.below(256)));
    }
    auto cells = lower_cells(rays, heights, dim, dim);
    if (!cells) continue;
    std::vector<bool> used(rays.size(), false);
    std::vector<Cone> cones;
    for (const auto& c : *cells) {
      for (auto r : c.members) used[r] = true;
      cones.emplace_back(c.members);
    }
    if (std::find(used.begin(), used.end(), false) != used.end()) continue;
    return Fan(dim, std::move(rays), std::move(cones), "random-" + std::to_string(dim) + "-" + std::to_string(seed));
  }
}

FanoRhoOne random_fano_rho_one(std::size_t dim, std::uint64_t seed) {
  if (dim < 2 || dim > 4) throw Error(ErrorKind::InvalidInput, "random fans are available in dimensions 2 to 4");
  Rng rng(seed);
  if (rng.below(4) == 0) {
    auto rays = projective_generators(dim);
    for (std::size_t step = 0; step < 3 * dim; ++step) {
      std::size_t i = rng.below(dim), j = rng.below(dim);
      if (i == j) continue;
      long s = rng.between(-1, 1);
      for (auto& r : rays) r[i] += s * r[j];
    }
    return fano_rho_one(rays);
  }
  while (true) {
    std::vector<LatticeVector> rays;
    for (std::size_t i = 0; i <= dim; ++i) rays.push_back(random_primitive(rng, dim, 3));
    try {
      return fano_rho_one(rays);
    } catch (const Error&) {
    }
  }
}

Fan random_coarsening(std::size_t dim, std::size_t ray_budget, std::uint64_t seed) {
  if (dim != 3 && dim != 4) throw Error(ErrorKind::InvalidInput, "coarsenings are available in dimensions 3 and 4");
  Rng rng(seed);
  for (std::uint64_t attempt = 0;; ++attempt) {
    Fan f = random_complete_fan(dim, ray_budget, splitmix64(seed + attempt));
    auto ws = walls(f);
    std::vector<std::size_t> order(ws.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

    std::vector<bool> merged(f.num_cones(), false);
    std::vector<Cone> cones;
    for (auto w : order) {
      const Wall& wall = ws[w];
      if (merged[wall.left] || merged[wall.right] || rng.below(2) == 0) continue;
      auto rel = wall_relation(f, wall);
      bool bipyramid = std::all_of(wall.tau.begin(), wall.tau.end(), [&](std::size_t r) { return rel.coefficients[r] < 0; });
      if (!bipyramid) continue;
      merged[wall.left] = merged[wall.right] = true;
      auto rays = f.cone(wall.left).rays();
      rays.push_back(rel.opposite_right);
      cones.emplace_back(std::move(rays));
    }
    if (cones.empty()) continue;
    for (std::size_t c = 0; c < f.num_cones(); ++c)
      if (!merged[c]) cones.push_back(f.cone(c));
    std::sort(cones.begin(), cones.end());
    Fan out(dim, f.rays(), std::move(cones), "coarsening-" + std::to_string(dim) + "-" + std::to_string(seed));
    if (validate_fan(out).empty()) return out;
  }
}

Integer lifting_height(std::uint64_t seed, std::size_t ray, std::size_t attempt) {
  std::uint64_t x = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(ray) * 0x100000001b3ULL + attempt));
  return Integer(static_cast<unsigned long>(x % 65536 + 1));
}

QFactorialization qfactorialize(const Fan& f, std::uint64_t seed) {
  auto problems = validate_fan(f);
  if (!problems.empty()) throw Error(ErrorKind::InvalidFan, problems.front().message);
  constexpr std::size_t max_attempts = 32;
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    RelativeCertificate cert;
    for (std::size_t r = 0; r < f.num_rays(); ++r) cert.heights.push_back(lifting_height(seed, r, attempt));

    std::vector<Cone> cones;
    bool generic = true;
    for (std::size_t c = 0; c < f.num_cones() && generic; ++c) {
      const Cone& cone = f.cone(c);
      if (is_simplicial_cone(f, cone)) {
        cones.push_back(cone);
        continue;
      }
      std::vector<Integer> heights;
      for (auto r : cone) heights.push_back(cert.heights[r]);
      auto cells = lower_cells(f.generators(cone), heights, cone_dimension(f, cone), f.dim());
      if (!cells) {
        generic = false;
        break;
      }
      CellCertificate entry{c, {}, {}};
      for (auto& cell : *cells) {
        std::vector<std::size_t> rays;
        for (auto i : cell.members) rays.push_back(cone.rays()[i]);
        entry.cells.push_back(cones.size());
        entry.functionals.push_back(std::move(cell.functional));
        cones.emplace_back(std::move(rays));
      }
      cert.cones.push_back(std::move(entry));
    }
    if (!generic) continue;
    std::string name = f.name().empty() ? "qfactorialization" : f.name() + "/qfact";
    return {Fan(f.dim(), f.rays(), std::move(cones), name), std::move(cert)};
  }
  throw Error(ErrorKind::GenericityFailure, "no generic heights after " + std::to_string(max_attempts) + " attempts");
}

bool verify_relative_certificate(const Fan& original, const QFactorialization& q) {
  const auto& cert = q.certificate;
  if (cert.heights.size() != original.num_rays()) return false;
  for (const auto& entry : cert.cones) {
    if (entry.original_cone >= original.num_cones() || entry.cells.size() != entry.functionals.size()) return false;
    const Cone& sigma = original.cone(entry.original_cone);
    for (std::size_t k = 0; k < entry.cells.size(); ++k) {
      if (entry.cells[k] >= q.fan.num_cones()) return false;
      const Cone& cell = q.fan.cone(entry.cells[k]);
      if (!cell.is_subset_of(sigma)) return false;
      for (auto r : sigma) {
        Rational value = dot(entry.functionals[k], q.fan.ray(r));
        bool on_cell = cell.contains(r);
        if (on_cell && value != cert.heights[r]) return false;
        if (!on_cell && value >= cert.heights[r]) return false;
      }
    }
  }
  return true;
}

bool lattice_isomorphic(const Fan& f, const Fan& g) {
  if (f.dim() != g.dim() || f.num_rays() != g.num_rays() || f.num_cones() != g.num_cones()) return false;
  if (f.dim() == 0) return true;
  const std::size_t n = f.dim();
  std::vector<Cone> target = g.cones();
  std::sort(target.begin(), target.end());

  // n independent rays of f, chosen greedily
  std::vector<std::size_t> basis;
  std::vector<LatticeVector> chosen;
  for (std::size_t r = 0; r < f.num_rays() && basis.size() < n; ++r) {
    chosen.push_back(f.ray(r));
    if (rank(matrix_from_rows(chosen, n)) == chosen.size()) {
      basis.push_back(r);
    } else {
      chosen.pop_back();
    }
  }
  if (basis.size() != n) return false;
  RationalMatrix fb(n, n);  // columns are the chosen rays of f
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) fb(i, j) = f.ray(basis[j])[i];
  RationalMatrix fb_inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector e(n);
    e[j] = 1;
    auto col = solve_rational(fb, e)->particular;
    for (std::size_t i = 0; i < n; ++i) fb_inv(i, j) = col[i];
  }

  std::vector<std::size_t> image(n);
  std::vector<bool> taken(g.num_rays(), false);
  std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
    if (k == n) {
      RationalMatrix gb(n, n);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) gb(i, j) = g.ray(image[j])[i];
      RationalMatrix a = gb * fb_inv;
      IntegerMatrix ai(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (!is_integral(a(i, j))) return false;
          ai(i, j) = a(i, j).get_num();
        }
      if (abs(determinant(ai)) != 1) return false;
      std::vector<std::size_t> ray_map(f.num_rays());
      for (std::size_t r = 0; r < f.num_rays(); ++r) {
        LatticeVector v(n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) v[i] += ai(i, j) * f.ray(r)[j];
        auto found = g.find_ray(v);
        if (!found) return false;
        ray_map[r] = *found;
      }
      std::vector<Cone> mapped;
      for (const auto& c : f.cones()) {
        std::vector<std::size_t> idx;
        for (auto r : c) idx.push_back(ray_map[r]);
        mapped.emplace_back(std::move(idx));
      }
      std::sort(mapped.begin(), mapped.end());
      return mapped == target;
    }
    for (std::size_t r = 0; r < g.num_rays(); ++r) {
      if (taken[r]) continue;
      taken[r] = true;
      image[k] = r;
      bool ok = search(k + 1);
      taken[r] = false;
      if (ok) return true;
    }
    return false;
  };
  return search(0);
}

}  // namespace moritoric
