#include "moritoric/divisor.hpp"

#include <algorithm>

#include "moritoric/error.hpp"
#include "moritoric/mori.hpp"

namespace moritoric {

ToricDivisor ToricDivisor::unit(std::size_t rays, std::size_t ray) {
  ToricDivisor d = zero(rays);
  d.coeffs.at(ray) = 1;
  return d;
}

Rational ToricDivisor::total() const {
  Rational s = 0;
  for (const auto& c : coeffs) s += c;
  return s;
}

ToricDivisor operator+(const ToricDivisor& a, const ToricDivisor& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidInput, "divisor lengths differ");
  ToricDivisor out = a;
  for (std::size_t i = 0; i < b.size(); ++i) out.coeffs[i] += b.coeffs[i];
  return out;
}

ToricDivisor operator-(const ToricDivisor& a, const ToricDivisor& b) { return a + Rational(-1) * b; }

ToricDivisor operator*(const Rational& s, const ToricDivisor& d) {
  ToricDivisor out = d;
  for (auto& c : out.coeffs) c *= s;
  return out;
}

ToricDivisor canonical_divisor(const Fan& f) { return ToricDivisor(RationalVector(f.num_rays(), Rational(-1))); }

namespace {

void require_aligned(const Fan& f, const ToricDivisor& d) {
  if (d.size() != f.num_rays())
    throw Error(ErrorKind::InvalidInput, "divisor has " + std::to_string(d.size()) + " coefficients, fan has " +
                                             std::to_string(f.num_rays()) + " rays");
}

}  // namespace

std::optional<CartierData> q_cartier_data(const Fan& f, const ToricDivisor& d) {
  require_aligned(f, d);
  CartierData data;
  for (std::size_t c = 0; c < f.num_cones(); ++c) {
    const Cone& cone = f.cone(c);
    if (cone_dimension(f, cone) != f.dim())
      throw Error(ErrorKind::InvalidFan, "Cartier data needs full-dimensional maximal cones");
    RationalMatrix m(cone.size(), f.dim());
    RationalVector rhs;
    std::size_t i = 0;
    for (auto r : cone) {
      for (std::size_t j = 0; j < f.dim(); ++j) m(i, j) = f.ray(r)[j];
      rhs.push_back(-d[r]);
      ++i;
    }
    auto sol = solve_rational(m, rhs);
    if (!sol) return std::nullopt;
    data.functionals.push_back(std::move(sol->particular));
  }
  return data;
}

bool is_cartier(const Fan& f, const ToricDivisor& d) {
  auto data = q_cartier_data(f, d);
  if (!data) throw Error(ErrorKind::NotQCartier, "divisor is not Q-Cartier");
  for (const auto& m : data->functionals)
    for (const auto& x : m)
      if (!is_integral(x)) return false;
  return true;
}

std::vector<RationalVector> q_cartier_basis(const Fan& f) {
  std::vector<RationalVector> constraints;
  for (const auto& cone : f.cones()) {
    if (cone.size() <= f.dim()) continue;
    // linear relations among the cone's rays constrain d on that cone
    RationalMatrix cols(f.dim(), cone.size());
    std::size_t j = 0;
    for (auto r : cone) {
      for (std::size_t i = 0; i < f.dim(); ++i) cols(i, j) = f.ray(r)[i];
      ++j;
    }
    for (const auto& y : null_space(cols)) {
      RationalVector row(f.num_rays());
      std::size_t k = 0;
      for (auto r : cone) row[r] = y[k++];
      constraints.push_back(std::move(row));
    }
  }
  RationalMatrix a(constraints.size(), f.num_rays());
  for (std::size_t i = 0; i < constraints.size(); ++i)
    for (std::size_t j = 0; j < f.num_rays(); ++j) a(i, j) = constraints[i][j];
  return null_space(a);
}

Rational support_function(const Fan& f, const CartierData& data, const LatticeVector& v) {
  auto where = locate(f, v);
  if (!where) throw Error(ErrorKind::NotARefinement, "point outside the support of the fan");
  return dot(data.functionals[*where], v);
}

ToricDivisor pullback(const Fan& coarse, const Fan& fine, const ToricDivisor& d) {
  require_aligned(coarse, d);
  if (!refines(fine, coarse)) throw Error(ErrorKind::NotARefinement, "fine fan does not refine the coarse fan");
  auto data = q_cartier_data(coarse, d);
  if (!data) throw Error(ErrorKind::NotQCartier, "divisor is not Q-Cartier on the coarse fan");
  ToricDivisor out = ToricDivisor::zero(fine.num_rays());
  for (std::size_t r = 0; r < fine.num_rays(); ++r) out[r] = -support_function(coarse, *data, fine.ray(r));
  return out;
}

void require_boundary(const ToricDivisor& d) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] < 0 || d[i] > 1)
      throw Error(ErrorKind::BadBoundary, "coefficient " + std::to_string(i) + " is " + d[i].get_str() +
                                              ", outside [0, 1]");
}

CrepantBoundary crepant_boundary(const Fan& coarse, const Fan& fine, const ToricDivisor& d) {
  require_aligned(coarse, d);
  require_boundary(d);
  ToricDivisor log_canonical = canonical_divisor(coarse) + d;
  ToricDivisor pulled = pullback(coarse, fine, log_canonical);
  CrepantBoundary out;
  out.divisor = pulled - canonical_divisor(fine);
  for (std::size_t r = 0; r < fine.num_rays(); ++r)
    if (out.divisor[r] < 0 || out.divisor[r] > 1) out.out_of_range.push_back(r);
  return out;
}

bool is_nef(const Fan& f, const ToricDivisor& d) {
  auto degrees = intersect_all(f, d, walls(f));
  return std::all_of(degrees.begin(), degrees.end(), [](const Rational& x) { return x >= 0; });
}

bool is_ample(const Fan& f, const ToricDivisor& d) {
  auto degrees = intersect_all(f, d, walls(f));
  return std::all_of(degrees.begin(), degrees.end(), [](const Rational& x) { return x > 0; });
}

ToricDivisor principal_divisor(const Fan& f, std::span<const Integer> m) {
  ToricDivisor out = ToricDivisor::zero(f.num_rays());
  for (std::size_t r = 0; r < f.num_rays(); ++r) out[r] = dot(m, f.ray(r));
  return out;
}

}  // namespace moritoric
