#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "moritoric/fan.hpp"
#include "moritoric/lattice.hpp"

namespace moritoric {

/// D = sum_rho d_rho D_rho, one coefficient per ray of the companion fan.
struct ToricDivisor {
  RationalVector coeffs;

  ToricDivisor() = default;
  explicit ToricDivisor(RationalVector c) : coeffs(std::move(c)) {}
  static ToricDivisor zero(std::size_t rays) { return ToricDivisor(RationalVector(rays)); }
  static ToricDivisor unit(std::size_t rays, std::size_t ray);

  std::size_t size() const { return coeffs.size(); }
  const Rational& operator[](std::size_t i) const { return coeffs[i]; }
  Rational& operator[](std::size_t i) { return coeffs[i]; }
  Rational total() const;

  friend ToricDivisor operator+(const ToricDivisor& a, const ToricDivisor& b);
  friend ToricDivisor operator-(const ToricDivisor& a, const ToricDivisor& b);
  friend ToricDivisor operator*(const Rational& s, const ToricDivisor& d);
  friend bool operator==(const ToricDivisor&, const ToricDivisor&) = default;
};

/// One functional m_sigma per maximal cone with <m_sigma, u_rho> = -d_rho for
/// every ray rho of sigma.
struct CartierData {
  std::vector<RationalVector> functionals;
};

ToricDivisor canonical_divisor(const Fan& f);

/// CartierData when D is Q-Cartier, nullopt otherwise. Maximal cones must be
/// full-dimensional (throws InvalidFan).
std::optional<CartierData> q_cartier_data(const Fan& f, const ToricDivisor& d);

/// Throws NotQCartier when D is not Q-Cartier.
bool is_cartier(const Fan& f, const ToricDivisor& d);

/// Basis of the subspace of Q-Cartier coefficient vectors. The standard basis
/// for simplicial fans.
std::vector<RationalVector> q_cartier_basis(const Fan& f);

/// psi_D(v) = <m_sigma, v> for a maximal cone sigma containing v.
Rational support_function(const Fan& f, const CartierData& data, const LatticeVector& v);

/// f^*D on the refinement: coefficient -psi_D(v) at every ray v of fine.
/// Throws NotARefinement, NotQCartier.
ToricDivisor pullback(const Fan& coarse, const Fan& fine, const ToricDivisor& d);

struct CrepantBoundary {
  ToricDivisor divisor;                     // K_fine + divisor = f^*(K + D)
  std::vector<std::size_t> out_of_range;    // fine rays with coefficient outside [0, 1]
};

/// Throws NotARefinement, NotQCartier, BadBoundary.
CrepantBoundary crepant_boundary(const Fan& coarse, const Fan& fine, const ToricDivisor& d);

/// Throws BadBoundary unless every coefficient lies in [0, 1].
void require_boundary(const ToricDivisor& d);

/// Toric Kleiman criterion over the invariant curves V(tau).
/// Throws NotComplete, NotQCartier.
bool is_nef(const Fan& f, const ToricDivisor& d);
bool is_ample(const Fan& f, const ToricDivisor& d);

/// div(chi^m): coefficients <m, u_rho>.
ToricDivisor principal_divisor(const Fan& f, std::span<const Integer> m);

}  // namespace moritoric
