#include "moritoric/lattice.hpp"

#include <algorithm>
#include <utility>

#include "moritoric/error.hpp"

namespace moritoric {

template <class T>
static Matrix<T> multiply(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) { return multiply(a, b); }
RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) { return multiply(a, b); }

IntegerMatrix matrix_from_rows(std::span<const LatticeVector> rows, std::size_t cols) {
  IntegerMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = Rational(m(i, j));
  return q;
}

RationalVector to_rational(std::span<const Integer> v) {
  RationalVector q;
  q.reserve(v.size());
  for (const auto& x : v) q.emplace_back(x);
  return q;
}

Integer gcd(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

bool is_zero(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

bool is_zero(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

LatticeVector primitivize(std::span<const Integer> v) {
  Integer g = gcd(v);
  if (g == 0) throw Error(ErrorKind::ZeroVector, "cannot primitivize the zero vector");
  LatticeVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x / g);
  return out;
}

bool is_primitive(std::span<const Integer> v) { return gcd(v) == 1; }

LatticeVector primitive_integer_multiple(std::span<const Rational> v) {
  Integer lcm = 1;
  for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  LatticeVector scaled;
  scaled.reserve(v.size());
  for (const auto& x : v) {
    Rational s = x * lcm;
    scaled.push_back(s.get_num());
  }
  return primitivize(scaled);
}

Rational dot(std::span<const Rational> a, std::span<const Integer> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_integral(const Rational& q) { return q.get_den() == 1; }

namespace {

// Truncated quotient, so |a - q*b| < |b|.
Integer tdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void add_row_multiple(IntegerMatrix& m, std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(target, j) += factor * m(source, j);
}

void add_col_multiple(IntegerMatrix& m, std::size_t target, std::size_t source, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, target) += factor * m(i, source);
}

}  // namespace

SmithDecomposition smith_normal_form(const IntegerMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  IntegerMatrix d = a;
  IntegerMatrix left = IntegerMatrix::identity(m);
  IntegerMatrix right = IntegerMatrix::identity(n);

  const std::size_t steps = std::min(m, n);
  for (std::size_t t = 0; t < steps; ++t) {
    while (true) {
      // smallest nonzero |entry| in the trailing block
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (d(i, j) == 0) continue;
          if (pi == m || abs(d(i, j)) < abs(d(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      if (pi == m) {
        // trailing block is zero
        SmithDecomposition out{std::move(left), {}, std::move(right)};
        for (std::size_t k = 0; k < steps; ++k) out.diag.push_back(k < t ? d(k, k) : Integer(0));
        return out;
      }
      d.swap_rows(t, pi);
      left.swap_rows(t, pi);
      d.swap_cols(t, pj);
      right.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = tdiv(d(i, t), d(t, t));
        add_row_multiple(d, i, t, -q);
        add_row_multiple(left, i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = tdiv(d(t, j), d(t, t));
        add_col_multiple(d, j, t, -q);
        add_col_multiple(right, j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility: fold an offending row into row t and go again
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j) {
          if (d(i, j) % d(t, t) != 0) {
            add_row_multiple(d, t, i, 1);
            add_row_multiple(left, t, i, 1);
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < m; ++j) left(t, j) = -left(t, j);
    }
  }
  SmithDecomposition out{std::move(left), {}, std::move(right)};
  for (std::size_t k = 0; k < steps; ++k) out.diag.push_back(d(k, k));
  return out;
}

Integer determinant(const IntegerMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  IntegerMatrix m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && m(swap_with, k) == 0) ++swap_with;
      if (swap_with == n) return 0;
      m.swap_rows(k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Rational determinant(const RationalMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  RationalMatrix m = a;
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      m.swap_rows(p, k);
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k) == 0) continue;
      Rational f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

EchelonForm row_reduce(RationalMatrix a) {
  EchelonForm out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    Rational inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.reduced = std::move(a);
  return out;
}

std::size_t rank(const RationalMatrix& a) { return row_reduce(a).pivot_cols.size(); }
std::size_t rank(const IntegerMatrix& a) { return rank(to_rational(a)); }

Integer sublattice_index(const IntegerMatrix& generators) {
  if (rank(generators) != generators.rows())
    throw Error(ErrorKind::DependentGenerators, "generators are linearly dependent");
  auto snf = smith_normal_form(generators);
  Integer index = 1;
  for (const auto& d : snf.diag)
    if (d != 0) index *= d;
  return index;
}

std::vector<RationalVector> null_space(const RationalMatrix& a) {
  auto ech = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(a.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r) v[ech.pivot_cols[r]] = -ech.reduced(r, free);
    auto first = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (*first < 0)
      for (auto& x : v) x = -x;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<LinearSolution> solve_rational(const RationalMatrix& a, std::span<const Rational> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length mismatch");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto ech = row_reduce(std::move(aug));
  if (!ech.pivot_cols.empty() && ech.pivot_cols.back() == a.cols()) return std::nullopt;
  LinearSolution sol;
  sol.particular.assign(a.cols(), Rational(0));
  for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r)
    sol.particular[ech.pivot_cols[r]] = ech.reduced(r, a.cols());
  sol.null_basis = null_space(a);
  return sol;
}

std::optional<LinearSolution> solve_rational(const IntegerMatrix& a, std::span<const Rational> b) {
  return solve_rational(to_rational(a), b);
}

IntegerMatrix saturated_quotient_map(const IntegerMatrix& generators, std::size_t ambient_dim) {
  if (generators.rows() == 0) return IntegerMatrix::identity(ambient_dim);
  if (generators.cols() != ambient_dim) throw std::invalid_argument("generator dimension mismatch");
  auto snf = smith_normal_form(generators);
  std::size_t r = 0;
  for (const auto& d : snf.diag)
    if (d != 0) ++r;
  IntegerMatrix p(ambient_dim, ambient_dim - r);
  for (std::size_t i = 0; i < ambient_dim; ++i)
    for (std::size_t j = r; j < ambient_dim; ++j) p(i, j - r) = snf.right(i, j);
  return p;
}

}  // namespace moritoric
