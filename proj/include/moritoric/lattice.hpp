#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace moritoric {

using Integer = mpz_class;
using Rational = mpq_class;

/// Element of N = Z^n. Length is the ambient dimension.
using LatticeVector = std::vector<Integer>;
using RationalVector = std::vector<Rational>;

/// num / den in lowest terms; den must be nonzero.
inline Rational fraction(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Dense row-major matrix. Rows are stored contiguously; the shape is fixed
/// at construction.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      for (const auto& x : row) data_.push_back(x);
    }
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("ragged matrix literal");
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<T> row_vector(std::size_t i) const {
    auto r = row(i);
    return {r.begin(), r.end()};
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntegerMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);

/// Stacks vectors as the rows of a matrix.
IntegerMatrix matrix_from_rows(std::span<const LatticeVector> rows, std::size_t cols);
RationalMatrix to_rational(const IntegerMatrix& m);
RationalVector to_rational(std::span<const Integer> v);

Integer gcd(std::span<const Integer> v);

/// v / gcd(v). Throws ZeroVector for v = 0.
LatticeVector primitivize(std::span<const Integer> v);
bool is_primitive(std::span<const Integer> v);
bool is_zero(std::span<const Integer> v);
bool is_zero(std::span<const Rational> v);

/// Clears denominators and divides out the content: the primitive integer
/// vector on the ray through v. Throws ZeroVector for v = 0.
LatticeVector primitive_integer_multiple(std::span<const Rational> v);

Rational dot(std::span<const Rational> a, std::span<const Integer> b);
Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Integer dot(std::span<const Integer> a, std::span<const Integer> b);

bool is_integral(const Rational& q);

struct SmithDecomposition {
  IntegerMatrix left;            // unimodular, rows x rows
  std::vector<Integer> diag;     // min(rows, cols) entries, nonnegative
  IntegerMatrix right;           // unimodular, cols x cols
};

/// left * A * right = diag(diag), with diag[i] | diag[i+1] among the nonzero
/// entries. Pivoting on the smallest nonzero absolute value.
SmithDecomposition smith_normal_form(const IntegerMatrix& a);

Integer determinant(const IntegerMatrix& a);
Rational determinant(const RationalMatrix& a);

std::size_t rank(const RationalMatrix& a);
std::size_t rank(const IntegerMatrix& a);

/// Index of the lattice spanned by the rows inside the saturated lattice
/// span_Q(rows) ∩ Z^n. Throws DependentGenerators if the rows are dependent.
Integer sublattice_index(const IntegerMatrix& generators);

/// Reduced row echelon form over Q.
struct EchelonForm {
  RationalMatrix reduced;
  std::vector<std::size_t> pivot_cols;
};
EchelonForm row_reduce(RationalMatrix a);

/// Basis of {x : A x = 0}. One vector per free column, normalized so the
/// first nonzero coordinate is positive.
std::vector<RationalVector> null_space(const RationalMatrix& a);

struct LinearSolution {
  RationalVector particular;             // free variables set to 0
  std::vector<RationalVector> null_basis;
};

/// Solves A x = b over Q; nullopt when the system is inconsistent.
std::optional<LinearSolution> solve_rational(const RationalMatrix& a, std::span<const Rational> b);
std::optional<LinearSolution> solve_rational(const IntegerMatrix& a, std::span<const Rational> b);

/// For generators of a sublattice L of Z^n (rows), returns an n x (n - r)
/// integer matrix P such that x -> x P maps Z^n onto Z^(n-r) with kernel the
/// saturation of L.
IntegerMatrix saturated_quotient_map(const IntegerMatrix& generators, std::size_t ambient_dim);

}  // namespace moritoric
