#pragma once

// Exact integer/rational scalars and a small dense row-major matrix type.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flatcollapse/error.hpp"

namespace flatcollapse {

using Int = mpz_class;
using Rat = mpq_class;
using VecQ = std::vector<Rat>;
using VecZ = std::vector<Int>;

/// Builds num/den in lowest terms with a positive denominator.
Rat make_rat(const Int& num, const Int& den);

/// Parses "p/q", "p" or "-p/q". Throws ParseError on malformed input or a
/// zero denominator.
Rat parse_rat(std::string_view text);

std::string to_string(const Rat& r);
std::string to_string(const Int& z);

inline bool is_zero(const Rat& x) { return sgn(x) == 0; }
inline bool is_zero(const Int& x) { return sgn(x) == 0; }
inline bool is_zero(double x) { return x == 0.0; }
inline bool is_integer(const Rat& x) { return x.get_den() == 1; }

/// Floor of a/b for b != 0.
Int floor_div(const Int& a, const Int& b);

/// x reduced into [0, 1).
Rat frac(const Rat& x);

Int lcm_of_denominators(const VecQ& v);

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error(ErrorCode::kInvalidArgument, "ragged matrix literal");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw Error(ErrorCode::kInvalidArgument, "row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }
  void set_row(std::size_t i, const std::vector<T>& r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = r[j];
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  void append_row(const std::vector<T>& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw Error(ErrorCode::kInvalidArgument, "row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }
  /// Keeps the first n rows.
  Matrix top_rows(std::size_t n) const {
    Matrix m(n, cols_);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator<(const Matrix& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    return data_ < o.data_;
  }

  const std::vector<T>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::kInvalidArgument, "matrix product shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <typename T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::kInvalidArgument, "matrix sum shape mismatch");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

template <typename T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::kInvalidArgument, "matrix difference shape mismatch");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

template <typename T>
Matrix<T> scaled(const Matrix<T>& a, const T& s) {
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= s;
  return c;
}

template <typename T>
bool is_zero_matrix(const Matrix<T>& a) {
  for (const auto& x : a.data())
    if (!is_zero(x)) return false;
  return true;
}

using MatQ = Matrix<Rat>;
using MatZ = Matrix<Int>;

MatQ to_rational(const MatZ& m);
/// Returns the integer matrix equal to m, or nullopt if some entry is not integral.
std::optional<MatZ> to_integer(const MatQ& m);

/// Column action m * v.
VecQ mat_vec(const MatQ& m, const VecQ& v);
VecQ mat_vec(const MatZ& m, const VecQ& v);

VecQ add(const VecQ& a, const VecQ& b);
VecQ sub(const VecQ& a, const VecQ& b);
VecQ scale(const VecQ& a, const Rat& s);
VecQ negate(const VecQ& a);
VecQ zero_vector(std::size_t n);
VecQ unit_vector(std::size_t n, std::size_t i);
bool is_zero_vector(const VecQ& v);
VecQ to_rational(const VecZ& v);
/// Each entry reduced into [0, 1).
VecQ reduce_mod_one(const VecQ& v);
bool is_integral(const VecQ& v);

// ---------------------------------------------------------------------------
// Linear algebra over a field. F needs +, -, *, / and an is_zero overload.

/// Reduced row echelon form in place; returns pivot columns.
template <typename F>
std::vector<std::size_t> rref_in_place(Matrix<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    const F piv = m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = m(r, j) / piv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      const F f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Nonzero rows of the RREF.
template <typename F>
Matrix<F> row_space_basis(Matrix<F> m) {
  const auto pivots = rref_in_place(m);
  return m.top_rows(pivots.size());
}

/// Basis (as rows) of {x : m x = 0}. zero/one supply field constants.
template <typename F>
Matrix<F> nullspace(Matrix<F> m, const F& zero, const F& one) {
  const std::size_t n = m.cols();
  const auto pivots = rref_in_place(m);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix<F> basis(0, n, zero);
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(n, zero);
    v[free] = one;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = zero - m(r, free);
    basis.append_row(v);
  }
  return basis;
}

std::size_t rank(const MatQ& m);
MatQ nullspace(const MatQ& m);
/// Some x with m x = b, if one exists.
std::optional<VecQ> solve(const MatQ& m, const VecQ& b);
/// Inverse of a square matrix; throws InvalidArgument if singular.
MatQ inverse(const MatQ& m);
Rat determinant(const MatQ& m);
Int determinant(const MatZ& m);
Rat trace(const MatQ& m);

}  // namespace flatcollapse
