#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "sentinel/polynomial.hpp"

namespace sentinel {

// Dense row-major matrix of polynomials sharing one coefficient field.
template <Scalar F>
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols, double eps_zero = kDefaultEpsZero);
  PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial<F>> entries);
  PolyMatrix(std::initializer_list<std::initializer_list<Polynomial<F>>> rows);

  static PolyMatrix identity(std::size_t n, double eps_zero = kDefaultEpsZero);
  // A constant matrix (entries given row-major) lifted into the polynomial ring.
  static PolyMatrix constant(std::size_t rows, std::size_t cols, std::span<const F> values,
                             double eps_zero = kDefaultEpsZero);
  // ξ·I - A for square constant A (row-major).
  static PolyMatrix shift_minus(std::size_t n, std::span<const F> a, double eps_zero = kDefaultEpsZero);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  double eps_zero() const { return eps_zero_; }

  const Polynomial<F>& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Polynomial<F>& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  PolyMatrix select_columns(std::span<const std::size_t> columns) const;
  PolyMatrix select_rows(std::span<const std::size_t> rows) const;
  PolyMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
  static PolyMatrix vstack(const PolyMatrix& top, const PolyMatrix& bottom);
  static PolyMatrix hstack(const PolyMatrix& left, const PolyMatrix& right);

  void swap_rows(std::size_t a, std::size_t b);
  // row[target] -= factor * row[source]
  void subtract_row_multiple(std::size_t target, std::size_t source, const Polynomial<F>& factor);
  void scale_row(std::size_t row, const F& factor);

  Degree max_degree() const;
  bool is_identity() const;

  PolyMatrix operator-() const;
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }
  bool approx_equal(const PolyMatrix& other, double rel_tol) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Polynomial<F>> entries_;
  double eps_zero_ = kDefaultEpsZero;
};

// Throws ShapeError on non-conformable operands.
template <Scalar F>
PolyMatrix<F> operator*(const PolyMatrix<F>& a, const PolyMatrix<F>& b);
template <Scalar F>
PolyMatrix<F> operator+(const PolyMatrix<F>& a, const PolyMatrix<F>& b);
template <Scalar F>
PolyMatrix<F> operator-(const PolyMatrix<F>& a, const PolyMatrix<F>& b);

// Determinant by Euclidean triangularization (row swaps and polynomial row
// subtractions only, so det is the signed product of the diagonal).
template <Scalar F>
Polynomial<F> det(const PolyMatrix<F>& a);

extern template class PolyMatrix<Rational>;
extern template class PolyMatrix<double>;

}  // namespace sentinel
