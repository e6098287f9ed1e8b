#include "sentinel/poly_matrix.hpp"

#include <algorithm>
#include <utility>

#include "sentinel/detail/elimination.hpp"
#include "sentinel/errors.hpp"

namespace sentinel {

template <Scalar F>
PolyMatrix<F>::PolyMatrix(std::size_t rows, std::size_t cols, double eps_zero)
    : rows_(rows), cols_(cols), entries_(rows * cols, Polynomial<F>({}, eps_zero)), eps_zero_(eps_zero) {}

template <Scalar F>
PolyMatrix<F>::PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Polynomial<F>> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw Error(ErrorKind::ShapeError, "entry count does not match rows x cols");
  for (const auto& e : entries_) eps_zero_ = std::max(eps_zero_, e.eps_zero());
}

template <Scalar F>
PolyMatrix<F>::PolyMatrix(std::initializer_list<std::initializer_list<Polynomial<F>>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorKind::ShapeError, "ragged matrix literal");
    for (const auto& e : row) {
      entries_.push_back(e);
      eps_zero_ = std::max(eps_zero_, e.eps_zero());
    }
  }
}

template <Scalar F>
PolyMatrix<F> PolyMatrix<F>::identity(std::size_t n, double eps_zero) {
  PolyMatrix out(n, n, eps_zero);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = Polynomial<F>::constant(F(1), eps_zero);
  return out;
}

template <Scalar F>
PolyMatrix<F> PolyMatrix<F>::constant(std::size_t rows, std::size_t cols, std::span<const F> values,
                                      double eps_zero) {
  if (values.size() != rows * cols) throw Error(ErrorKind::ShapeError, "constant matrix size mismatch");
  PolyMatrix out(rows, cols, eps_zero);
  for (std::size_t k = 0; k < values.size(); ++k) out.entries_[k] = Polynomial<F>::constant(values[k], eps_zero);
  return out;
}

template <Scalar F>
PolyMatrix<F> PolyMatrix<F>::shift_minus(std::size_t n, std::span<const F> a, double eps_zero) {
  if (a.size() != n * n) throw Error(ErrorKind::ShapeError, "state matrix must be square");
  PolyMatrix out(n, n, eps_zero);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<F> c{F(-a[i * n + j])};
      if (i == j) c.push_back(F(1));
      out(i, j) = Polynomial<F>(std::move(c), eps_zero);
    }
  }
  return out;
}

template <Scalar F>
PolyMatrix<F> PolyMatrix<F>::select_columns(std::span<const std::size_t> columns) const {
  PolyMatrix out(rows_, columns.size(), eps_zero_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (columns[k] >= cols_) throw Error(ErrorKind::ShapeError, "column index out of range");
      out(i, k) = (*this)(i, columns[k]);
    }
  }
  return out;
}

template <Scalar F>
PolyMatrix<F> PolyMatrix<F>::select_rows(std::span<const std::size_t> rows) const {
  PolyMatrix out(rows.size(), cols_, eps_zero_);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k] >= rows_) throw Error(ErrorKind::ShapeError, "row index out of range");
    for (std::size_t j = 0; j < cols_; ++j) out(k, j) = (*this)(rows[k], j);
  }
  return out;
}

template <Scalar F>
PolyMatrix<F> PolyMatrix<F>::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                                   std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) throw Error(ErrorKind::ShapeError, "block out of range");
  PolyMatrix out(nrows, ncols, eps_zero_);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) out(i, j) = (*this)(row0 + i, col0 + j);
  return out;
}

template <Scalar F>
PolyMatrix<F> PolyMatrix<F>::vstack(const PolyMatrix& top, const PolyMatrix& bottom) {
  if (top.cols_ != bottom.cols_) throw Error(ErrorKind::ShapeError, "vstack column mismatch");
  PolyMatrix out(top.rows_ + bottom.rows_, top.cols_, std::max(top.eps_zero_, bottom.eps_zero_));
  std::copy(top.entries_.begin(), top.entries_.end(), out.entries_.begin());
  std::copy(bottom.entries_.begin(), bottom.entries_.end(),
            out.entries_.begin() + static_cast<std::ptrdiff_t>(top.entries_.size()));
  return out;
}

template <Scalar F>
PolyMatrix<F> PolyMatrix<F>::hstack(const PolyMatrix& left, const PolyMatrix& right) {
  if (left.rows_ != right.rows_) throw Error(ErrorKind::ShapeError, "hstack row mismatch");
  PolyMatrix out(left.rows_, left.cols_ + right.cols_, std::max(left.eps_zero_, right.eps_zero_));
  for (std::size_t i = 0; i < left.rows_; ++i) {
    for (std::size_t j = 0; j < left.cols_; ++j) out(i, j) = left(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) out(i, left.cols_ + j) = right(i, j);
  }
  return out;
}

template <Scalar F>
void PolyMatrix<F>::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

template <Scalar F>
void PolyMatrix<F>::subtract_row_multiple(std::size_t target, std::size_t source, const Polynomial<F>& factor) {
  if (factor.is_zero()) return;
  for (std::size_t j = 0; j < cols_; ++j) {
    if ((*this)(source, j).is_zero()) continue;
    (*this)(target, j) -= factor * (*this)(source, j);
  }
}

template <Scalar F>
void PolyMatrix<F>::scale_row(std::size_t row, const F& factor) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(row, j) *= factor;
}

template <Scalar F>
Degree PolyMatrix<F>::max_degree() const {
  Degree d = Degree::neg_infinity();
  for (const auto& e : entries_) d = std::max(d, e.degree());
  return d;
}

template <Scalar F>
bool PolyMatrix<F>::is_identity() const {
  if (!is_square()) return false;
  const Polynomial<F> one = Polynomial<F>::constant(F(1));
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const auto& e = (*this)(i, j);
      if (i == j ? !(e == one) : !e.is_zero()) return false;
    }
  }
  return true;
}

template <Scalar F>
PolyMatrix<F> PolyMatrix<F>::operator-() const {
  PolyMatrix out = *this;
  for (auto& e : out.entries_) e = -e;
  return out;
}

template <Scalar F>
bool PolyMatrix<F>::approx_equal(const PolyMatrix& other, double rel_tol) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (!entries_[k].approx_equal(other.entries_[k], rel_tol)) return false;
  }
  return true;
}

template <Scalar F>
PolyMatrix<F> operator*(const PolyMatrix<F>& a, const PolyMatrix<F>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::ShapeError, "matrix product shapes do not conform");
  PolyMatrix<F> out(a.rows(), b.cols(), std::max(a.eps_zero(), b.eps_zero()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Polynomial<F> acc({}, out.eps_zero());
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        acc += a(i, k) * b(k, j);
      }
      out(i, j) = std::move(acc);
    }
  }
  return out;
}

template <Scalar F>
PolyMatrix<F> operator+(const PolyMatrix<F>& a, const PolyMatrix<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::ShapeError, "matrix sum shapes differ");
  PolyMatrix<F> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) += b(i, j);
  return out;
}

template <Scalar F>
PolyMatrix<F> operator-(const PolyMatrix<F>& a, const PolyMatrix<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::ShapeError, "matrix difference shapes differ");
  PolyMatrix<F> out = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) -= b(i, j);
  return out;
}

template <Scalar F>
Polynomial<F> det(const PolyMatrix<F>& a) {
  if (!a.is_square()) throw Error(ErrorKind::ShapeError, "determinant of a non-square matrix");
  PolyMatrix<F> work = a;
  const int sign = detail::triangularize(work, static_cast<PolyMatrix<F>*>(nullptr));
  Polynomial<F> out = Polynomial<F>::constant(F(sign), a.eps_zero());
  for (std::size_t i = 0; i < work.rows(); ++i) out *= work(i, i);
  return out;
}

template class PolyMatrix<Rational>;
template class PolyMatrix<double>;
template PolyMatrix<Rational> operator*(const PolyMatrix<Rational>&, const PolyMatrix<Rational>&);
template PolyMatrix<double> operator*(const PolyMatrix<double>&, const PolyMatrix<double>&);
template PolyMatrix<Rational> operator+(const PolyMatrix<Rational>&, const PolyMatrix<Rational>&);
template PolyMatrix<double> operator+(const PolyMatrix<double>&, const PolyMatrix<double>&);
template PolyMatrix<Rational> operator-(const PolyMatrix<Rational>&, const PolyMatrix<Rational>&);
template PolyMatrix<double> operator-(const PolyMatrix<double>&, const PolyMatrix<double>&);
template Polynomial<Rational> det(const PolyMatrix<Rational>&);
template Polynomial<double> det(const PolyMatrix<double>&);

}  // namespace sentinel
