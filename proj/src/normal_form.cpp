#include "sentinel/normal_form.hpp"

#include <utility>

#include "sentinel/detail/elimination.hpp"
#include "sentinel/errors.hpp"
#include "sentinel/subsets.hpp"

namespace sentinel {
namespace {

template <Scalar F>
void reduce_above_diagonal(RowReduction<F>& rr) {
  PolyMatrix<F>& t = rr.upper;
  const std::size_t steps = std::min(t.rows(), t.cols());
  for (std::size_t col = 0; col < steps; ++col) {
    if (t(col, col).is_zero()) continue;
    for (std::size_t row = 0; row < col; ++row) {
      if (t(row, col).is_zero()) continue;
      DivMod<F> qr = divmod(t(row, col), t(col, col));
      if (qr.quotient.is_zero()) continue;
      t.subtract_row_multiple(row, col, qr.quotient);
      t(row, col) = std::move(qr.remainder);
      rr.transform.subtract_row_multiple(row, col, qr.quotient);
    }
  }
}

}  // namespace

template <Scalar F>
RowReduction<F> row_reduce_upper(const PolyMatrix<F>& m) {
  if (m.rows() < m.cols()) throw Error(ErrorKind::ShapeError, "row reduction needs rows >= cols");
  RowReduction<F> rr{m, PolyMatrix<F>::identity(m.rows(), m.eps_zero())};
  detail::triangularize(rr.upper, &rr.transform);
  for (std::size_t i = 0; i < m.cols(); ++i) {
    if (rr.upper(i, i).is_zero()) continue;
    const F inv = F(1) / rr.upper(i, i).leading_coefficient();
    rr.upper.scale_row(i, inv);
    rr.upper(i, i) = rr.upper(i, i).monic();
    rr.transform.scale_row(i, inv);
  }
  return rr;
}

template <Scalar F>
RowReduction<F> hermite_form(const PolyMatrix<F>& m) {
  RowReduction<F> rr = row_reduce_upper(m);
  reduce_above_diagonal(rr);
  return rr;
}

template <Scalar F>
bool is_left_unimodular(const PolyMatrix<F>& m) {
  if (m.rows() < m.cols()) throw Error(ErrorKind::ShapeError, "left unimodularity needs rows >= cols");
  if (m.cols() == 0) return true;
  PolyMatrix<F> work = m;
  detail::triangularize(work, static_cast<PolyMatrix<F>*>(nullptr));
  for (std::size_t i = 0; i < m.cols(); ++i) {
    if (!work(i, i).is_nonzero_constant()) return false;
  }
  return true;
}

template <Scalar F>
PolyMatrix<F> left_inverse(const PolyMatrix<F>& m) {
  if (m.rows() < m.cols()) throw Error(ErrorKind::ShapeError, "left inverse needs rows >= cols");
  RowReduction<F> rr = hermite_form(m);
  for (std::size_t i = 0; i < m.cols(); ++i) {
    if (!rr.upper(i, i).is_nonzero_constant()) throw Error(ErrorKind::NoLeftInverse, "matrix is not left unimodular");
  }
  return rr.transform.block(0, 0, m.cols(), m.rows());
}

template <Scalar F>
CanonicalForm<F> kronecker_hermite(const PolyMatrix<F>& r, std::size_t identity_block) {
  if (!r.is_square()) throw Error(ErrorKind::ShapeError, "kernel matrix must be square");
  const std::size_t n = r.rows();
  if (identity_block >= n) throw Error(ErrorKind::ShapeError, "identity block must be smaller than N");
  if (det(r).is_zero()) throw Error(ErrorKind::SingularKernel, "det R(xi) = 0");

  if (identity_block > 0) {
    bool all_pass = true;
    std::vector<std::size_t> witness;
    for_each_combination(n, identity_block, [&](std::span<const std::size_t> subset) {
      if (is_left_unimodular(r.select_columns(subset))) return true;
      all_pass = false;
      witness.assign(subset.begin(), subset.end());
      return false;
    });
    if (!all_pass) {
      throw Error(ErrorKind::NotReducible, "a column subset of the requested size is not left unimodular",
                  std::move(witness));
    }
  }

  RowReduction<F> rr = hermite_form(r);
  CanonicalForm<F> out;
  out.identity_block = identity_block;
  const std::size_t tail = n - identity_block;
  out.image = PolyMatrix<F>::vstack(-rr.upper.block(0, identity_block, identity_block, tail),
                                    PolyMatrix<F>::identity(tail, r.eps_zero()));
  out.driver = rr.upper.block(identity_block, identity_block, tail, tail);
  if (identity_block + 1 == n) {
    out.a = rr.upper(n - 1, n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) out.c.push_back(-rr.upper(j, n - 1));
  }
  out.canonical = std::move(rr.upper);
  out.transform = std::move(rr.transform);
  return out;
}

template <Scalar F>
PolyMatrix<F> kernel_from_image(const PolyMatrix<F>& m, const PolyMatrix<F>& d) {
  if (!d.is_square() || d.cols() != m.cols()) throw Error(ErrorKind::ShapeError, "M is N x m and D is m x m");
  const PolyMatrix<F> stack = PolyMatrix<F>::vstack(m, d);
  RowReduction<F> rr = hermite_form(stack);
  for (std::size_t i = 0; i < stack.cols(); ++i) {
    if (!rr.upper(i, i).is_nonzero_constant()) throw Error(ErrorKind::NotObservable, "[M; D] is not left unimodular");
  }
  // W·[M; D] = [I_m; 0], so the bottom rows of W·[I_N; 0] annihilate exactly
  // the outputs M(σ)ℓ with D(σ)ℓ = 0.
  return rr.transform.block(m.cols(), 0, m.rows(), m.rows());
}

#define SENTINEL_INSTANTIATE(F)                                                    \
  template RowReduction<F> row_reduce_upper(const PolyMatrix<F>&);                 \
  template RowReduction<F> hermite_form(const PolyMatrix<F>&);                     \
  template bool is_left_unimodular(const PolyMatrix<F>&);                          \
  template PolyMatrix<F> left_inverse(const PolyMatrix<F>&);                       \
  template CanonicalForm<F> kronecker_hermite(const PolyMatrix<F>&, std::size_t);  \
  template PolyMatrix<F> kernel_from_image(const PolyMatrix<F>&, const PolyMatrix<F>&);
SENTINEL_INSTANTIATE(Rational)
SENTINEL_INSTANTIATE(double)
#undef SENTINEL_INSTANTIATE

}  // namespace sentinel
