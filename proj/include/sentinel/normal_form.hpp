#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sentinel/poly_matrix.hpp"

namespace sentinel {

// U·M = upper with U unimodular.
template <Scalar F>
struct RowReduction {
  PolyMatrix<F> upper;
  PolyMatrix<F> transform;
};

// Triangularizes a tall matrix (rows >= cols) with minimal-degree pivoting and
// normalizes every nonzero diagonal entry to be monic.
template <Scalar F>
RowReduction<F> row_reduce_upper(const PolyMatrix<F>& m);

// row_reduce_upper followed by reducing each entry above a nonzero diagonal
// entry modulo that entry (left pivot column first). For square nonsingular
// input this is the row Hermite form.
template <Scalar F>
RowReduction<F> hermite_form(const PolyMatrix<F>& m);

// True iff m has a polynomial left inverse. Throws ShapeError if rows < cols.
template <Scalar F>
bool is_left_unimodular(const PolyMatrix<F>& m);

// X with X·m = I. Throws NoLeftInverse when m is not left unimodular.
template <Scalar F>
PolyMatrix<F> left_inverse(const PolyMatrix<F>& m);

// Blocks of a canonical kernel matrix
//   U·R = [ I_L  -M1 ]
//         [ 0     D  ]
// together with the image representation M = [M1; I_{N-L}], D.
template <Scalar F>
struct CanonicalForm {
  PolyMatrix<F> canonical;
  PolyMatrix<F> transform;
  std::size_t identity_block = 0;
  PolyMatrix<F> image;  // M, N x (N-L)
  PolyMatrix<F> driver;  // D, (N-L) x (N-L), upper triangular
  // Filled when identity_block == N-1: canonical(j, N-1) = -c_j, canonical(N-1, N-1) = a.
  std::optional<Polynomial<F>> a;
  std::vector<Polynomial<F>> c;
};

// Throws SingularKernel when det R = 0 and NotReducible (with the
// lexicographically first failing column subset) when some size-L column
// subset of R is not left unimodular.
template <Scalar F>
CanonicalForm<F> kronecker_hermite(const PolyMatrix<F>& r, std::size_t identity_block);

// Kernel matrix R (N x N) with {y : R(σ)y = 0} = {M(σ)ℓ : D(σ)ℓ = 0}.
// Requires [M; D] left unimodular (NotObservable otherwise).
template <Scalar F>
PolyMatrix<F> kernel_from_image(const PolyMatrix<F>& m, const PolyMatrix<F>& d);

}  // namespace sentinel
