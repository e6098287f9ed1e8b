#pragma once

#include <cmath>
#include <cstddef>
#include <optional>

#include "sentinel/poly_matrix.hpp"

namespace sentinel::detail {

// In-place Euclidean triangularization: for each column, repeatedly pick the
// nonzero entry of minimal degree on or below the diagonal as pivot (lowest
// row on ties; tolerant mode prefers the largest leading coefficient) and replace every other entry below by its remainder.
// The same row operations are applied to `transform` when given. Returns the
// determinant sign contributed by row swaps.
template <Scalar F>
int triangularize(PolyMatrix<F>& work, PolyMatrix<F>* transform) {
  int sign = 1;
  const std::size_t steps = std::min(work.rows(), work.cols());
  for (std::size_t col = 0; col < steps; ++col) {
    for (;;) {
      std::optional<std::size_t> pivot;
      for (std::size_t r = col; r < work.rows(); ++r) {
        if (work(r, col).is_zero()) continue;
        if (!pivot || work(r, col).degree() < work(*pivot, col).degree()) {
          pivot = r;
        } else if constexpr (!is_exact_v<F>) {
          if (work(r, col).degree() == work(*pivot, col).degree() &&
              std::abs(work(r, col).leading_coefficient()) > std::abs(work(*pivot, col).leading_coefficient())) {
            pivot = r;
          }
        }
      }
      if (!pivot) break;
      if (*pivot != col) {
        work.swap_rows(*pivot, col);
        if (transform) transform->swap_rows(*pivot, col);
        sign = -sign;
      }
      bool clean = true;
      for (std::size_t r = col + 1; r < work.rows(); ++r) {
        if (work(r, col).is_zero()) continue;
        DivMod<F> qr = divmod(work(r, col), work(col, col));
        work.subtract_row_multiple(r, col, qr.quotient);
        // The division already produced the exact remainder; keep it rather
        // than the recomputed difference.
        work(r, col) = std::move(qr.remainder);
        if (transform) transform->subtract_row_multiple(r, col, qr.quotient);
        if (!work(r, col).is_zero()) clean = false;
      }
      if (clean) break;
    }
  }
  return sign;
}

}  // namespace sentinel::detail
