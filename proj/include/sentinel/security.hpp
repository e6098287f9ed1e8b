#pragma once

#include <cstddef>
#include <vector>

#include "sentinel/poly_matrix.hpp"

namespace sentinel {

// δ(Σ) and the attack-weight thresholds it implies.
struct SecurityReport {
  std::size_t index = 0;          // δ = L + 1
  std::size_t sensors = 0;        // N
  std::size_t largest_unimodular = 0;  // L
  bool maximally_secure = false;
  std::size_t detectable_weight_max = 0;   // δ - 1
  std::size_t correctable_weight_max = 0;  // largest t with 2t < δ
  // Sensors (0-based) carrying a nonzero behavior trajectory of weight <= δ:
  // the lexicographically first failing column subset of size L+1 for a
  // kernel matrix, the complement of the first failing row subset for (M, D).
  std::vector<std::size_t> witness_subset;
};

// Scans subset cardinalities downward from N-1. Throws SingularKernel for
// det R = 0 and ZeroBehavior when det R is a nonzero constant.
template <Scalar F>
SecurityReport security_index_kernel(const PolyMatrix<F>& r);

// δ = N + 1 - L~ for the image representation [I; 0]y = [M; D]ℓ. Throws
// SingularKernel for det D = 0, NotObservable when [M; D] is not left
// unimodular, ZeroBehavior when det D is a nonzero constant.
template <Scalar F>
SecurityReport security_index_md(const PolyMatrix<F>& m, const PolyMatrix<F>& d);

// All N x (N-1) column submatrices left unimodular.
template <Scalar F>
bool is_maximally_secure(const PolyMatrix<F>& r);

SecurityReport make_report(std::size_t sensors, std::size_t largest_unimodular,
                           std::vector<std::size_t> witness);

}  // namespace sentinel
