#include "sentinel/security.hpp"

#include <optional>
#include <span>
#include <utility>

#include "sentinel/errors.hpp"
#include "sentinel/normal_form.hpp"
#include "sentinel/subsets.hpp"

namespace sentinel {
namespace {

template <Scalar F>
void check_kernel(const PolyMatrix<F>& r) {
  if (!r.is_square()) throw Error(ErrorKind::ShapeError, "kernel matrix must be square");
  const Polynomial<F> d = det(r);
  if (d.is_zero()) throw Error(ErrorKind::SingularKernel, "det R(xi) = 0");
  if (d.is_nonzero_constant()) throw Error(ErrorKind::ZeroBehavior, "R(xi) is unimodular; the behavior is {0}");
}

// First subset of size k (lexicographic) failing `passes`, if any.
template <typename Pred>
std::optional<std::vector<std::size_t>> first_failure(std::size_t n, std::size_t k, Pred&& passes) {
  std::optional<std::vector<std::size_t>> failure;
  for_each_combination(n, k, [&](std::span<const std::size_t> subset) {
    if (passes(subset)) return true;
    failure.emplace(subset.begin(), subset.end());
    return false;
  });
  return failure;
}

}  // namespace

SecurityReport make_report(std::size_t sensors, std::size_t largest_unimodular, std::vector<std::size_t> witness) {
  SecurityReport report;
  report.sensors = sensors;
  report.largest_unimodular = largest_unimodular;
  report.index = largest_unimodular + 1;
  report.maximally_secure = report.index == sensors;
  report.detectable_weight_max = report.index - 1;
  report.correctable_weight_max = (report.index - 1) / 2;
  report.witness_subset = std::move(witness);
  return report;
}

template <Scalar F>
SecurityReport security_index_kernel(const PolyMatrix<F>& r) {
  check_kernel(r);
  const std::size_t n = r.rows();
  auto passes = [&](std::span<const std::size_t> columns) { return is_left_unimodular(r.select_columns(columns)); };

  // All of R fails (det is not constant), so the witness starts as {0..N-1}.
  std::vector<std::size_t> witness(n);
  for (std::size_t i = 0; i < n; ++i) witness[i] = i;
  for (std::size_t size = n - 1; size >= 1; --size) {
    auto failure = first_failure(n, size, passes);
    if (!failure) return make_report(n, size, std::move(witness));
    witness = std::move(*failure);
  }
  return make_report(n, 0, std::move(witness));
}

template <Scalar F>
SecurityReport security_index_md(const PolyMatrix<F>& m, const PolyMatrix<F>& d) {
  if (!d.is_square() || d.cols() != m.cols()) throw Error(ErrorKind::ShapeError, "M is N x m and D is m x m");
  const Polynomial<F> det_d = det(d);
  if (det_d.is_zero()) throw Error(ErrorKind::SingularKernel, "det D(xi) = 0");
  if (!is_left_unimodular(PolyMatrix<F>::vstack(m, d))) {
    throw Error(ErrorKind::NotObservable, "[M; D] is not left unimodular");
  }
  if (det_d.is_nonzero_constant()) throw Error(ErrorKind::ZeroBehavior, "D(xi) is unimodular; the behavior is {0}");

  const std::size_t n = m.rows();
  auto passes = [&](std::span<const std::size_t> rows) {
    return is_left_unimodular(PolyMatrix<F>::vstack(m.select_rows(rows), d));
  };
  // The empty row subset fails (D alone is not unimodular).
  std::vector<std::size_t> failing;
  for (std::size_t size = 1; size <= n; ++size) {
    auto failure = first_failure(n, size, passes);
    if (!failure) {
      std::vector<std::size_t> complement;
      std::size_t k = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (k < failing.size() && failing[k] == i) {
          ++k;
        } else {
          complement.push_back(i);
        }
      }
      return make_report(n, n - size, std::move(complement));
    }
    failing = std::move(*failure);
  }
  // Unreachable: the full stack [M; D] is left unimodular.
  throw Error(ErrorKind::NotObservable, "no row subset makes [M_J; D] left unimodular");
}

template <Scalar F>
bool is_maximally_secure(const PolyMatrix<F>& r) {
  check_kernel(r);
  const std::size_t n = r.rows();
  return !first_failure(n, n - 1, [&](std::span<const std::size_t> columns) {
            return is_left_unimodular(r.select_columns(columns));
          }).has_value();
}

template SecurityReport security_index_kernel(const PolyMatrix<Rational>&);
template SecurityReport security_index_kernel(const PolyMatrix<double>&);
template SecurityReport security_index_md(const PolyMatrix<Rational>&, const PolyMatrix<Rational>&);
template SecurityReport security_index_md(const PolyMatrix<double>&, const PolyMatrix<double>&);
template bool is_maximally_secure(const PolyMatrix<Rational>&);
template bool is_maximally_secure(const PolyMatrix<double>&);

}  // namespace sentinel
