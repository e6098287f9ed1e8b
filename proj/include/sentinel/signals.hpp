#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "sentinel/poly_matrix.hpp"

namespace sentinel {

// N components sampled on t = 0..horizon-1. Samples before valid_from are
// not trusted (latency watermark).
template <Scalar F>
class SignalVector {
 public:
  SignalVector() = default;
  explicit SignalVector(std::vector<std::vector<F>> components, std::size_t valid_from = 0);
  static SignalVector zeros(std::size_t components, std::size_t horizon);

  std::size_t size() const { return components_.size(); }
  std::size_t horizon() const { return horizon_; }
  std::size_t valid_from() const { return valid_from_; }

  std::span<const F> component(std::size_t i) const { return components_[i]; }
  const F& operator()(std::size_t i, std::size_t t) const { return components_[i][t]; }
  F& operator()(std::size_t i, std::size_t t) { return components_[i][t]; }

  SignalVector select(std::span<const std::size_t> components) const;
  SignalVector truncated(std::size_t horizon) const;
  SignalVector with_valid_from(std::size_t valid_from) const;
  // Largest |sample| over all components on [valid_from, horizon).
  double magnitude() const;

  // Sums and differences live on the common horizon with the later watermark.
  friend SignalVector operator+(const SignalVector& a, const SignalVector& b) { return combine(a, b, 1); }
  friend SignalVector operator-(const SignalVector& a, const SignalVector& b) { return combine(a, b, -1); }
  friend bool operator==(const SignalVector& a, const SignalVector& b) = default;

 private:
  static SignalVector combine(const SignalVector& a, const SignalVector& b, int sign);

  std::vector<std::vector<F>> components_;
  std::size_t horizon_ = 0;
  std::size_t valid_from_ = 0;
};

struct SupportProfile {
  std::vector<std::size_t> support;  // 0-based component indices
  std::size_t weight() const { return support.size(); }
};

// o(t) = Σ_k p_k u(t+k) for t < T - deg p. Throws HorizonTooShort when
// T < deg p + 1.
template <Scalar F>
std::vector<F> apply_poly(const Polynomial<F>& p, std::span<const F> u);

// Row i of the result is Σ_j P_ij(σ) u_j on horizon T - max deg P.
template <Scalar F>
SignalVector<F> apply_poly_matrix(const PolyMatrix<F>& p, const SignalVector<F>& u);

// Components with a sample above eps_sig * scale on the valid window; scale
// defaults to the signal's own magnitude. Exact mode tests for nonzero.
template <Scalar F>
SupportProfile support(const SignalVector<F>& signal, double eps_sig = kDefaultEpsSig, double scale = -1.0);

struct VoteResult {
  std::size_t winner = 0;                // index of the winning candidate
  std::vector<std::size_t> class_sizes;  // equivalence classes in order of first appearance
  std::vector<std::size_t> class_of;     // class id per candidate
  std::size_t winner_class = 0;
};

// Groups candidates that agree on every sample in [valid_from, horizon) and
// returns the earliest member of the strictly largest group. Throws
// DegenerateInput for no candidates or mismatched shapes, MajorityTie (with
// the tally) when two groups tie for largest.
template <Scalar F>
VoteResult majority_vote(std::span<const SignalVector<F>> candidates, std::size_t valid_from,
                         double eps_sig = kDefaultEpsSig);

template <Scalar F>
VoteResult majority_vote(std::span<const std::vector<F>> candidates, std::size_t valid_from,
                         double eps_sig = kDefaultEpsSig);

// CSV with header `t,y1,...,yN`, one row per sample.
template <Scalar F>
void write_csv(std::ostream& out, const SignalVector<F>& signal);

template <Scalar F>
SignalVector<F> read_csv(std::istream& in);

extern template class SignalVector<Rational>;
extern template class SignalVector<double>;

}  // namespace sentinel
