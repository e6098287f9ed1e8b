#include "sentinel/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "sentinel/errors.hpp"
#include "sentinel/subsets.hpp"

namespace sentinel {
namespace {

std::size_t degree_or_zero(Degree d) { return d.is_neg_infinity() ? 0 : static_cast<std::size_t>(d.value()); }

template <Scalar F>
double row_coefficient_bound(const PolyMatrix<F>& r) {
  double bound = 0.0;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < r.cols(); ++j)
      for (const F& c : r(i, j).coefficients()) row += ScalarTraits<F>::magnitude(c);
    bound = std::max(bound, row);
  }
  return bound;
}

void require_horizon(std::size_t horizon, std::size_t needed) {
  if (horizon < needed) {
    throw Error(ErrorKind::HorizonTooShort,
                "horizon " + std::to_string(horizon) + " < " + std::to_string(needed) + " needed for correction");
  }
}

// ℓ̂ explains r_J when M_J(σ)ℓ̂ = r_J and D(σ)ℓ̂ = 0 on the valid window.
template <Scalar F>
bool explains(const PolyMatrix<F>& m, const PolyMatrix<F>& d, const SignalVector<F>& local,
              const SignalVector<F>& estimate, double bound, double eps_sig) {
  const double scale = std::max(local.magnitude(), estimate.magnitude()) * bound;
  const SignalVector<F> mismatch = apply_poly_matrix(m, estimate) - local;
  if (support(mismatch, eps_sig, scale).weight() > 0) return false;
  const SignalVector<F> drift = apply_poly_matrix(d, estimate).with_valid_from(estimate.valid_from());
  return support(drift, eps_sig, scale).weight() == 0;
}

}  // namespace

bool majority_margin_holds(std::size_t sensors, std::size_t security_index, std::size_t attacked) {
  const std::size_t k = sensors + 1 - security_index;
  return binomial(sensors - attacked, k) > binomial(sensors - security_index + attacked, k);
}

template <Scalar F>
DetectionVerdict<F> detect(const PolyMatrix<F>& r, const SignalVector<F>& received, double eps_sig) {
  if (r.cols() != received.size()) throw Error(ErrorKind::ShapeError, "received signal width must equal N");
  DetectionVerdict<F> verdict;
  verdict.residual = apply_poly_matrix(r, received);
  const double scale = received.magnitude() * row_coefficient_bound(r);
  verdict.residual_support = support(verdict.residual, eps_sig, scale);
  verdict.attacked = verdict.residual_support.weight() > 0;
  return verdict;
}

template <Scalar F>
ObserverBank<F> build_observers_ms(const CanonicalForm<F>& canonical) {
  const std::size_t n = canonical.canonical.rows();
  if (!canonical.a || canonical.identity_block + 1 != n) {
    throw Error(ErrorKind::NotMaximallySecure, "canonical form does not have an identity block of size N-1");
  }
  ObserverBank<F> bank;
  bank.kind = ObserverKind::maximally_secure;
  bank.sensors = n;
  bank.security_index = n;
  bank.a = *canonical.a;
  std::size_t max_c = 0;
  for (std::size_t j = 0; j < canonical.c.size(); ++j) {
    const Polynomial<F>& c = canonical.c[j];
    if (c.is_zero()) {
      throw Error(ErrorKind::NotMaximallySecure, "c_" + std::to_string(j + 1) + " is zero");
    }
    Bezout<F> b = ext_gcd(c, bank.a);
    if (!b.gcd.is_nonzero_constant()) {
      throw Error(ErrorKind::NotMaximallySecure, "GCD(c_" + std::to_string(j + 1) + ", a) is not 1");
    }
    bank.latency = std::max(bank.latency, degree_or_zero(b.p.degree()));
    max_c = std::max(max_c, degree_or_zero(c.degree()));
    bank.scalar_observers.push_back({std::move(b.p), std::move(b.q), c});
  }
  bank.regen_latency = bank.latency + max_c;
  bank.image = canonical.image;
  bank.driver = canonical.driver;
  return bank;
}

template <Scalar F>
ObserverBank<F> build_observers_general(const PolyMatrix<F>& m, const PolyMatrix<F>& d, std::size_t security_index) {
  const std::size_t n = m.rows();
  if (!d.is_square() || d.cols() != m.cols()) throw Error(ErrorKind::ShapeError, "M is N x m and D is m x m");
  if (security_index < 1 || security_index > n) {
    throw Error(ErrorKind::InconsistentIndex, "security index must lie in [1, N]");
  }
  if (!majority_margin_holds(n, security_index, (security_index - 1) / 2)) {
    throw Error(ErrorKind::InconsistentIndex, "majority counting bound fails for this (N, delta)");
  }
  ObserverBank<F> bank;
  bank.kind = ObserverKind::general;
  bank.sensors = n;
  bank.security_index = security_index;
  bank.image = m;
  bank.driver = d;
  const std::size_t k = n + 1 - security_index;
  const std::size_t width = m.cols();
  for_each_combination(n, k, [&](std::span<const std::size_t> subset) {
    const PolyMatrix<F> stack = PolyMatrix<F>::vstack(m.select_rows(subset), d);
    if (!is_left_unimodular(stack)) {
      std::vector<std::size_t> witness(subset.begin(), subset.end());
      throw Error(ErrorKind::InconsistentIndex, "[M_J; D] is not left unimodular for a subset of size N+1-delta",
                  std::move(witness));
    }
    const PolyMatrix<F> x = left_inverse(stack);
    SubsetObserver<F> obs{std::vector<std::size_t>(subset.begin(), subset.end()), x.block(0, 0, width, k),
                          x.block(0, k, width, width)};
    bank.latency = std::max(bank.latency, degree_or_zero(obs.p.max_degree()));
    bank.subset_observers.push_back(std::move(obs));
    return true;
  });
  bank.regen_latency = bank.latency + degree_or_zero(m.max_degree());
  return bank;
}

template <Scalar F>
CorrectionResult<F> correct_ms(const ObserverBank<F>& bank, const SignalVector<F>& received, double eps_sig) {
  if (bank.kind != ObserverKind::maximally_secure) throw Error(ErrorKind::DegenerateInput, "bank is not maximally secure");
  const std::size_t n = bank.sensors;
  if (received.size() != n) throw Error(ErrorKind::ShapeError, "received signal width must equal N");
  require_horizon(received.horizon(), min_correction_horizon(bank));

  const std::size_t latency = bank.latency;
  const std::size_t aligned = received.horizon() - latency;
  CorrectionResult<F> result;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    std::vector<F> out = apply_poly(bank.scalar_observers[j].p, received.component(j));
    out.resize(aligned);
    result.candidates.emplace_back(std::vector<std::vector<F>>{std::move(out)}, latency);
  }
  {
    const auto last = received.component(n - 1);
    result.candidates.emplace_back(std::vector<std::vector<F>>{std::vector<F>(last.begin(), last.begin() + aligned)},
                                   latency);
  }
  result.vote = majority_vote(std::span<const SignalVector<F>>(result.candidates), latency, eps_sig);
  result.latent = result.candidates[result.vote.winner];

  const std::size_t out_latency = bank.regen_latency - latency;
  const std::size_t horizon = aligned - out_latency;
  std::vector<std::vector<F>> outputs;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    std::vector<F> y = apply_poly(bank.scalar_observers[j].c, result.latent.component(0));
    y.resize(horizon);
    outputs.push_back(std::move(y));
  }
  const auto latent = result.latent.component(0);
  outputs.emplace_back(latent.begin(), latent.begin() + horizon);
  result.valid_from = bank.regen_latency;
  result.corrected = SignalVector<F>(std::move(outputs), result.valid_from);
  return result;
}

template <Scalar F>
CorrectionResult<F> correct_general(const ObserverBank<F>& bank, const SignalVector<F>& received, double eps_sig) {
  if (bank.kind != ObserverKind::general) throw Error(ErrorKind::DegenerateInput, "bank is not a general bank");
  if (received.size() != bank.sensors) throw Error(ErrorKind::ShapeError, "received signal width must equal N");
  require_horizon(received.horizon(), min_correction_horizon(bank));

  const std::size_t latency = bank.latency;
  const std::size_t aligned = received.horizon() - latency;
  const double bound = std::max({row_coefficient_bound(bank.image), row_coefficient_bound(bank.driver), 1.0});
  CorrectionResult<F> result;
  std::vector<SignalVector<F>> ballots;
  for (std::size_t k = 0; k < bank.subset_observers.size(); ++k) {
    const auto& obs = bank.subset_observers[k];
    const SignalVector<F> local = received.select(obs.sensors);
    const SignalVector<F> estimate =
        apply_poly_matrix(obs.p, local).truncated(aligned).with_valid_from(latency);
    result.candidates.push_back(estimate);
    if (explains(bank.image.select_rows(obs.sensors), bank.driver, local, estimate, bound, eps_sig)) {
      result.voters.push_back(k);
      ballots.push_back(estimate);
    }
  }
  if (ballots.empty()) throw Error(ErrorKind::MajorityTie, "no subset estimate is consistent with its sensors");
  result.vote = majority_vote(std::span<const SignalVector<F>>(ballots), latency, eps_sig);
  result.vote.winner = result.voters[result.vote.winner];
  result.latent = result.candidates[result.vote.winner];
  result.corrected = apply_poly_matrix(bank.image, result.latent);
  result.valid_from = bank.regen_latency;
  result.corrected = result.corrected.with_valid_from(result.valid_from);
  return result;
}

template <Scalar F>
CorrectionResult<F> correct(const ObserverBank<F>& bank, const SignalVector<F>& received, double eps_sig) {
  return bank.kind == ObserverKind::maximally_secure ? correct_ms(bank, received, eps_sig)
                                                     : correct_general(bank, received, eps_sig);
}

template <Scalar F>
SystemAnalysis<F> analyze_system(const PolyMatrix<F>& kernel) {
  SystemAnalysis<F> analysis;
  analysis.kernel = kernel;
  analysis.report = security_index_kernel(kernel);
  analysis.canonical = kronecker_hermite(kernel, analysis.report.index - 1);
  if (analysis.report.maximally_secure) {
    analysis.bank = build_observers_ms(analysis.canonical);
  } else {
    analysis.bank = build_observers_general(analysis.canonical.image, analysis.canonical.driver, analysis.report.index);
  }
  return analysis;
}

#define SENTINEL_INSTANTIATE(F)                                                                                  \
  template DetectionVerdict<F> detect(const PolyMatrix<F>&, const SignalVector<F>&, double);                     \
  template ObserverBank<F> build_observers_ms(const CanonicalForm<F>&);                                          \
  template ObserverBank<F> build_observers_general(const PolyMatrix<F>&, const PolyMatrix<F>&, std::size_t);     \
  template CorrectionResult<F> correct_ms(const ObserverBank<F>&, const SignalVector<F>&, double);               \
  template CorrectionResult<F> correct_general(const ObserverBank<F>&, const SignalVector<F>&, double);          \
  template CorrectionResult<F> correct(const ObserverBank<F>&, const SignalVector<F>&, double);                  \
  template SystemAnalysis<F> analyze_system(const PolyMatrix<F>&);
SENTINEL_INSTANTIATE(Rational)
SENTINEL_INSTANTIATE(double)
#undef SENTINEL_INSTANTIATE

}  // namespace sentinel
