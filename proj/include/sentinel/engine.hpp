#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "sentinel/normal_form.hpp"
#include "sentinel/security.hpp"
#include "sentinel/signals.hpp"

namespace sentinel {

enum class ObserverKind { maximally_secure, general };

// p·c + q·a = 1, so p(σ)y_j = y_N on the behavior.
template <Scalar F>
struct ScalarObserver {
  Polynomial<F> p;
  Polynomial<F> q;
  Polynomial<F> c;
};

// [P Q]·[M_J; D] = I_m for the sensor subset J.
template <Scalar F>
struct SubsetObserver {
  std::vector<std::size_t> sensors;
  PolyMatrix<F> p;
  PolyMatrix<F> q;
};

template <Scalar F>
struct ObserverBank {
  ObserverKind kind = ObserverKind::maximally_secure;
  std::size_t sensors = 0;
  std::size_t security_index = 0;
  // maximally secure: observers for sensors 1..N-1; sensor N uses p = 1.
  Polynomial<F> a;
  std::vector<ScalarObserver<F>> scalar_observers;
  // general
  PolyMatrix<F> image;
  PolyMatrix<F> driver;
  std::vector<SubsetObserver<F>> subset_observers;

  std::size_t latency = 0;        // max observer degree
  std::size_t regen_latency = 0;  // latency + max degree of the output map
};

template <Scalar F>
struct DetectionVerdict {
  bool attacked = false;
  SignalVector<F> residual;
  SupportProfile residual_support;
};

template <Scalar F>
struct CorrectionResult {
  SignalVector<F> corrected;
  SignalVector<F> latent;
  std::vector<SignalVector<F>> candidates;  // observer outputs, aligned
  std::vector<std::size_t> voters;          // general: candidates consistent with their sensors
  VoteResult vote;                          // winner indexes candidates; classes cover voters
  std::size_t valid_from = 0;
};

// s = R(σ)r; attacked iff s has a nonzero sample on its valid window. In
// tolerant mode "nonzero" is relative to |r| times the largest row
// coefficient sum of R.
template <Scalar F>
DetectionVerdict<F> detect(const PolyMatrix<F>& r, const SignalVector<F>& received, double eps_sig = kDefaultEpsSig);

// Bézout observers for the form with identity block N-1. Throws
// NotMaximallySecure when the form has a different shape or some c_j shares
// a factor with a.
template <Scalar F>
ObserverBank<F> build_observers_ms(const CanonicalForm<F>& canonical);

// One observer per sensor subset of size N+1-δ. Throws InconsistentIndex when
// a stack [M_J; D] is not left unimodular.
template <Scalar F>
ObserverBank<F> build_observers_general(const PolyMatrix<F>& m, const PolyMatrix<F>& d, std::size_t security_index);

template <Scalar F>
CorrectionResult<F> correct_ms(const ObserverBank<F>& bank, const SignalVector<F>& received,
                               double eps_sig = kDefaultEpsSig);

// Only subset estimates that reproduce their own sensors (M_J ℓ̂ = r_J, D ℓ̂ = 0)
// enter the vote; unattacked subsets always do.
template <Scalar F>
CorrectionResult<F> correct_general(const ObserverBank<F>& bank, const SignalVector<F>& received,
                                    double eps_sig = kDefaultEpsSig);

// Dispatches on bank.kind.
template <Scalar F>
CorrectionResult<F> correct(const ObserverBank<F>& bank, const SignalVector<F>& received,
                            double eps_sig = kDefaultEpsSig);

// Smallest horizon for which correction leaves a nonempty valid window.
template <Scalar F>
std::size_t min_correction_horizon(const ObserverBank<F>& bank) {
  const Degree d = bank.driver.max_degree();
  const std::size_t driver = d.is_neg_infinity() ? 0 : static_cast<std::size_t>(d.value());
  return std::max(2 * bank.regen_latency + 1, bank.latency + driver + 1);
}

// C(N-t, N+1-δ) > C(N-δ+t, N+1-δ): unattacked subsets outvote any wrong estimate.
bool majority_margin_holds(std::size_t sensors, std::size_t security_index, std::size_t attacked);

// Everything derived once per system: index, canonical form, observers.
template <Scalar F>
struct SystemAnalysis {
  PolyMatrix<F> kernel;
  SecurityReport report;
  CanonicalForm<F> canonical;
  ObserverBank<F> bank;
};

// Maximally secure systems get the scalar bank, others the subset bank built
// from the canonical image representation.
template <Scalar F>
SystemAnalysis<F> analyze_system(const PolyMatrix<F>& kernel);

}  // namespace sentinel
