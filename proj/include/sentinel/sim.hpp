#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sentinel/engine.hpp"

namespace sentinel {

enum class SystemKind { kernel, state_space, image };

// One of R(ξ), A (with C = I, so R = ξI - A) or (M, D). The kernel matrix is
// derived once at construction.
template <Scalar F>
class SystemSpec {
 public:
  static SystemSpec from_kernel(PolyMatrix<F> r);
  static SystemSpec from_state_space(std::size_t n, std::vector<F> a, double eps_zero = kDefaultEpsZero);
  static SystemSpec from_image(PolyMatrix<F> m, PolyMatrix<F> d);
  // A = exp(Ã·T_s). Tolerant mode only.
  static SystemSpec from_sampled(std::size_t n, std::span<const double> a_continuous, double sample_period,
                                 double eps_zero = kDefaultEpsZero);

  SystemKind kind() const { return kind_; }
  std::size_t sensors() const { return kernel_.cols(); }
  const PolyMatrix<F>& kernel() const { return kernel_; }
  // state_space only: row-major n x n.
  std::span<const F> state_matrix() const { return a_; }
  // image only.
  const PolyMatrix<F>& image() const { return m_; }
  const PolyMatrix<F>& driver() const { return d_; }
  bool is_sampled() const { return sample_period_ > 0.0; }
  double sample_period() const { return sample_period_; }
  std::span<const double> continuous_matrix() const { return a_continuous_; }

 private:
  SystemKind kind_ = SystemKind::kernel;
  PolyMatrix<F> kernel_;
  std::vector<F> a_;
  PolyMatrix<F> m_;
  PolyMatrix<F> d_;
  double sample_period_ = 0.0;
  std::vector<double> a_continuous_;
};

// Row-major exp(a·t) for an n x n matrix.
std::vector<double> exponentiate(std::size_t n, std::span<const double> a, double t);

// Number of initial samples simulate() expects: n for state_space, otherwise
// the degree of det D of the (canonical) image representation.
template <Scalar F>
std::size_t initial_size(const SystemSpec<F>& spec);

// Attack-free trajectory on t = 0..horizon-1. state_space: initial = x(0).
// kernel/image: initial seeds D(σ)ℓ = 0 after row reduction, component by
// component; y = M(σ)ℓ. Throws DegenerateInput on a wrong initial size.
template <Scalar F>
SignalVector<F> simulate(const SystemSpec<F>& spec, std::span<const F> initial, std::size_t horizon);

enum class AttackGenerator { uniform, constant, samples };

template <Scalar F>
struct AttackChannel {
  std::size_t sensor = 0;  // 0-based
  AttackGenerator generator = AttackGenerator::uniform;
  double low = -1.0;
  double high = 1.0;
  std::uint64_t seed = 0;
  F value{};
  std::vector<F> samples;  // from start_time on; zero afterwards
};

template <Scalar F>
struct AttackScenario {
  std::vector<AttackChannel<F>> channels;
  std::size_t start_time = 0;
  std::size_t horizon = 0;

  std::vector<std::size_t> support() const;
};

// η with supp(η) within the channel sensors; zero before start_time.
template <Scalar F>
SignalVector<F> generate_attack(const AttackScenario<F>& scenario, std::size_t sensors);

// SENTINEL_SEED, if set; channel k then uses seed + k.
std::optional<std::uint64_t> seed_override_from_env();

template <Scalar F>
void apply_seed_override(AttackScenario<F>& scenario, std::uint64_t seed);

template <Scalar F>
struct ScenarioResult {
  SignalVector<F> clean;
  SignalVector<F> attack;
  SignalVector<F> received;
  DetectionVerdict<F> verdict;
  std::optional<CorrectionResult<F>> correction;
  std::optional<SignalVector<F>> error_signal;  // ŷ - y on the corrected valid window
};

template <Scalar F>
ScenarioResult<F> run_scenario(const SystemSpec<F>& spec, const AttackScenario<F>& scenario,
                               std::span<const F> initial, bool correct, double eps_sig = kDefaultEpsSig);

// Reuses a precomputed analysis of spec.kernel() and always corrects.
template <Scalar F>
ScenarioResult<F> run_scenario(const SystemSpec<F>& spec, const SystemAnalysis<F>& analysis,
                               const AttackScenario<F>& scenario, std::span<const F> initial,
                               double eps_sig = kDefaultEpsSig);

}  // namespace sentinel
