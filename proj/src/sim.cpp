#include "sentinel/sim.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cstdlib>
#include <random>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>
#include <utility>

#include "sentinel/errors.hpp"

namespace sentinel {
namespace {

std::size_t degree_or_zero(Degree d) { return d.is_neg_infinity() ? 0 : static_cast<std::size_t>(d.value()); }

template <Scalar F>
std::pair<PolyMatrix<F>, PolyMatrix<F>> image_of(const SystemSpec<F>& spec) {
  if (spec.kind() == SystemKind::image) return {spec.image(), spec.driver()};
  const SecurityReport report = security_index_kernel(spec.kernel());
  CanonicalForm<F> canonical = kronecker_hermite(spec.kernel(), report.index - 1);
  return {std::move(canonical.image), std::move(canonical.driver)};
}

template <Scalar F>
RowReduction<F> reduce_driver(const PolyMatrix<F>& d) {
  RowReduction<F> reduced = hermite_form(d);
  for (std::size_t i = 0; i < d.rows(); ++i) {
    if (reduced.upper(i, i).is_zero()) throw Error(ErrorKind::DegenerateInput, "D is singular");
  }
  return reduced;
}

template <Scalar F>
std::size_t driver_order(const PolyMatrix<F>& upper) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < upper.rows(); ++i) total += degree_or_zero(upper(i, i).degree());
  return total;
}

template <Scalar F>
SignalVector<F> simulate_state_space(const SystemSpec<F>& spec, std::span<const F> initial, std::size_t horizon) {
  const std::size_t n = spec.sensors();
  if (initial.size() != n) throw Error(ErrorKind::DegenerateInput, "initial state must have " + std::to_string(n) + " entries");
  const std::span<const F> a = spec.state_matrix();
  std::vector<std::vector<F>> y(n, std::vector<F>(horizon));
  std::vector<F> x(initial.begin(), initial.end());
  for (std::size_t t = 0; t < horizon; ++t) {
    for (std::size_t i = 0; i < n; ++i) y[i][t] = x[i];
    std::vector<F> next(n, F(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) next[i] += a[i * n + j] * x[j];
    x = std::move(next);
  }
  return SignalVector<F>(std::move(y));
}

template <Scalar F>
SignalVector<F> simulate_image(const PolyMatrix<F>& m, const PolyMatrix<F>& d, std::span<const F> initial,
                               std::size_t horizon) {
  const RowReduction<F> reduced = reduce_driver(d);
  const PolyMatrix<F>& h = reduced.upper;
  const std::size_t width = d.rows();
  if (initial.size() != driver_order(h)) {
    throw Error(ErrorKind::DegenerateInput, "initial block must have " + std::to_string(driver_order(h)) + " entries");
  }
  std::vector<std::size_t> order(width);
  for (std::size_t i = 0; i < width; ++i) order[i] = degree_or_zero(h(i, i).degree());

  // Row i needs component k > i up to its own horizon minus order plus the coupling degree.
  const std::size_t target = horizon + degree_or_zero(m.max_degree());
  std::vector<std::size_t> needed(width, target);
  for (std::size_t i = 0; i < width; ++i) {
    for (std::size_t k = i + 1; k < width; ++k) {
      if (h(i, k).is_zero()) continue;
      const std::size_t reach = needed[i] > order[i] ? needed[i] - order[i] + degree_or_zero(h(i, k).degree()) : 0;
      needed[k] = std::max(needed[k], reach);
    }
  }

  std::vector<std::size_t> offset(width, 0);
  for (std::size_t i = 1; i < width; ++i) offset[i] = offset[i - 1] + order[i - 1];

  std::vector<std::vector<F>> latent(width);
  for (std::size_t ii = width; ii-- > 0;) {
    const std::size_t n = order[ii];
    std::vector<F>& l = latent[ii];
    l.assign(needed[ii], F(0));
    for (std::size_t s = 0; s < std::min(n, needed[ii]); ++s) l[s] = initial[offset[ii] + s];
    const auto diag = h(ii, ii).coefficients();
    for (std::size_t s = 0; s + n < needed[ii]; ++s) {
      F value(0);
      for (std::size_t j = 0; j < n; ++j) value -= diag[j] * l[s + j];
      for (std::size_t k = ii + 1; k < width; ++k) {
        const auto coupling = h(ii, k).coefficients();
        for (std::size_t j = 0; j < coupling.size(); ++j) value -= coupling[j] * latent[k][s + j];
      }
      l[s + n] = value;
    }
  }
  for (auto& l : latent) l.resize(target);
  SignalVector<F> y = apply_poly_matrix(m, SignalVector<F>(std::move(latent)));
  return y.truncated(horizon);
}

}  // namespace

template <Scalar F>
SystemSpec<F> SystemSpec<F>::from_kernel(PolyMatrix<F> r) {
  SystemSpec spec;
  spec.kind_ = SystemKind::kernel;
  spec.kernel_ = std::move(r);
  return spec;
}

template <Scalar F>
SystemSpec<F> SystemSpec<F>::from_state_space(std::size_t n, std::vector<F> a, double eps_zero) {
  if (a.size() != n * n) throw Error(ErrorKind::ShapeError, "A must be square");
  SystemSpec spec;
  spec.kind_ = SystemKind::state_space;
  spec.kernel_ = PolyMatrix<F>::shift_minus(n, a, eps_zero);
  spec.a_ = std::move(a);
  return spec;
}

template <Scalar F>
SystemSpec<F> SystemSpec<F>::from_image(PolyMatrix<F> m, PolyMatrix<F> d) {
  if (!d.is_square() || d.cols() != m.cols()) throw Error(ErrorKind::ShapeError, "M is N x m and D is m x m");
  SystemSpec spec;
  spec.kind_ = SystemKind::image;
  spec.kernel_ = kernel_from_image(m, d);
  spec.m_ = std::move(m);
  spec.d_ = std::move(d);
  return spec;
}

template <Scalar F>
SystemSpec<F> SystemSpec<F>::from_sampled(std::size_t n, std::span<const double> a_continuous, double sample_period,
                                          double eps_zero) {
  if constexpr (is_exact_v<F>) {
    throw Error(ErrorKind::DegenerateInput, "sampled continuous-time systems require tolerant mode");
  } else {
    if (!(sample_period > 0.0)) throw Error(ErrorKind::DegenerateInput, "sample period must be positive");
    if (a_continuous.size() != n * n) throw Error(ErrorKind::ShapeError, "continuous-time matrix must be square");
    SystemSpec spec = from_state_space(n, exponentiate(n, a_continuous, sample_period), eps_zero);
    spec.sample_period_ = sample_period;
    spec.a_continuous_.assign(a_continuous.begin(), a_continuous.end());
    return spec;
  }
}

std::vector<double> exponentiate(std::size_t n, std::span<const double> a, double t) {
  if (a.size() != n * n) throw Error(ErrorKind::ShapeError, "matrix must be square");
  const Eigen::Index size = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m(size, size);
  for (Eigen::Index i = 0; i < size; ++i)
    for (Eigen::Index j = 0; j < size; ++j) m(i, j) = a[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] * t;
  const Eigen::MatrixXd e = m.exp();
  std::vector<double> out(n * n);
  for (Eigen::Index i = 0; i < size; ++i)
    for (Eigen::Index j = 0; j < size; ++j) out[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] = e(i, j);
  return out;
}

template <Scalar F>
std::size_t initial_size(const SystemSpec<F>& spec) {
  if (spec.kind() == SystemKind::state_space) return spec.sensors();
  return driver_order(reduce_driver(image_of(spec).second).upper);
}

template <Scalar F>
SignalVector<F> simulate(const SystemSpec<F>& spec, std::span<const F> initial, std::size_t horizon) {
  if (spec.kind() == SystemKind::state_space) return simulate_state_space(spec, initial, horizon);
  const auto [m, d] = image_of(spec);
  return simulate_image(m, d, initial, horizon);
}

template <Scalar F>
std::vector<std::size_t> AttackScenario<F>::support() const {
  std::vector<std::size_t> out;
  for (const auto& ch : channels) out.push_back(ch.sensor);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <Scalar F>
SignalVector<F> generate_attack(const AttackScenario<F>& scenario, std::size_t sensors) {
  SignalVector<F> eta = SignalVector<F>::zeros(sensors, scenario.horizon);
  for (const auto& ch : scenario.channels) {
    if (ch.sensor >= sensors) throw Error(ErrorKind::ShapeError, "attacked sensor " + std::to_string(ch.sensor + 1) + " out of range");
    switch (ch.generator) {
      case AttackGenerator::uniform: {
        std::mt19937_64 rng(ch.seed);
        std::uniform_real_distribution<double> dist(ch.low, ch.high);
        for (std::size_t t = scenario.start_time; t < scenario.horizon; ++t) eta(ch.sensor, t) = scalar_from_double<F>(dist(rng));
        break;
      }
      case AttackGenerator::constant:
        for (std::size_t t = scenario.start_time; t < scenario.horizon; ++t) eta(ch.sensor, t) = ch.value;
        break;
      case AttackGenerator::samples:
        for (std::size_t k = 0; k < ch.samples.size() && scenario.start_time + k < scenario.horizon; ++k) {
          eta(ch.sensor, scenario.start_time + k) = ch.samples[k];
        }
        break;
    }
  }
  return eta;
}

std::optional<std::uint64_t> seed_override_from_env() {
  const char* value = std::getenv("SENTINEL_SEED");
  if (value == nullptr || *value == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const unsigned long long seed = std::stoull(value, &used);
    if (value[used] != '\0') throw std::invalid_argument("trailing characters");
    return seed;
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, std::string("SENTINEL_SEED is not an unsigned integer: ") + value);
  }
}

template <Scalar F>
void apply_seed_override(AttackScenario<F>& scenario, std::uint64_t seed) {
  for (std::size_t k = 0; k < scenario.channels.size(); ++k) scenario.channels[k].seed = seed + k;
}

template <Scalar F>
ScenarioResult<F> run_scenario(const SystemSpec<F>& spec, const AttackScenario<F>& scenario,
                               std::span<const F> initial, bool correct, double eps_sig) {
  if (correct) return run_scenario(spec, analyze_system(spec.kernel()), scenario, initial, eps_sig);
  ScenarioResult<F> result;
  result.clean = simulate(spec, initial, scenario.horizon);
  result.attack = generate_attack(scenario, spec.sensors());
  result.received = result.clean + result.attack;
  result.verdict = detect(spec.kernel(), result.received, eps_sig);
  return result;
}

template <Scalar F>
ScenarioResult<F> run_scenario(const SystemSpec<F>& spec, const SystemAnalysis<F>& analysis,
                               const AttackScenario<F>& scenario, std::span<const F> initial, double eps_sig) {
  if (analysis.kernel.cols() != spec.sensors()) throw Error(ErrorKind::InconsistentIndex, "analysis does not match the system");
  ScenarioResult<F> result = run_scenario(spec, scenario, initial, false, eps_sig);
  result.correction = correct(analysis.bank, result.received, eps_sig);
  result.error_signal = result.correction->corrected - result.clean;
  return result;
}

template class SystemSpec<Rational>;
template class SystemSpec<double>;

#define SENTINEL_INSTANTIATE(F)                                                                                    \
  template std::size_t initial_size(const SystemSpec<F>&);                                                         \
  template SignalVector<F> simulate(const SystemSpec<F>&, std::span<const F>, std::size_t);                        \
  template struct AttackScenario<F>;                                                                               \
  template SignalVector<F> generate_attack(const AttackScenario<F>&, std::size_t);                                 \
  template void apply_seed_override(AttackScenario<F>&, std::uint64_t);                                            \
  template ScenarioResult<F> run_scenario(const SystemSpec<F>&, const AttackScenario<F>&, std::span<const F>, bool, \
                                          double);                                                                 \
  template ScenarioResult<F> run_scenario(const SystemSpec<F>&, const SystemAnalysis<F>&, const AttackScenario<F>&, \
                                          std::span<const F>, double);
SENTINEL_INSTANTIATE(Rational)
SENTINEL_INSTANTIATE(double)
#undef SENTINEL_INSTANTIATE

}  // namespace sentinel
