#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sentinel/sim.hpp"

namespace sentinel {

// System file: exactly one of
//   "kernel": R,  "state_space": {"A": A},  "image": {"M": M, "D": D},
//   "sampled": {"A": Ã, "Ts": seconds}
// plus optional "mode" ("exact" | "tolerant") and "initial" (array).
// Sensor indices in every JSON document are 1-based.
CoefficientMode system_mode(const nlohmann::json& system);

template <Scalar F>
SystemSpec<F> system_from_json(const nlohmann::json& system, double eps_zero = kDefaultEpsZero);

template <Scalar F>
std::vector<F> scalars_from_json(const nlohmann::json& values);

// Scenario file: {"system": {...} | "path", "horizon": T, "seed": s,
// "start_time": t0, "initial": [...], "correct": bool,
// "attacks": [{"sensor": j, "generator": "uniform", "low": -1, "high": 1, "seed": s}
//             | {"sensor": j, "generator": "constant", "value": c}
//             | {"sensor": j, "generator": "samples", "samples": [...]}]}.
// Channels without a seed use seed + channel index.
template <Scalar F>
AttackScenario<F> scenario_from_json(const nlohmann::json& scenario);

// Resolves "system" relative to the scenario file's directory when it is a path.
nlohmann::json resolve_system(const nlohmann::json& scenario, const std::filesystem::path& base);

nlohmann::json load_json(const std::filesystem::path& path);

nlohmann::json to_json(const SecurityReport& report);

template <Scalar F>
nlohmann::json verdict_to_json(const DetectionVerdict<F>& verdict);

template <Scalar F>
nlohmann::json correction_to_json(const CorrectionResult<F>& result);

template <Scalar F>
nlohmann::json canonical_to_json(const CanonicalForm<F>& canonical);

template <Scalar F>
nlohmann::json bank_to_json(const ObserverBank<F>& bank);

// `t,o1,...,oK`; multi-component candidates expand to `ok_i`.
template <Scalar F>
void write_candidates_csv(std::ostream& out, const std::vector<SignalVector<F>>& candidates);

template <Scalar F>
void write_csv_file(const std::filesystem::path& path, const SignalVector<F>& signal);

template <Scalar F>
SignalVector<F> read_csv_file(const std::filesystem::path& path);

void write_json_file(const std::filesystem::path& path, const nlohmann::json& value);

// Failure to open or write a file; kept apart from domain errors.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sentinel
