#include "sentinel/io.hpp"

#include <fstream>
#include <sstream>

#include "sentinel/errors.hpp"
#include "sentinel/poly_text.hpp"
#include "sentinel/subsets.hpp"

namespace sentinel {
namespace {

using nlohmann::json;

std::vector<std::size_t> one_based(const std::vector<std::size_t>& indices) {
  std::vector<std::size_t> out;
  for (std::size_t i : indices) out.push_back(i + 1);
  return out;
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t require_count(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw Error(ErrorKind::ParseError, std::string("\"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

// Square matrix of scalars given as an array of rows.
template <Scalar F>
std::vector<F> square_from_json(const json& rows, std::size_t& n) {
  if (!rows.is_array() || rows.empty()) throw Error(ErrorKind::ParseError, "matrix must be a non-empty array of rows");
  n = rows.size();
  std::vector<F> out;
  for (const json& row : rows) {
    if (!row.is_array() || row.size() != n) throw Error(ErrorKind::ShapeError, "matrix must be square");
    for (const json& v : row) out.push_back(scalar_from_json<F>(v));
  }
  return out;
}

}  // namespace

CoefficientMode system_mode(const json& system) {
  if (system.is_object() && system.contains("mode")) {
    const std::string mode = system.at("mode").get<std::string>();
    if (mode == "exact") return CoefficientMode::exact;
    if (mode == "tolerant") return CoefficientMode::tolerant;
    throw Error(ErrorKind::ParseError, "mode must be \"exact\" or \"tolerant\"");
  }
  if (system.is_object() && system.contains("sampled")) return CoefficientMode::tolerant;
  return CoefficientMode::exact;
}

template <Scalar F>
std::vector<F> scalars_from_json(const json& values) {
  if (!values.is_array()) throw Error(ErrorKind::ParseError, "expected an array of scalars");
  std::vector<F> out;
  for (const json& v : values) out.push_back(scalar_from_json<F>(v));
  return out;
}

template <Scalar F>
SystemSpec<F> system_from_json(const json& system, double eps_zero) {
  if (!system.is_object()) throw Error(ErrorKind::ParseError, "system must be a JSON object");
  int present = 0;
  for (const char* key : {"kernel", "state_space", "image", "sampled"}) present += system.contains(key) ? 1 : 0;
  if (present != 1) {
    throw Error(ErrorKind::ParseError, "system needs exactly one of kernel, state_space, image, sampled");
  }
  if (system.contains("kernel")) return SystemSpec<F>::from_kernel(poly_matrix_from_json<F>(system.at("kernel"), eps_zero));
  if (system.contains("state_space")) {
    std::size_t n = 0;
    std::vector<F> a = square_from_json<F>(require(system.at("state_space"), "A"), n);
    return SystemSpec<F>::from_state_space(n, std::move(a), eps_zero);
  }
  if (system.contains("image")) {
    const json& image = system.at("image");
    return SystemSpec<F>::from_image(poly_matrix_from_json<F>(require(image, "M"), eps_zero),
                                     poly_matrix_from_json<F>(require(image, "D"), eps_zero));
  }
  const json& sampled = system.at("sampled");
  std::size_t n = 0;
  const std::vector<double> a = square_from_json<double>(require(sampled, "A"), n);
  const json& ts = require(sampled, "Ts");
  return SystemSpec<F>::from_sampled(n, a, scalar_from_json<double>(ts), eps_zero);
}

template <Scalar F>
AttackScenario<F> scenario_from_json(const json& scenario) {
  AttackScenario<F> out;
  out.horizon = require_count(scenario, "horizon");
  if (scenario.contains("start_time")) out.start_time = require_count(scenario, "start_time");
  const std::uint64_t base_seed = scenario.contains("seed") ? scenario.at("seed").get<std::uint64_t>() : 0;
  const json& attacks = scenario.contains("attacks") ? scenario.at("attacks") : json::array();
  if (!attacks.is_array()) throw Error(ErrorKind::ParseError, "\"attacks\" must be an array");
  for (std::size_t k = 0; k < attacks.size(); ++k) {
    const json& a = attacks[k];
    AttackChannel<F> ch;
    const std::size_t sensor = require_count(a, "sensor");
    if (sensor == 0) throw Error(ErrorKind::ParseError, "sensor indices are 1-based");
    ch.sensor = sensor - 1;
    const std::string generator = a.value("generator", std::string("uniform"));
    if (generator == "uniform") {
      ch.generator = AttackGenerator::uniform;
      ch.low = a.contains("low") ? scalar_from_json<double>(a.at("low")) : -1.0;
      ch.high = a.contains("high") ? scalar_from_json<double>(a.at("high")) : 1.0;
      if (!(ch.low < ch.high)) throw Error(ErrorKind::ParseError, "uniform attack needs low < high");
      ch.seed = a.contains("seed") ? a.at("seed").get<std::uint64_t>() : base_seed + k;
    } else if (generator == "constant") {
      ch.generator = AttackGenerator::constant;
      ch.value = scalar_from_json<F>(require(a, "value"));
    } else if (generator == "samples") {
      ch.generator = AttackGenerator::samples;
      ch.samples = scalars_from_json<F>(require(a, "samples"));
    } else {
      throw Error(ErrorKind::ParseError, "unknown attack generator \"" + generator + "\"");
    }
    out.channels.push_back(std::move(ch));
  }
  return out;
}

json resolve_system(const json& scenario, const std::filesystem::path& base) {
  const json& system = require(scenario, "system");
  if (system.is_string()) return load_json(base / system.get<std::string>());
  return system;
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path.string() + ": " + e.what());
  }
}

json to_json(const SecurityReport& report) {
  return {{"index", report.index},
          {"sensors", report.sensors},
          {"largest_unimodular", report.largest_unimodular},
          {"maximally_secure", report.maximally_secure},
          {"detectable_weight_max", report.detectable_weight_max},
          {"correctable_weight_max", report.correctable_weight_max},
          {"witness_subset", one_based(report.witness_subset)}};
}

template <Scalar F>
json verdict_to_json(const DetectionVerdict<F>& verdict) {
  return {{"attacked", verdict.attacked},
          {"residual_support", one_based(verdict.residual_support.support)},
          {"residual_weight", verdict.residual_support.weight()},
          {"residual_horizon", verdict.residual.horizon()},
          {"valid_from", verdict.residual.valid_from()}};
}

template <Scalar F>
json correction_to_json(const CorrectionResult<F>& result) {
  json out = {{"valid_from", result.valid_from},
              {"horizon", result.corrected.horizon()},
              {"winner", result.vote.winner + 1},
              {"winning_tally", result.vote.class_sizes.at(result.vote.winner_class)},
              {"class_sizes", result.vote.class_sizes},
              {"class_of", result.vote.class_of}};
  if (!result.voters.empty()) {
    std::vector<std::size_t> voters;
    for (std::size_t k : result.voters) voters.push_back(k + 1);
    out["voters"] = voters;
  }
  return out;
}

template <Scalar F>
json canonical_to_json(const CanonicalForm<F>& canonical) {
  json out = {{"identity_block", canonical.identity_block},
              {"canonical", poly_matrix_to_json(canonical.canonical)},
              {"transform", poly_matrix_to_json(canonical.transform)},
              {"image", poly_matrix_to_json(canonical.image)},
              {"driver", poly_matrix_to_json(canonical.driver)}};
  if (canonical.a) {
    out["a"] = format_polynomial(*canonical.a);
    json c = json::array();
    for (const auto& cj : canonical.c) c.push_back(format_polynomial(cj));
    out["c"] = std::move(c);
  }
  return out;
}

template <Scalar F>
json bank_to_json(const ObserverBank<F>& bank) {
  json out = {{"kind", bank.kind == ObserverKind::maximally_secure ? "maximally_secure" : "general"},
              {"sensors", bank.sensors},
              {"security_index", bank.security_index},
              {"latency", bank.latency},
              {"regen_latency", bank.regen_latency}};
  json observers = json::array();
  if (bank.kind == ObserverKind::maximally_secure) {
    out["a"] = format_polynomial(bank.a);
    for (std::size_t j = 0; j < bank.scalar_observers.size(); ++j) {
      const auto& obs = bank.scalar_observers[j];
      observers.push_back({{"sensor", j + 1},
                           {"p", format_polynomial(obs.p)},
                           {"q", format_polynomial(obs.q)},
                           {"c", format_polynomial(obs.c)}});
    }
  } else {
    for (const auto& obs : bank.subset_observers) {
      observers.push_back({{"sensors", one_based(obs.sensors)},
                           {"P", poly_matrix_to_json(obs.p)},
                           {"Q", poly_matrix_to_json(obs.q)}});
    }
  }
  out["observers"] = std::move(observers);
  return out;
}

template <Scalar F>
void write_candidates_csv(std::ostream& out, const std::vector<SignalVector<F>>& candidates) {
  std::size_t horizon = 0;
  out << 't';
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    horizon = k == 0 ? candidates[k].horizon() : std::min(horizon, candidates[k].horizon());
    if (candidates[k].size() == 1) {
      out << ",o" << k + 1;
    } else {
      for (std::size_t i = 0; i < candidates[k].size(); ++i) out << ",o" << k + 1 << '_' << i + 1;
    }
  }
  out << '\n';
  for (std::size_t t = 0; t < horizon; ++t) {
    out << t;
    for (const auto& c : candidates)
      for (std::size_t i = 0; i < c.size(); ++i) out << ',' << format_scalar(c(i, t));
    out << '\n';
  }
}

template <Scalar F>
void write_csv_file(const std::filesystem::path& path, const SignalVector<F>& signal) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_csv(out, signal);
  if (!out) throw IoError("write failed for " + path.string());
}

template <Scalar F>
SignalVector<F> read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_csv<F>(in);
}

void write_json_file(const std::filesystem::path& path, const json& value) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << value.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

#define SENTINEL_INSTANTIATE(F)                                                                   \
  template std::vector<F> scalars_from_json(const json&);                                         \
  template SystemSpec<F> system_from_json(const json&, double);                                   \
  template AttackScenario<F> scenario_from_json(const json&);                                     \
  template json verdict_to_json(const DetectionVerdict<F>&);                                      \
  template json correction_to_json(const CorrectionResult<F>&);                                   \
  template json canonical_to_json(const CanonicalForm<F>&);                                       \
  template json bank_to_json(const ObserverBank<F>&);                                             \
  template void write_candidates_csv(std::ostream&, const std::vector<SignalVector<F>>&);         \
  template void write_csv_file(const std::filesystem::path&, const SignalVector<F>&);             \
  template SignalVector<F> read_csv_file(const std::filesystem::path&);
SENTINEL_INSTANTIATE(Rational)
SENTINEL_INSTANTIATE(double)
#undef SENTINEL_INSTANTIATE

}  // namespace sentinel
