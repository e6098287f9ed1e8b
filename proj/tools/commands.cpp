#include "commands.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "sentinel/errors.hpp"
#include "sentinel/io.hpp"

namespace sentinel::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void require(bool present, const char* what) {
  if (!present) throw Error(ErrorKind::ParseError, std::string("missing required option ") + what);
}

fs::path output_dir(const CommandConfig& config) {
  require(!config.output.empty(), "--out");
  std::error_code ec;
  fs::create_directories(config.output, ec);
  if (ec) throw IoError("cannot create " + config.output + ": " + ec.message());
  return config.output;
}

template <Scalar F>
SecurityReport report_for(const SystemSpec<F>& spec) {
  if (spec.kind() == SystemKind::image) return security_index_md(spec.image(), spec.driver());
  return security_index_kernel(spec.kernel());
}

template <Scalar F>
std::vector<F> initial_data(const json& scenario, const json& system) {
  if (scenario.contains("initial")) return scalars_from_json<F>(scenario.at("initial"));
  if (system.contains("initial")) return scalars_from_json<F>(system.at("initial"));
  throw Error(ErrorKind::ParseError, "scenario needs \"initial\" data");
}

template <Scalar F>
int cmd_index(const CommandConfig& config, const json& system, std::ostream& out) {
  const SystemSpec<F> spec = system_from_json<F>(system, config.eps_zero);
  const json report = to_json(report_for(spec));
  out << report.dump(2) << '\n';
  if (!config.output.empty()) write_json_file(output_dir(config) / "report.json", report);
  return kExitOk;
}

template <Scalar F>
int cmd_canon(const CommandConfig& config, const json& system, std::ostream& out) {
  const SystemSpec<F> spec = system_from_json<F>(system, config.eps_zero);
  const SystemAnalysis<F> analysis = analyze_system(spec.kernel());
  const fs::path dir = output_dir(config);
  json canonical = canonical_to_json(analysis.canonical);
  canonical["report"] = to_json(analysis.report);
  write_json_file(dir / "canonical.json", canonical);
  write_json_file(dir / "observers.json", bank_to_json(analysis.bank));
  out << to_json(analysis.report).dump(2) << '\n';
  return kExitOk;
}

template <Scalar F>
int cmd_detect(const CommandConfig& config, const json& system, std::ostream& out) {
  require(!config.signals.empty(), "--signals");
  const SystemSpec<F> spec = system_from_json<F>(system, config.eps_zero);
  const SignalVector<F> received = read_csv_file<F>(config.signals);
  const DetectionVerdict<F> verdict = detect(spec.kernel(), received, config.eps_sig);
  const json result = verdict_to_json(verdict);
  out << result.dump(2) << '\n';
  if (!config.output.empty()) {
    const fs::path dir = output_dir(config);
    write_json_file(dir / "result.json", json{{"verdict", result}});
    write_csv_file(dir / "residual.csv", verdict.residual);
  }
  return verdict.attacked ? kExitAttack : kExitOk;
}

template <Scalar F>
int cmd_correct(const CommandConfig& config, const json& system, std::ostream& out) {
  require(!config.signals.empty(), "--signals");
  const SystemSpec<F> spec = system_from_json<F>(system, config.eps_zero);
  const SignalVector<F> received = read_csv_file<F>(config.signals);
  const fs::path dir = output_dir(config);
  const SystemAnalysis<F> analysis = analyze_system(spec.kernel());
  const DetectionVerdict<F> verdict = detect(spec.kernel(), received, config.eps_sig);
  const CorrectionResult<F> correction = correct(analysis.bank, received, config.eps_sig);
  write_csv_file(dir / "corrected.csv", correction.corrected);
  {
    std::ofstream candidates(dir / "observers.csv");
    if (!candidates) throw IoError("cannot write " + (dir / "observers.csv").string());
    write_candidates_csv(candidates, correction.candidates);
  }
  const json result = {{"report", to_json(analysis.report)},
                       {"verdict", verdict_to_json(verdict)},
                       {"correction", correction_to_json(correction)}};
  write_json_file(dir / "result.json", result);
  out << result.dump(2) << '\n';
  return kExitOk;
}

template <Scalar F>
int cmd_simulate(const CommandConfig& config, const json& scenario_doc, const json& system, std::ostream& out) {
  const SystemSpec<F> spec = system_from_json<F>(system, config.eps_zero);
  AttackScenario<F> scenario = scenario_from_json<F>(scenario_doc);
  if (const auto seed = seed_override_from_env()) apply_seed_override(scenario, *seed);
  const std::vector<F> initial = initial_data<F>(scenario_doc, system);
  const bool run_correction = scenario_doc.value("correct", true);
  const fs::path dir = output_dir(config);

  ScenarioResult<F> result = run_scenario(spec, scenario, std::span<const F>(initial), false, config.eps_sig);
  write_csv_file(dir / "clean.csv", result.clean);
  write_csv_file(dir / "attack.csv", result.attack);
  write_csv_file(dir / "received.csv", result.received);
  write_csv_file(dir / "residual.csv", result.verdict.residual);

  json seeds = json::array();
  for (const auto& ch : scenario.channels) seeds.push_back(ch.seed);
  json support = json::array();
  for (std::size_t s : scenario.support()) support.push_back(s + 1);
  json doc = {{"horizon", scenario.horizon},
              {"start_time", scenario.start_time},
              {"attack_support", support},
              {"seeds", seeds},
              {"verdict", verdict_to_json(result.verdict)}};

  if (run_correction) {
    const SystemAnalysis<F> analysis = analyze_system(spec.kernel());
    doc["report"] = to_json(analysis.report);
    doc["observers"] = {{"latency", analysis.bank.latency}, {"regen_latency", analysis.bank.regen_latency}};
    write_json_file(dir / "result.json", doc);
    result.correction = correct(analysis.bank, result.received, config.eps_sig);
    result.error_signal = result.correction->corrected - result.clean;
    write_csv_file(dir / "corrected.csv", result.correction->corrected);
    write_csv_file(dir / "error.csv", *result.error_signal);
    {
      std::ofstream candidates(dir / "observers.csv");
      if (!candidates) throw IoError("cannot write " + (dir / "observers.csv").string());
      write_candidates_csv(candidates, result.correction->candidates);
    }
    doc["correction"] = correction_to_json(*result.correction);
    doc["correction"]["max_abs_error"] = result.error_signal->magnitude();
  }
  write_json_file(dir / "result.json", doc);
  out << doc.dump(2) << '\n';
  return kExitOk;
}

template <Scalar F>
int dispatch(const CommandConfig& config, const json& scenario, const json& system, std::ostream& out) {
  switch (config.command) {
    case Command::index:
      return cmd_index<F>(config, system, out);
    case Command::canon:
      return cmd_canon<F>(config, system, out);
    case Command::detect:
      return cmd_detect<F>(config, system, out);
    case Command::correct:
      return cmd_correct<F>(config, system, out);
    case Command::simulate:
      return cmd_simulate<F>(config, scenario, system, out);
  }
  return kExitUsage;
}

void dump_tally(const Error& e, std::ostream& err) {
  err << "tally:";
  for (std::size_t n : e.tally()) err << ' ' << n;
  err << '\n';
}

}  // namespace

int run_command(const CommandConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (!(config.eps_zero > 0.0) || !(config.eps_sig > 0.0)) {
      throw Error(ErrorKind::ParseError, "tolerances must be positive");
    }
    json scenario;
    json system;
    if (config.command == Command::simulate) {
      require(!config.scenario.empty(), "--scenario");
      scenario = load_json(config.scenario);
      system = config.system.empty() ? resolve_system(scenario, fs::path(config.scenario).parent_path())
                                     : load_json(config.system);
    } else {
      require(!config.system.empty(), "--system");
      system = load_json(config.system);
    }
    const CoefficientMode mode = config.mode.value_or(system_mode(system));
    return mode == CoefficientMode::exact ? dispatch<Rational>(config, scenario, system, out)
                                          : dispatch<double>(config, scenario, system, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    if (e.kind() == ErrorKind::MajorityTie) {
      dump_tally(e, err);
      return kExitTie;
    }
    return e.kind() == ErrorKind::ParseError ? kExitUsage : kExitDomain;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sensor attack detection and correction for LTI systems"};
  app.require_subcommand(1);
  CommandConfig config;
  std::string mode;

  const auto add = [&](const char* name, Command command, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--system", config.system, "system JSON file");
    sub->add_option("--out", config.output, "output directory");
    sub->add_option("--mode", mode, "coefficient mode")->check(CLI::IsMember({"exact", "tolerant"}));
    sub->add_option("--eps-zero", config.eps_zero, "zero tolerance for coefficients")->check(CLI::PositiveNumber);
    sub->add_option("--eps-sig", config.eps_sig, "zero tolerance for signals")->check(CLI::PositiveNumber);
    sub->callback([&config, command] { config.command = command; });
    return sub;
  };
  add("index", Command::index, "print the security index report");
  add("canon", Command::canon, "write canonical.json and observers.json");
  add("detect", Command::detect, "exit 1 if the signals are attacked")->add_option("--signals", config.signals, "signal CSV");
  add("correct", Command::correct, "write corrected.csv and result.json")->add_option("--signals", config.signals, "signal CSV");
  add("simulate", Command::simulate, "run an attack scenario")->add_option("--scenario", config.scenario, "scenario JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (mode == "exact") config.mode = CoefficientMode::exact;
  if (mode == "tolerant") config.mode = CoefficientMode::tolerant;
  return run_command(config, out, err);
}

}  // namespace sentinel::cli
