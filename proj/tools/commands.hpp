#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sentinel/scalar.hpp"

namespace sentinel::cli {

enum class Command { index, canon, detect, correct, simulate };

struct CommandConfig {
  Command command = Command::index;
  std::string system;
  std::string signals;
  std::string scenario;
  std::string output;
  std::optional<CoefficientMode> mode;
  double eps_zero = kDefaultEpsZero;
  double eps_sig = kDefaultEpsSig;
};

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAttack = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitTie = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitIo = 74;

int run_command(const CommandConfig& config, std::ostream& out, std::ostream& err);

// Parses `args` (without the program name) and runs the command.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sentinel::cli
