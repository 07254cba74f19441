#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace eqindex::cli {

/// Exit codes: 0 confident and every check passed, 2 some rank decision
/// was indeterminate, 1 any other failure (bad input, failed check, error).
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitIndeterminate = 2;

struct Overrides {
  std::optional<std::string> config;
  std::optional<std::string> model;
  std::optional<double> tol;  // relative factor of the rank policy
  std::optional<std::pair<int, int>> window;
  std::optional<int> resolution;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;  // text | machine
};

struct CommandOutput {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

CommandOutput cmd_run(const Overrides& options);
CommandOutput cmd_suite(const std::string& name, const Overrides& options);
CommandOutput cmd_dump(const Overrides& options);

}  // namespace eqindex::cli
