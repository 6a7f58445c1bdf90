#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace nilrfrs::cli {

enum class Command { analyze, rfrs_verify, rfrs_obstruct, rfrs_restrict, raag_nf, raag_magnus, raag_rtfn };

std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command c);

struct RunConfig {
  Command command = Command::analyze;
  /// Builder name (heisenberg, ut(4), ...) or path to a presentation file.
  std::string group;
  std::string chain;
  std::string subgroup;
  std::string graph;
  std::string word;
  std::optional<long> max_index;
  std::optional<long> degree;
  std::optional<long> max_len;
  bool json = false;
  unsigned threads = 0;
};

inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_input_error = 2;

/// Runs one command, writing the report to `out` and diagnostics to `err`.
/// Returns 0 on a passing result, 1 on a failing one, 2 on bad input or an
/// exceeded resource cap.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace nilrfrs::cli
