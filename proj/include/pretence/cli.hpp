#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pretence/engine.hpp"
#include "pretence/trace.hpp"

namespace pretence::cli {

/// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kInputError = 2;
inline constexpr int kResourceError = 3;

struct RunOptions {
  std::vector<std::string> kb_paths;
  std::string scenario_path;
  std::optional<TraceFormat> trace;
  std::optional<std::string> out_path;
  EngineLimits limits;
};

struct QueryOptions {
  std::vector<std::string> kb_paths;
  std::string scenario_path;
  std::string goal;
  std::string space = "reality";
  bool map_in = false;
  EngineLimits limits;
};

/// Lints the concatenated KB files. Diagnostics go to `err`.
int cmd_check(const std::vector<std::string>& kb_paths, std::ostream& out, std::ostream& err);
/// Runs a scenario and reports expectation verdicts. When the trace is
/// written to `out`, the report goes to `err` instead.
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);
/// Proves a goal against the seeded scenario and prints one line per answer.
int cmd_query(const QueryOptions& options, std::ostream& out, std::ostream& err);

/// Full command-line entry point (argv[0] included).
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pretence::cli
