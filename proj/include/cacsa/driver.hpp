#pragma once

#include <cstdint>
#include <string>

#include "cacsa/rewrite.hpp"

namespace cacsa {

struct RunFlags {
  std::uint64_t fuel = kDefaultFuel;
  bool dump_constraints = false;
  bool trace = false;
};

enum ExitCode : int { kExitOk = 0, kExitTypeError = 1, kExitInvalid = 2, kExitFuel = 3 };

struct RunResult {
  int exit_code = kExitOk;
  std::string report;       // goal results, dumps and traces
  std::string diagnostics;  // one `FILE:LINE:COL: error[KIND]: message` line per error
};

/// Parses, validates and runs every goal of a source text.
RunResult run_source(const std::string& text, const std::string& filename, const RunFlags& flags = {});
/// Same for a file on disk; an unreadable file is a validation error.
RunResult run_file(const std::string& path, const RunFlags& flags = {});

}  // namespace cacsa
