#pragma once

// Command-line surface. Every command prints one JSON report on standard
// output; the exit code is 0 on success, 1 for invalid input or a failed
// validation and 2 for inconclusive results.

#include <ostream>
#include <string>
#include <vector>

#include "flatcollapse/io.hpp"

namespace flatcollapse {

struct RunReport {
  std::string command;
  std::string inputs_digest;  // SHA-256 over the arguments and input file contents
  Json payload;
  int exit_code = 0;
};

int exit_code_for(ErrorCode code);

/// args excludes the program name.
RunReport run_command(const std::vector<std::string>& args);
Json report_json(const RunReport& report);

/// Parses, runs and prints; returns the process exit code.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace flatcollapse
