#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace advdiff {

// Parsed command-line request; one subcommand per invocation.
struct RunConfig {
  std::string command;  // solve | sweep | stencil | verify
  double v = 1.0;
  double k = 1.0;
  double f = 1.0;
  int n = 10;
  std::string formulation = "all";
  std::vector<double> ratios;
  std::string bc_left = "dirichlet:0";
  std::string bc_right = "dirichlet:0";
  std::string output = "-";  // "-" = standard output
  std::string format = "csv";
};

// Runs the tool against argv-style arguments (program name excluded).
// Returns the process exit code: 0 success, 1 verification failure,
// 2 usage or validation error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

inline constexpr const char* kVersion = "1.0.0";

}  // namespace advdiff
