#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace cheeger::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_bad_input = 2;
inline constexpr int exit_solver_failure = 3;

struct RunConfig {
  std::string command;  ///< rect, convex, strip, sector, table1, stripize, certify, sweep, scan, bounds

  double a = 1.0;
  double b = 1.0;
  std::string alpha = "pi/2";
  std::optional<double> halfwidth;
  std::optional<double> truncation_length;
  std::optional<std::string> strip_kind;
  std::optional<double> claim;
  std::optional<double> h;
  double p = 2.0;
  double tol = 0.0;
  int grid = 256;
  int resolution = 1024;
  int n_coarse = 256;
  std::string method = "exact";
  std::string solver = "closed";
  std::string scan_kind = "rect-k";
  std::string field = "builtin";

  std::optional<std::string> curve_path;
  std::optional<std::string> strip_path;
  std::optional<std::string> polygon_path;
  std::optional<std::string> domain_path;
  std::optional<std::string> out_path;
  std::optional<std::string> svg_path;
  std::optional<std::string> csv_path;
  std::optional<std::string> pgm_path;
};

/// Parses "pi/2", "3*pi/4", "3pi/4", "0.656749*pi", "2*pi", "1.25" or "3/4" into radians.
double parse_angle(const std::string& text);

/// Executes one subcommand; writes the JSON result to `out` (or config.out_path) and
/// diagnostics to `err`. Returns 0, 2 (bad input) or 3 (solver failure).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cheeger::cli
