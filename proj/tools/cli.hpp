#pragma once

// Config parsing and the density / diagnose / sweep commands.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "freeconv/inversion.hpp"
#include "freeconv/transform.hpp"

namespace freeconv::cli {

/// Malformed config text or command line (exit code 2).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitNumerical = 4;

struct RunConfig {
  PhiDescriptor mu = PhiDescriptor::stable(2.0, 0.0);
  MeasureRep nu;
  std::vector<double> t{1.0};
  double window_lo = -5.0, window_hi = 5.0;
  int grid_n = 512;
  Tolerances tol;
  std::filesystem::path out = "out";
};

/// Violations are collected and reported together, one "path: message" per line.
RunConfig parse_config(const std::string& text);

/// Parses the measure schema on its own; `path` prefixes error messages.
MeasureRep parse_measure(const std::string& text, const std::string& path = "nu");

/// Fixed 12-significant-digit text, with -0 written as 0.
std::string format_number(double v);

struct DensityResult {
  std::vector<double> s;
  std::vector<double> p;
  std::vector<std::string> warnings;
};

/// Each command reads cfg.t[0] unless stated otherwise and writes into `dir`.
DensityResult cmd_density(const RunConfig& cfg, const std::filesystem::path& dir);
void cmd_diagnose(const RunConfig& cfg, const std::filesystem::path& dir);
/// One subdirectory per t plus index.csv; a failing t is recorded, not fatal.
void cmd_sweep(const RunConfig& cfg, const std::filesystem::path& dir);

/// Full command-line entry point; returns the process exit code.
int run(int argc, char** argv);

}  // namespace freeconv::cli
