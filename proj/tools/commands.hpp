#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "weakrev/measurement.hpp"
#include "weakrev/reversal.hpp"

namespace weakrev::cli {

enum class Command { analyze, random_scan, sweep_eta, schur_check, simulate_reverse, dilate_check };

enum class Format { json, csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitAlarm = 3;

struct RunConfig {
  Command command = Command::analyze;
  std::optional<long long> dimension;
  std::optional<long long> outcomes;
  std::optional<long long> count;
  std::optional<long long> samples;
  std::optional<long long> trials;
  std::optional<long long> eta_steps;
  std::uint64_t seed = 0;
  double tol_completeness = MeasurementSet::kDefaultCompletenessTol;
  double tol_reversible = kReversibleThreshold;
  std::optional<std::string> input_path;
  std::optional<std::string> output_path;
  std::optional<std::string> example;
  /// Input state for simulate-reverse: "uniform", "basis:K" or "random".
  std::string state = "uniform";
  /// Unset means the command's natural format (CSV for sweep-eta, JSON otherwise).
  std::optional<Format> format;
};

std::optional<Command> parse_command(const std::string& name);

/// Builds a measurement set from `--example NAME`: von-neumann:D, weak-eta:VALUE, identity:D.
MeasurementSet example_from_selector(const std::string& selector);

/// Runs one command. Primary output goes to `out` (or --out), diagnostics and
/// error payloads to `err`. Returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_random_scan(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_sweep_eta(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_schur_check(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate_reverse(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_dilate_check(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Text appended to --help: output columns and keys per command.
extern const char* const kOutputSchemaHelp;

}  // namespace weakrev::cli
