#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sg/analytic.hpp"
#include "sg/experiment.hpp"
#include "sg/quadrature.hpp"

namespace sg::cli {

enum class Subcommand { Report, Series, Profile, Validate };

enum ExitCode : int {
  kSuccess = 0,
  kValidationFailure = 1,
  kInvalidInput = 2,
  kIoFailure = 3,
};

struct CliConfig {
  Subcommand subcommand = Subcommand::Report;
  PhysicalInputs<double> inputs = typical_params().inputs();
  bool strict_amplitudes = false;

  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<std::size_t> samples;
  Spacing spacing = Spacing::Linear;
  std::optional<double> at_time;
  std::optional<double> z_min;
  std::optional<double> z_max;

  std::string output;  // empty: standard output
  EntropyConvention entropy = EntropyConvention::Paper;
  QuadratureSpec quadrature;

  /// Validated parameters; throws DomainError.
  ExperimentParams params() const;
};

/// Thrown by parse_args for --help; carries the usage text.
struct HelpRequested {
  std::string text;
};

/// Parses `args` (without the program name). Throws CLI11 parse errors for
/// bad flags and DomainError for values that fail validation.
CliConfig parse_args(const std::vector<std::string>& args);

/// Full front end: parse, dispatch, map failures to exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_report(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_series(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_profile(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_validate(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace sg::cli
