#include "sg/cli.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sg/csv.hpp"
#include "sg/validation.hpp"

namespace sg::cli {

namespace {

std::complex<double> to_amplitude(const std::vector<double>& parts, const char* name) {
  if (parts.empty() || parts.size() > 2) throw DomainError(std::string(name) + ": expected re,im");
  return {parts[0], parts.size() == 2 ? parts[1] : 0.0};
}

std::string num(double v) { return csv::format_number(v); }

// Writes via `emit` to the configured file, or to `out` when none is set.
template <typename Emit>
int write_output(const CliConfig& config, std::ostream& out, std::ostream& err, Emit emit) {
  if (config.output.empty()) {
    emit(out);
    out.flush();
    return out ? kSuccess : kIoFailure;
  }
  std::ofstream file(config.output, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open '" << config.output << "' for writing\n";
    return kIoFailure;
  }
  emit(file);
  file.flush();
  if (!file) {
    err << "error: failed writing '" << config.output << "'\n";
    return kIoFailure;
  }
  return kSuccess;
}

}  // namespace

ExperimentParams CliConfig::params() const {
  return ExperimentParams::create(
      inputs, strict_amplitudes ? AmplitudePolicy::Strict : AmplitudePolicy::Normalize);
}

CliConfig parse_args(const std::vector<std::string>& args) {
  CliConfig c;
  CLI::App app{"Spin coherence and entanglement in a Stern-Gerlach magnet", "sgcoh"};
  app.require_subcommand(1, 1);
  app.allow_config_extras(false);
  app.set_config("--config", "", "key=value parameter file (flags take precedence)");

  std::vector<double> alpha{0.7071067811865476, 0.0};
  std::vector<double> beta{0.7071067811865476, 0.0};
  std::string spacing = "linear";
  std::string entropy = "paper";

  app.add_option("--mass", c.inputs.mass, "particle mass, kg")->capture_default_str();
  app.add_option("--gradient", c.inputs.field_gradient, "field gradient dB/dz, T/m")
      ->capture_default_str();
  app.add_option("--moment", c.inputs.magnetic_moment, "magnetic moment, J/T")
      ->capture_default_str();
  app.add_option("--sigma", c.inputs.sigma0, "initial packet width, m")->capture_default_str();
  app.add_option("--alpha", alpha, "spin-up amplitude re,im")
      ->delimiter(',')
      ->expected(1, 2)
      ->capture_default_str();
  app.add_option("--beta", beta, "spin-down amplitude re,im")
      ->delimiter(',')
      ->expected(1, 2)
      ->capture_default_str();
  app.add_flag("--strict-amplitudes", c.strict_amplitudes,
               "reject unnormalised amplitudes instead of normalising");

  app.add_option("--t-min", c.t_min, "series start time, s");
  app.add_option("--t-max", c.t_max, "series end time, s (default 5 tau)");
  app.add_option("--samples", c.samples, "grid size (series 201, profile 1001)");
  app.add_option("--spacing", spacing, "series spacing")
      ->check(CLI::IsMember({"linear", "log"}))
      ->capture_default_str();
  app.add_option("--at-time", c.at_time, "profile time, s (default 2e-9)");
  app.add_option("--z-min", c.z_min, "profile window start, m");
  app.add_option("--z-max", c.z_max, "profile window end, m");
  app.add_option("-o,--output", c.output, "output file (default: standard output)");
  app.add_option("--entropy", entropy, "linear entropy convention in the report")
      ->check(CLI::IsMember({"paper", "purity"}))
      ->capture_default_str();

  app.add_option("--abs-tol", c.quadrature.abs_tol, "quadrature absolute tolerance")
      ->capture_default_str();
  app.add_option("--max-subdivisions", c.quadrature.max_subdivisions, "quadrature panel budget")
      ->capture_default_str();
  app.add_option("--window-sigmas", c.quadrature.window_halfwidth_sigmas,
                 "quadrature window half-width in packet widths")
      ->capture_default_str();
  app.add_option("--points-per-oscillation", c.quadrature.min_points_per_oscillation,
                 "minimum quadrature nodes per oscillation")
      ->capture_default_str();

  auto* report = app.add_subcommand("report", "decoherence time, regime and separations");
  auto* series = app.add_subcommand("series", "coherence/entanglement time series as CSV");
  auto* profile = app.add_subcommand("profile", "branch position densities as CSV");
  auto* validate = app.add_subcommand("validate", "cross-check closed forms against oracles");
  for (auto* sub : {report, series, profile, validate}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  }

  if (*series) c.subcommand = Subcommand::Series;
  else if (*profile) c.subcommand = Subcommand::Profile;
  else if (*validate) c.subcommand = Subcommand::Validate;
  else c.subcommand = Subcommand::Report;

  c.inputs.alpha = to_amplitude(alpha, "--alpha");
  c.inputs.beta = to_amplitude(beta, "--beta");
  c.spacing = spacing == "log" ? Spacing::Log : Spacing::Linear;
  c.entropy = entropy == "purity" ? EntropyConvention::Purity : EntropyConvention::Paper;
  c.quadrature.validate();
  c.params();
  return c;
}

int run_report(const CliConfig& config, std::ostream& out, std::ostream&) {
  const ExperimentParams p = config.params();
  const CoherenceReport r = regime_report(p);
  const bool paper = config.entropy == EntropyConvention::Paper;
  out << "mass = " << num(p.mass()) << " kg\n"
      << "field_gradient = " << num(p.field_gradient()) << " T/m\n"
      << "magnetic_moment = " << num(p.magnetic_moment()) << " J/T\n"
      << "sigma0 = " << num(p.sigma0()) << " m\n"
      << "force = " << num(p.force()) << " N\n"
      << "chi = " << num(r.chi) << '\n'
      << "regime = " << to_string(r.regime) << '\n'
      << "tau = " << num(r.tau) << " s\n"
      << "tau1 = " << num(r.tau1) << " s\n"
      << "tau2 = " << num(r.tau2) << " s\n"
      << "sep_position_at_tau = " << num(r.sep_position_at_tau) << '\n'
      << "sep_momentum_at_tau = " << num(r.sep_momentum_at_tau) << '\n'
      << "coherence_at_tau = " << num(coherence(p, r.tau)) << '\n'
      << "linear_entropy_at_tau = " << num(linear_entropy(p, r.tau, config.entropy))
      << (paper ? " (paper)" : " (purity)") << '\n';
  out.flush();
  return out ? kSuccess : kIoFailure;
}

int run_series(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const ExperimentParams p = config.params();
  const double tau = decoherence_time(p);
  const double t_min =
      config.t_min.value_or(config.spacing == Spacing::Log ? 1e-3 * tau : 0.0);
  const double t_max = config.t_max.value_or(5.0 * tau);
  const TimeSeries s = coherence_series(p, t_min, t_max,
                                        config.samples.value_or(kDefaultSeriesSamples),
                                        config.spacing);
  return write_output(config, out, err, [&](std::ostream& os) { csv::write_series(os, s); });
}

int run_profile(const CliConfig& config, std::ostream& out, std::ostream& err) {
  const ExperimentParams p = config.params();
  const double t = config.at_time.value_or(kDefaultProfileTime);
  const auto window = default_profile_window(p, t);
  const Profile prof =
      density_profile(p, t, config.z_min.value_or(window.first),
                      config.z_max.value_or(window.second),
                      config.samples.value_or(kDefaultProfileSamples));
  return write_output(config, out, err, [&](std::ostream& os) { csv::write_profile(os, prof); });
}

int run_validate(const CliConfig& config, std::ostream& out, std::ostream&) {
  const ExperimentParams p = config.params();
  const auto checks = validation_suite(p, config.quadrature);
  std::size_t passed = 0;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " error=" << num(c.measured)
        << " bound=" << num(c.bound);
    if (!c.note.empty()) out << " note=\"" << c.note << '"';
    out << '\n';
    passed += c.passed ? 1 : 0;
  }
  out << passed << '/' << checks.size() << " checks passed\n";
  out.flush();
  return passed == checks.size() ? kSuccess : kValidationFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig config;
  try {
    config = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    switch (config.subcommand) {
      case Subcommand::Report: return run_report(config, out, err);
      case Subcommand::Series: return run_series(config, out, err);
      case Subcommand::Profile: return run_profile(config, out, err);
      case Subcommand::Validate: return run_validate(config, out, err);
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace sg::cli
