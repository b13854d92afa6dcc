#pragma once

// Cross-checks of the closed forms against the numeric oracles, packaged as
// named pass/fail results. Used by `sgcoh validate` and the acceptance suite.

#include <span>
#include <string>
#include <vector>

#include "sg/oracle.hpp"
#include "sg/params.hpp"

namespace sg {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double bound = 0.0;
  bool passed = false;
  std::string note;  // e.g. convergence failure details
};

/// Closed-form coherence against |overlap_quadrature| on a set of times.
struct OverlapSweep {
  double max_abs_error = 0.0;        // max |C - |Q||
  double max_rel_error = 0.0;        // max |C - |Q|| / C over times where C >= 1e-3
  double max_imaginary = 0.0;        // max |Im Q|
  double max_reported_error = 0.0;   // max quadrature error estimate
  std::size_t evaluations = 0;
};

/// Throws ConvergenceError if any quadrature fails.
OverlapSweep overlap_sweep(const ExperimentParams& p, std::span<const double> times,
                           const QuadratureSpec& spec);

/// Kernel-propagated packet against the closed-form amplitude at one time.
struct KernelComparison {
  double max_density_rel_error = 0.0;  // where density > 1e-3 x peak
  double max_phase_deviation = 0.0;    // rad, after aligning at the packet centre
  double peak_offset = 0.0;            // |argmax_z |psi|^2 - s dz_bar| in grid steps
  double grid_step = 0.0;
};

KernelComparison compare_kernel(const ExperimentParams& p, Branch branch, double t,
                                const QuadratureSpec& spec, std::size_t grid_points = 401);

/// Integral of |phi_s(z, t)|^2 by quadrature.
double packet_norm_quadrature(const ExperimentParams& p, Branch branch, double t,
                              const QuadratureSpec& spec);

/// Integral of the spin-traced position density by quadrature.
double total_density_quadrature(const ExperimentParams& p, double t, const QuadratureSpec& spec);

/// 50 log-spaced times on [1 ps, 100 us].
std::vector<double> oracle_times();

/// The fixed suite run by `sgcoh validate`. Never throws on quadrature
/// failure; such checks come back failed with a note.
std::vector<CheckResult> validation_suite(const ExperimentParams& p, const QuadratureSpec& spec);

}  // namespace sg
