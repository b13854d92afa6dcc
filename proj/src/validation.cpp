#include "sg/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "sg/analytic.hpp"
#include "sg/experiment.hpp"

namespace sg {

namespace {

std::string label(const char* name, double t) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s[t=%.3g s]", name, t);
  return buf;
}

CheckResult make_check(std::string name, double measured, double bound) {
  return {std::move(name), measured, bound, measured <= bound, {}};
}

CheckResult failed_check(std::string name, double bound, const std::exception& e) {
  return {std::move(name), std::nan(""), bound, false, e.what()};
}

// Integral of a density over the union of the two branch windows
// [s dz_bar - W sigma_t, s dz_bar + W sigma_t]; outside them the integrand is
// below exp(-W^2/2) of its peak.
template <typename F>
double integrate_over_branches(F density, const KinematicState& k, const QuadratureSpec& spec) {
  const double reach = spec.window_halfwidth_sigmas * k.sigma_t;
  auto as_complex = [&](double z) { return std::complex<double>(density(z), 0.0); };
  auto piece = [&](double a, double b) {
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / k.sigma_t)));
    return quad::integrate_uniform(as_complex, a, b, n, 0.5 * spec.abs_tol,
                                   spec.max_subdivisions)
        .value.real();
  };
  if (k.delta_z_bar - reach <= -k.delta_z_bar + reach) {
    return piece(-k.delta_z_bar - reach, k.delta_z_bar + reach);
  }
  return piece(-k.delta_z_bar - reach, -k.delta_z_bar + reach) +
         piece(k.delta_z_bar - reach, k.delta_z_bar + reach);
}

}  // namespace

std::vector<double> oracle_times() { return time_grid(1e-12, 1e-4, 50, Spacing::Log); }

OverlapSweep overlap_sweep(const ExperimentParams& p, std::span<const double> times,
                           const QuadratureSpec& spec) {
  OverlapSweep s;
  for (double t : times) {
    const QuadratureResult q = overlap_quadrature(p, t, spec);
    const double c = coherence(p, t);
    const double diff = std::abs(c - std::abs(q.value));
    s.max_abs_error = std::max(s.max_abs_error, diff);
    if (c >= 1e-3) s.max_rel_error = std::max(s.max_rel_error, diff / c);
    s.max_imaginary = std::max(s.max_imaginary, std::abs(q.value.imag()));
    s.max_reported_error = std::max(s.max_reported_error, q.error);
    s.evaluations += q.evaluations;
  }
  return s;
}

KernelComparison compare_kernel(const ExperimentParams& p, Branch branch, double t,
                                const QuadratureSpec& spec, std::size_t grid_points) {
  if (grid_points < 3) throw DomainError("kernel comparison needs at least 3 grid points");
  if (grid_points % 2 == 0) ++grid_points;  // keep the packet centre on the grid
  const KinematicState k = kinematics(p, t);
  const double centre = spin_sign(branch) * k.delta_z_bar;
  const double half = 6.0 * k.sigma_t;
  const double step = 2.0 * half / static_cast<double>(grid_points - 1);
  std::vector<double> z(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) {
    z[i] = centre - half + step * static_cast<double>(i);
  }
  const std::size_t mid = grid_points / 2;
  z[mid] = centre;

  const auto samples = propagate_via_kernel(p, branch, z, t, spec);
  const double peak = 1.0 / (std::sqrt(2.0 * kPi) * k.sigma_t);
  const std::complex<double> reference = samples[mid].value / packet_amplitude(p, branch, centre, t);

  KernelComparison cmp;
  cmp.grid_step = step;
  std::size_t argmax = 0;
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double kernel_density = std::norm(samples[i].value);
    if (kernel_density > std::norm(samples[argmax].value)) argmax = i;
    const double density = packet_density(p, branch, z[i], t);
    if (density <= 1e-3 * peak) continue;
    cmp.max_density_rel_error =
        std::max(cmp.max_density_rel_error, std::abs(kernel_density - density) / density);
    const std::complex<double> ratio = samples[i].value / packet_amplitude(p, branch, z[i], t);
    cmp.max_phase_deviation = std::max(cmp.max_phase_deviation, std::abs(std::arg(ratio / reference)));
  }
  cmp.peak_offset = std::abs(z[argmax] - centre) / step;
  return cmp;
}

double packet_norm_quadrature(const ExperimentParams& p, Branch branch, double t,
                              const QuadratureSpec& spec) {
  const KinematicState k = kinematics(p, t);
  const double centre = spin_sign(branch) * k.delta_z_bar;
  const double reach = spec.window_halfwidth_sigmas * k.sigma_t;
  auto density = [&](double z) {
    return std::complex<double>(std::norm(packet_amplitude(p, branch, z, t)), 0.0);
  };
  return quad::integrate_uniform(density, centre - reach, centre + reach, 24, spec.abs_tol,
                                 spec.max_subdivisions)
      .value.real();
}

double total_density_quadrature(const ExperimentParams& p, double t, const QuadratureSpec& spec) {
  const KinematicState k = kinematics(p, t);
  return integrate_over_branches([&](double z) { return total_position_density(p, z, t); }, k,
                                 spec);
}

std::vector<CheckResult> validation_suite(const ExperimentParams& p, const QuadratureSpec& spec) {
  std::vector<CheckResult> out;

  const std::vector<double> times = oracle_times();
  try {
    const OverlapSweep s = overlap_sweep(p, times, spec);
    out.push_back(make_check("overlap_vs_closed_form_abs", s.max_abs_error, 1e-6));
    out.push_back(make_check("overlap_vs_closed_form_rel", s.max_rel_error, 1e-6));
    out.push_back(make_check("overlap_imaginary_part", s.max_imaginary, 1e-8));
  } catch (const std::exception& e) {
    out.push_back(failed_check("overlap_vs_closed_form_abs", 1e-6, e));
  }

  try {
    const double tau = decoherence_time(p);
    const BisectionResult b = decoherence_time_bisection(p, 1e-12);
    out.push_back(make_check("tau_closed_form_vs_bisection", std::abs(b.root - tau) / tau, 1e-6));
    out.push_back(
        make_check("coherence_at_tau_is_1_over_e", std::abs(coherence(p, tau) * std::exp(1.0) - 1.0), 1e-9));
  } catch (const std::exception& e) {
    out.push_back(failed_check("tau_closed_form_vs_bisection", 1e-6, e));
  }

  for (double t : {2e-9, 1e-6, 1e-5}) {
    try {
      const KernelComparison c = compare_kernel(p, Branch::Plus, t, spec);
      out.push_back(make_check(label("kernel_density", t), c.max_density_rel_error, 1e-4));
      out.push_back(make_check(label("kernel_phase", t), c.max_phase_deviation, 1e-3));
      out.push_back(make_check(label("kernel_peak_offset_steps", t), c.peak_offset, 1.0));
    } catch (const std::exception& e) {
      out.push_back(failed_check(label("kernel_density", t), 1e-4, e));
    }
    try {
      const QuadratureResult n = kernel_norm(p, Branch::Minus, t, spec);
      out.push_back(make_check(label("kernel_unitarity", t), std::abs(n.value.real() - 1.0), 1e-6));
    } catch (const std::exception& e) {
      out.push_back(failed_check(label("kernel_unitarity", t), 1e-6, e));
    }
  }

  for (double t : {0.0, 1e-9, 1e-7, 1e-5, 1e-4}) {
    try {
      const double dev = std::max({std::abs(packet_norm_quadrature(p, Branch::Plus, t, spec) - 1.0),
                                   std::abs(packet_norm_quadrature(p, Branch::Minus, t, spec) - 1.0),
                                   std::abs(total_density_quadrature(p, t, spec) - 1.0)});
      out.push_back(make_check(label("normalization", t), dev, 1e-6));
    } catch (const std::exception& e) {
      out.push_back(failed_check(label("normalization", t), 1e-6, e));
    }
  }
  return out;
}

}  // namespace sg
