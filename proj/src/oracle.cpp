#include "sg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sg/analytic.hpp"
#include "sg/constants.hpp"

namespace sg {

namespace {

using cd = std::complex<double>;

// ---------------------------------------------------------------------------
// Overlap
// ---------------------------------------------------------------------------

// Local wavenumber of phi_+ conj(phi_-): the z^2 phases cancel between the
// branches, leaving the z-linear cross-phase
//   2 (m / hbar t) dz + 2 (m / hbar t) (sigma / sigma_t)^2 dz_bar.
double cross_phase_wavenumber(const ExperimentParams& p, const KinematicState& k) {
  if (k.t == 0.0) return 0.0;
  const double r = p.sigma0() / k.sigma_t;
  return 2.0 * p.mass() / (p.hbar() * k.t) * (k.delta_z + r * r * k.delta_z_bar);
}

// ---------------------------------------------------------------------------
// Propagator
// ---------------------------------------------------------------------------

// ln K_s(z, t; w, 0) =
//   ln sqrt(m / 2 pi i hbar t)
//   + (i/hbar) [ (m/2t)(z-w)^2 + (m/t) dz (z-w) + dp w - F^2 t^3 / 24m ],
// with F = s f, dz = F t^2 / 2m, dp = F t.
cd log_kernel(const ExperimentParams& p, Branch branch, double z, cd w, double t) {
  const double m = p.mass();
  const double hbar = p.hbar();
  const double force = spin_sign(branch) * p.force();
  const double dz = force * t * t / (2.0 * m);
  const double dp = force * t;

  const double quad = m / (2.0 * hbar * t);
  const double lin = m * dz / (hbar * t);
  const double src = dp / hbar;
  const double cubic = (force * t / hbar) * (force * t * t / m) / 24.0;

  const cd d = z - w;
  const cd action = quad * d * d + lin * d + src * w - cubic;

  const cd log_prefactor =
      0.5 * std::log(m / (2.0 * kPi * hbar * t)) - cd(0.0, kPi / 4.0);
  return log_prefactor + cd(0.0, 1.0) * action;
}

// ln phi(w, 0) for complex w.
cd log_initial_packet(const ExperimentParams& p, cd w) {
  const double s = p.sigma0();
  return -0.25 * std::log(2.0 * kPi * s * s) - w * w / (4.0 * s * s);
}

struct ConvolutionTerms {
  const ExperimentParams* p;
  Branch branch;
  double z;
  double t;

  cd log_integrand(cd w) const {
    return log_kernel(*p, branch, z, w, t) + log_initial_packet(*p, w);
  }
};

QuadratureResult integrate_relative(quad::PanelIntegrator<std::function<cd(double)>>& integ,
                                    double a, double b, std::size_t n,
                                    const QuadratureSpec& spec) {
  if (n > spec.max_subdivisions) {
    n = spec.max_subdivisions;
    const double h = (b - a) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      integ.add(integ.evaluate(a + h * i, i + 1 == n ? b : a + h * (i + 1)));
    }
    integ.fail("initial partition exceeds panel budget");
  }
  double mass = 0.0;
  const double h = (b - a) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const quad::Panel panel = integ.evaluate(a + h * i, i + 1 == n ? b : a + h * (i + 1));
    mass += panel.l1;
    integ.add(panel);
  }
  return integ.refine(spec.abs_tol * mass, spec.max_subdivisions);
}

KernelSample propagate_point(const ExperimentParams& p, Branch branch, double z, double t,
                             const QuadratureSpec& spec, KernelContour contour) {
  const ConvolutionTerms terms{&p, branch, z, t};
  const double sigma = p.sigma0();

  if (contour == KernelContour::RealAxis) {
    const double half = spec.window_halfwidth_sigmas * sigma;
    const double m = p.mass();
    const double hbar = p.hbar();
    const double force = spin_sign(branch) * p.force();
    // |d phase / dw| <= (m / hbar t)(|z| + |w|) + |dp - (m/t) dz| / hbar.
    const double k_max = m / (hbar * t) * (std::abs(z) + half) +
                         std::abs(force * t - force * t / 2.0) / hbar;
    const double width = quad::oscillation_panel_width(k_max, spec.min_points_per_oscillation);
    const double n_real = std::ceil(2.0 * half / width);
    const std::size_t n = n_real > 1e18 ? std::numeric_limits<std::size_t>::max()
                                        : std::max<std::size_t>(1, static_cast<std::size_t>(n_real));
    std::function<cd(double)> f = [terms](double w) { return std::exp(terms.log_integrand(w)); };
    auto integ = quad::PanelIntegrator<std::function<cd(double)>>(std::move(f));
    const QuadratureResult r = integrate_relative(integ, -half, half, n, spec);
    return {z, r.value, r.error};
  }

  // The log-integrand is quadratic in w; three samples give its curvature and
  // slope, hence the saddle w* and the direction along which the phase is
  // stationary and the modulus falls off as exp(-|c2| s^2).
  const double h = sigma;
  const cd g0 = terms.log_integrand(0.0);
  const cd gp = terms.log_integrand(h);
  const cd gm = terms.log_integrand(-h);
  const cd c2 = (gp + gm - 2.0 * g0) / (2.0 * h * h);
  const cd c1 = (gp - gm) / (2.0 * h);
  const cd saddle = -c1 / (2.0 * c2);
  const cd direction = std::polar(1.0, 0.5 * (kPi - std::arg(c2)));
  const double half = spec.window_halfwidth_sigmas / std::sqrt(2.0 * std::abs(c2));

  std::function<cd(double)> f = [terms, saddle, direction](double s) {
    return std::exp(terms.log_integrand(saddle + direction * s)) * direction;
  };
  auto integ = quad::PanelIntegrator<std::function<cd(double)>>(std::move(f));
  const QuadratureResult r = integrate_relative(integ, -half, half, 8, spec);
  return {z, r.value, r.error};
}

}  // namespace

QuadratureResult overlap_quadrature(const ExperimentParams& p, double t,
                                    const QuadratureSpec& spec) {
  spec.validate();
  const KinematicState k = kinematics(p, t);

  auto integrand = [&p, t](double z) {
    return packet_amplitude(p, Branch::Plus, z, t) *
           std::conj(packet_amplitude(p, Branch::Minus, z, t));
  };
  auto integ =
      quad::make_integrator(integrand, quad::LegendreFilonRule{cross_phase_wavenumber(p, k)});

  const double half = k.delta_z_bar + spec.window_halfwidth_sigmas * k.sigma_t;
  const double window = 2.0 * half;

  // Panels one packet width wide resolve the envelope; the carrier is
  // integrated exactly by the rule.
  const double coarse_real = std::ceil(window / k.sigma_t);
  const std::size_t budget = spec.max_subdivisions;
  if (coarse_real > static_cast<double>(budget)) {
    const double h = window / static_cast<double>(budget);
    for (std::size_t i = 0; i < budget; ++i) {
      integ.add(integ.evaluate(-half + h * i, i + 1 == budget ? half : -half + h * (i + 1)));
    }
    integ.fail("envelope partition exceeds panel budget");
  }
  const auto n_coarse = static_cast<std::size_t>(coarse_real);
  const double coarse_width = window / static_cast<double>(n_coarse);

  // Half the tolerance may be spent on panels settled by their |f| mass.
  const double settle_density = 0.5 * spec.abs_tol / window;
  for (std::size_t i = 0; i < n_coarse; ++i) {
    const double a = -half + coarse_width * static_cast<double>(i);
    const double b = (i + 1 == n_coarse) ? half : a + coarse_width;
    const quad::Panel panel = integ.evaluate(a, b);
    if (2.0 * panel.l1 <= settle_density * (b - a)) {
      integ.add_settled(panel.value, 2.0 * panel.l1);
    } else {
      integ.add(panel);
    }
  }
  return integ.refine(spec.abs_tol, budget);
}

std::complex<double> branch_kernel(const ExperimentParams& p, Branch branch, double z,
                                   std::complex<double> z_source, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("kernel requires t > 0");
  return std::exp(log_kernel(p, branch, z, z_source, t));
}

std::vector<KernelSample> propagate_via_kernel(const ExperimentParams& p, Branch branch,
                                               std::span<const double> z_grid, double t,
                                               const QuadratureSpec& spec,
                                               KernelContour contour) {
  spec.validate();
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("kernel propagation requires finite t > 0");
  }
  std::vector<KernelSample> out;
  out.reserve(z_grid.size());
  for (double z : z_grid) {
    if (!std::isfinite(z)) throw DomainError("grid positions must be finite");
    out.push_back(propagate_point(p, branch, z, t, spec, contour));
  }
  return out;
}

QuadratureResult kernel_norm(const ExperimentParams& p, Branch branch, double t,
                             const QuadratureSpec& spec) {
  spec.validate();
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("kernel propagation requires finite t > 0");
  }
  const KinematicState k = kinematics(p, t);
  const double centre = spin_sign(branch) * k.delta_z_bar;
  const double half = spec.window_halfwidth_sigmas * k.sigma_t;
  auto density = [&](double z) {
    return std::complex<double>(
        std::norm(propagate_point(p, branch, z, t, spec, KernelContour::SteepestDescent).value),
        0.0);
  };
  return quad::integrate_uniform(density, centre - half, centre + half, 12, spec.abs_tol,
                                 spec.max_subdivisions);
}

BisectionResult decoherence_time_bisection(const ExperimentParams& p, double tol_rel,
                                           const std::function<void(double, double)>& observer) {
  if (!(tol_rel > 0.0)) throw DomainError("tol_rel must be > 0");
  const double target = std::exp(-1.0);
  auto excess = [&](double t) { return coherence(p, t) - target; };

  double lower = 0.0;
  double upper = std::min(decoherence_time_momentum_limit(p),
                          decoherence_time_spreading_limit(p)) / 100.0;
  int doublings = 0;
  while (excess(upper) > 0.0) {
    lower = upper;
    upper *= 2.0;
    if (++doublings > 2000) throw std::runtime_error("bisection: no bracket found");
  }

  int iterations = 0;
  while (upper - lower > tol_rel * upper) {
    if (iterations >= kMaxBisectionIterations) {
      throw std::runtime_error("bisection: iteration limit reached");
    }
    const double mid = lower + 0.5 * (upper - lower);
    if (mid <= lower || mid >= upper) break;
    if (excess(mid) > 0.0) {
      lower = mid;
    } else {
      upper = mid;
    }
    ++iterations;
    if (observer) observer(lower, upper);
  }
  return {lower + 0.5 * (upper - lower), iterations, lower, upper};
}

}  // namespace sg
