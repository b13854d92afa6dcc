#pragma once

// Independent numerical routes to the closed forms in analytic.hpp:
// direct quadrature of the branch overlap, propagation of the initial packet
// through the branch propagator, and bisection for the 1/e coherence time.
// None of these call the closed-form coherence or the evolved-packet formula
// except as the quantity being integrated (overlap) or compared against.

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "sg/params.hpp"
#include "sg/quadrature.hpp"

namespace sg {

/// Numerically integrates phi_+(z,t) conj(phi_-(z,t)) over
/// [-(dz_bar + W sigma_t), dz_bar + W sigma_t].
///
/// The integrand is a Gaussian envelope on a plane-wave carrier of
/// wavenumber k (the z^2 phases of the two branches cancel). Each panel is
/// integrated with a Legendre-Filon rule against that carrier, so panels
/// resolve the envelope only, however many oscillations they span. A panel
/// whose integral of |integrand| is below its share of abs_tol is settled with
/// error bound twice that mass.
/// Throws ConvergenceError when abs_tol is not reached within
/// spec.max_subdivisions panels.
QuadratureResult overlap_quadrature(const ExperimentParams& p, double t,
                                    const QuadratureSpec& spec = {});

/// Integration path for the propagator convolution.
enum class KernelContour {
  SteepestDescent,  // straight line through the saddle of the integrand
  RealAxis,         // oscillation-resolving quadrature along real z'
};

struct KernelSample {
  double z;                    // m
  std::complex<double> value;  // m^-1/2
  double error;                // estimated absolute error of value
};

/// Branch propagator K_s(z, t; z', 0) for H_s = p^2/2m - s f z, evaluated at
/// a (possibly complex) source point z'.
std::complex<double> branch_kernel(const ExperimentParams& p, Branch branch, double z,
                                   std::complex<double> z_source, double t);

/// psi_s(z, t) = integral of K_s(z, t; z', 0) phi(z', 0) dz' for each z in
/// z_grid. Requires t > 0. Tolerance is spec.abs_tol relative to the
/// integral of |integrand| along the contour.
std::vector<KernelSample> propagate_via_kernel(
    const ExperimentParams& p, Branch branch, std::span<const double> z_grid, double t,
    const QuadratureSpec& spec = {},
    KernelContour contour = KernelContour::SteepestDescent);

/// Integral of |psi_s(z, t)|^2 dz for the kernel-propagated packet.
QuadratureResult kernel_norm(const ExperimentParams& p, Branch branch, double t,
                             const QuadratureSpec& spec = {});

struct BisectionResult {
  double root;
  int iterations;
  double lower;
  double upper;
};

inline constexpr int kMaxBisectionIterations = 200;

/// Root of coherence(t) - 1/e. The bracket is grown by doubling from
/// min(tau1, tau2)/100, then halved until its width is <= tol_rel * upper.
/// `observer`, if set, sees every bracket (lower, upper) during bisection.
BisectionResult decoherence_time_bisection(
    const ExperimentParams& p, double tol_rel = 1e-12,
    const std::function<void(double, double)>& observer = {});

}  // namespace sg
