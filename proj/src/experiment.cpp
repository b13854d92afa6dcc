#include "sg/experiment.hpp"

#include <cmath>

#include "sg/analytic.hpp"
#include "sg/constants.hpp"

namespace sg {

ExperimentParams typical_params() {
  PhysicalInputs<double> in;
  in.mass = 1.8e-25;
  in.field_gradient = 1e3;
  in.sigma0 = 1e-5;
  in.magnetic_moment = kBohrMagneton;
  return ExperimentParams::create(in);
}

std::vector<double> time_grid(double t_min, double t_max, std::size_t n, Spacing spacing) {
  if (!std::isfinite(t_min) || !std::isfinite(t_max) || t_min < 0.0 || !(t_min < t_max)) {
    throw DomainError("time grid requires 0 <= t_min < t_max");
  }
  if (n < 2) throw DomainError("time grid requires at least 2 samples");
  if (spacing == Spacing::Log && !(t_min > 0.0)) {
    throw DomainError("log spacing requires t_min > 0");
  }
  std::vector<double> t(n);
  const double last = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double frac = static_cast<double>(i) / last;
    t[i] = spacing == Spacing::Linear
               ? t_min + (t_max - t_min) * frac
               : std::exp(std::log(t_min) + (std::log(t_max) - std::log(t_min)) * frac);
  }
  t.front() = t_min;
  t.back() = t_max;
  return t;
}

TimeSeries coherence_series(const ExperimentParams& p, double t_min, double t_max,
                            std::size_t n, Spacing spacing) {
  TimeSeries s;
  s.times = time_grid(t_min, t_max, n, spacing);
  s.coherence.reserve(n);
  s.entropy_paper.reserve(n);
  s.entropy_purity.reserve(n);
  s.sep_position.reserve(n);
  s.sep_momentum.reserve(n);
  for (double t : s.times) {
    const double c = coherence(p, t);
    s.coherence.push_back(c);
    s.entropy_paper.push_back(1.0 - c * c);
    s.entropy_purity.push_back(1.0 - spin_density_matrix(p, t).purity());
    s.sep_position.push_back(separation_position_ratio(p, t));
    s.sep_momentum.push_back(separation_momentum_ratio(p, t));
  }
  return s;
}

std::pair<double, double> default_series_window(const ExperimentParams& p) {
  return {0.0, 5.0 * decoherence_time(p)};
}

Profile density_profile(const ExperimentParams& p, double t, double z_min, double z_max,
                        std::size_t n) {
  detail::require_time(t);
  if (!std::isfinite(z_min) || !std::isfinite(z_max) || !(z_min < z_max)) {
    throw DomainError("profile requires finite z_min < z_max");
  }
  if (n < 2) throw DomainError("profile requires at least 2 samples");
  Profile prof;
  prof.t = t;
  prof.z.resize(n);
  prof.density_plus.resize(n);
  prof.density_minus.resize(n);
  prof.density_total.resize(n);
  const double wp = std::norm(p.alpha());
  const double wm = std::norm(p.beta());
  const double step = (z_max - z_min) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double z = (i + 1 == n) ? z_max : z_min + step * static_cast<double>(i);
    prof.z[i] = z;
    prof.density_plus[i] = packet_density(p, Branch::Plus, z, t);
    prof.density_minus[i] = packet_density(p, Branch::Minus, z, t);
    prof.density_total[i] = wp * prof.density_plus[i] + wm * prof.density_minus[i];
  }
  return prof;
}

std::pair<double, double> default_profile_window(const ExperimentParams& p, double t) {
  const KinematicState k = kinematics(p, t);
  const double half = k.delta_z_bar + 6.0 * k.sigma_t;
  return {-half, half};
}

}  // namespace sg
