#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sg/params.hpp"

namespace sg {

/// Copper-atom beam: m = 1.8e-25 kg, dB/dz = 1e3 T/m, sigma = 1e-5 m,
/// mu = Bohr magneton, alpha = beta = 1/sqrt2.
ExperimentParams typical_params();

inline constexpr std::size_t kDefaultSeriesSamples = 201;
inline constexpr std::size_t kDefaultProfileSamples = 1001;
inline constexpr double kDefaultProfileTime = 2e-9;

enum class Spacing { Linear, Log };

/// Coherence, entanglement and separation sampled on a time grid.
struct TimeSeries {
  std::vector<double> times;
  std::vector<double> coherence;
  std::vector<double> entropy_paper;
  std::vector<double> entropy_purity;
  std::vector<double> sep_position;
  std::vector<double> sep_momentum;

  std::size_t size() const { return times.size(); }
};

/// Branch and spin-traced position densities at one time.
struct Profile {
  double t = 0.0;
  std::vector<double> z;
  std::vector<double> density_plus;
  std::vector<double> density_minus;
  std::vector<double> density_total;

  std::size_t size() const { return z.size(); }
};

/// n samples on [t_min, t_max]. Requires 0 <= t_min < t_max, n >= 2, and
/// t_min > 0 for log spacing; throws DomainError otherwise.
std::vector<double> time_grid(double t_min, double t_max, std::size_t n, Spacing spacing);

TimeSeries coherence_series(const ExperimentParams& p, double t_min, double t_max,
                            std::size_t n, Spacing spacing = Spacing::Linear);

/// [0, 5 tau]: always covers the full decay.
std::pair<double, double> default_series_window(const ExperimentParams& p);

Profile density_profile(const ExperimentParams& p, double t, double z_min, double z_max,
                        std::size_t n = kDefaultProfileSamples);

/// +-(dz_bar(t) + 6 sigma(t)).
std::pair<double, double> default_profile_window(const ExperimentParams& p, double t);

}  // namespace sg
