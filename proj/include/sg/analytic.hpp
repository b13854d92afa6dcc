#pragma once

// Closed-form spin-position dynamics of a one-dimensional Stern-Gerlach
// magnet, H = p^2/2m - f sigma_z z, for an initially separable state
// (alpha|+> + beta|->) x phi(z,0) with a minimum-uncertainty Gaussian phi.
//
// Everything here is a pure function of an immutable parameter record and a
// time (and position), templated on the scalar type so the same expressions
// can be evaluated in double or long double.

#include <cmath>
#include <complex>
#include <stdexcept>

#include "sg/constants.hpp"
#include "sg/density_matrix.hpp"
#include "sg/errors.hpp"
#include "sg/params.hpp"

namespace sg {

namespace detail {

template <typename Scalar>
void require_time(Scalar t) {
  using std::isfinite;
  if (!isfinite(t) || t < Scalar(0)) {
    throw DomainError("time must be finite and >= 0");
  }
}

template <typename Scalar>
void require_finite(Scalar x, const char* what) {
  using std::isfinite;
  if (!isfinite(x)) {
    throw DomainError(std::string(what) + " must be finite");
  }
}

template <typename Scalar>
constexpr Scalar sqrt2() {
  return static_cast<Scalar>(1.41421356237309504880168872420969808L);
}

template <typename Scalar>
constexpr Scalar sqrt_2pi() {
  return static_cast<Scalar>(2.50662827463100050241576528481104525L);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Kinematics
// ---------------------------------------------------------------------------

/// Classical quantities of one branch at time t.
template <typename Scalar>
struct BasicKinematicState {
  Scalar t;
  Scalar delta_p;      // momentum transfer f t, kg m/s
  Scalar delta_z;      // f t^2 / 2m, m
  Scalar delta_z_bar;  // t delta_p / m - delta_z, m (packet centre offset)
  Scalar sigma_t;      // packet width, m
};

using KinematicState = BasicKinematicState<double>;

/// Free-spreading time scale 2 m sigma^2 / hbar. sigma(t) = sigma sqrt(1 + (t/t_s)^2).
template <typename Scalar>
Scalar spreading_time(const BasicExperimentParams<Scalar>& p) {
  return Scalar(2) * p.mass() * p.sigma0() * p.sigma0() / p.hbar();
}

template <typename Scalar>
BasicKinematicState<Scalar> kinematics(const BasicExperimentParams<Scalar>& p, Scalar t) {
  detail::require_time(t);
  using std::abs;
  using std::hypot;
  const Scalar f = p.force();
  const Scalar m = p.mass();
  BasicKinematicState<Scalar> k;
  k.t = t;
  k.delta_p = f * t;
  k.delta_z = f * t * t / (Scalar(2) * m);
  k.delta_z_bar = t * k.delta_p / m - k.delta_z;
  // delta_z_bar and delta_z are the same quantity written two ways.
  if (abs(k.delta_z_bar - k.delta_z) > Scalar(1e-12) * abs(k.delta_z)) {
    throw std::logic_error("kinematics: delta_z_bar != delta_z");
  }
  k.sigma_t = hypot(p.sigma0(), p.hbar() * t / (Scalar(2) * m * p.sigma0()));
  return k;
}

// ---------------------------------------------------------------------------
// Branch wavepackets
// ---------------------------------------------------------------------------

/// Initial minimum-uncertainty packet phi(z, 0), real.
template <typename Scalar>
Scalar initial_packet(const BasicExperimentParams<Scalar>& p, Scalar z) {
  using std::exp;
  using std::sqrt;
  const Scalar s = p.sigma0();
  return exp(-z * z / (Scalar(4) * s * s)) / sqrt(detail::sqrt_2pi<Scalar>() * s);
}

/// Evolved branch amplitude phi_s(z, t), m^-1/2, with the global phase
/// theta(t) set to zero and the cubic phase -f^2 t^3 / (24 m hbar).
///
/// The two quadratic phases (m/2 hbar t) z^2 and -(m/2 hbar t)(sigma/sigma_t)^2 u^2,
/// u = z - s dz_bar, are individually huge for small t and nearly cancel; they
/// are recombined exactly into q u^2 + s (f t / hbar) z - f^2 t^3 / (8 m hbar),
/// q = hbar t / (8 m sigma^2 sigma_t^2). t = 0 returns the initial packet.
template <typename Scalar>
std::complex<Scalar> packet_amplitude(const BasicExperimentParams<Scalar>& p, Branch branch,
                                      Scalar z, Scalar t) {
  detail::require_time(t);
  detail::require_finite(z, "position");
  if (t == Scalar(0)) {
    return {initial_packet(p, z), Scalar(0)};
  }
  using std::exp;
  using std::sqrt;
  const auto k = kinematics(p, t);
  const Scalar s = static_cast<Scalar>(spin_sign(branch));
  const Scalar u = z - s * k.delta_z_bar;
  const Scalar w2 = k.sigma_t * k.sigma_t;
  const Scalar envelope =
      exp(-u * u / (Scalar(4) * w2)) / sqrt(k.sigma_t * detail::sqrt_2pi<Scalar>());

  const Scalar q = (t / spreading_time(p)) / (Scalar(4) * w2);
  const Scalar kick = p.force() * t / p.hbar();  // f t / hbar, 1/m
  const Scalar recombined_constant = -kick * k.delta_z / Scalar(4);  // -f^2 t^3 / (8 m hbar)
  const Scalar cubic = -kick * k.delta_z / Scalar(12);               // -f^2 t^3 / (24 m hbar)
  const Scalar phase = q * u * u + s * kick * z + recombined_constant + cubic;
  return std::polar(envelope, phase);
}

/// |phi_s(z, t)|^2: Gaussian of mean s * dz_bar(t) and standard deviation sigma(t).
template <typename Scalar>
Scalar packet_density(const BasicExperimentParams<Scalar>& p, Branch branch, Scalar z,
                      Scalar t) {
  detail::require_finite(z, "position");
  using std::exp;
  const auto k = kinematics(p, t);
  const Scalar u = z - static_cast<Scalar>(spin_sign(branch)) * k.delta_z_bar;
  return exp(-u * u / (Scalar(2) * k.sigma_t * k.sigma_t)) /
         (detail::sqrt_2pi<Scalar>() * k.sigma_t);
}

/// Position density after tracing out the spin. The branches are tied to
/// orthogonal spin states, so no interference term survives.
template <typename Scalar>
Scalar total_position_density(const BasicExperimentParams<Scalar>& p, Scalar z, Scalar t) {
  return std::norm(p.alpha()) * packet_density(p, Branch::Plus, z, t) +
         std::norm(p.beta()) * packet_density(p, Branch::Minus, z, t);
}

// ---------------------------------------------------------------------------
// Separation measures
// ---------------------------------------------------------------------------

/// dz_bar(t) / sigma(t): branch-centre offset in units of the packet width.
template <typename Scalar>
Scalar separation_position_ratio(const BasicExperimentParams<Scalar>& p, Scalar t) {
  const auto k = kinematics(p, t);
  return k.delta_z_bar / k.sigma_t;
}

enum class Asymptote { Short, Long };

/// Short times (sigma(t) ~ sigma): f t^2 / (2 m sigma).
/// Long times (sigma(t) >> sigma): f sigma t / hbar.
template <typename Scalar>
Scalar separation_position_approx(const BasicExperimentParams<Scalar>& p, Scalar t,
                                  Asymptote regime) {
  detail::require_time(t);
  const Scalar f = p.force();
  if (regime == Asymptote::Short) {
    return f * t * t / (Scalar(2) * p.mass() * p.sigma0());
  }
  return f * p.sigma0() * t / p.hbar();
}

/// delta_p(t) / (hbar / 2 sigma) = 2 f sigma t / hbar. Linear in t.
template <typename Scalar>
Scalar separation_momentum_ratio(const BasicExperimentParams<Scalar>& p, Scalar t) {
  detail::require_time(t);
  const Scalar rate = Scalar(2) * p.force() * p.sigma0() / p.hbar();
  return rate * t;
}

// ---------------------------------------------------------------------------
// Coherence and entanglement
// ---------------------------------------------------------------------------

/// The two non-negative exponent contributions to -ln C(t).
template <typename Scalar>
struct CoherenceExponents {
  Scalar momentum;  // 1/2 [1/2 (dp / (hbar/2sigma)) (sigma/sigma_t + sigma_t/sigma)]^2
  Scalar position;  // 1/2 (dz_bar / sigma_t)^2
  Scalar total() const { return momentum + position; }
};

template <typename Scalar>
CoherenceExponents<Scalar> coherence_exponents(const BasicExperimentParams<Scalar>& p,
                                               Scalar t) {
  const auto k = kinematics(p, t);
  const Scalar width_ratio = p.sigma0() / k.sigma_t;
  const Scalar mom =
      Scalar(0.5) * separation_momentum_ratio(p, t) * (width_ratio + Scalar(1) / width_ratio);
  const Scalar pos = k.delta_z_bar / k.sigma_t;
  return {Scalar(0.5) * mom * mom, Scalar(0.5) * pos * pos};
}

/// Normalised branch overlap C(t) = |<phi_-(t)|phi_+(t)>|, in (0, 1], C(0) = 1.
/// Underflows to 0 once -ln C exceeds ~745.
template <typename Scalar>
Scalar coherence(const BasicExperimentParams<Scalar>& p, Scalar t) {
  using std::exp;
  return exp(-coherence_exponents(p, t).total());
}

template <typename Scalar>
BasicSpinDensityMatrix<Scalar> spin_density_matrix(const BasicExperimentParams<Scalar>& p,
                                                   Scalar t) {
  const Scalar c = coherence(p, t);
  return {std::norm(p.alpha()), std::norm(p.beta()), p.alpha() * std::conj(p.beta()) * c};
}

enum class EntropyConvention {
  Paper,   // 1 - C^2, reaches 1 at full decoherence
  Purity,  // 1 - Tr(rho_spin^2), at most 1/2 for a qubit
};

template <typename Scalar>
Scalar linear_entropy(const BasicExperimentParams<Scalar>& p, Scalar t,
                      EntropyConvention convention = EntropyConvention::Paper) {
  if (convention == EntropyConvention::Paper) {
    const Scalar c = coherence(p, t);
    return Scalar(1) - c * c;
  }
  return Scalar(1) - spin_density_matrix(p, t).purity();
}

// ---------------------------------------------------------------------------
// Decoherence time and regimes
// ---------------------------------------------------------------------------

/// Dimensionless f m sigma^3 / hbar^2, grouped to stay in range.
template <typename Scalar>
Scalar stiffness_group(const BasicExperimentParams<Scalar>& p) {
  const Scalar s = p.sigma0();
  return (p.force() * s / p.hbar()) * (p.mass() * s * s / p.hbar());
}

/// chi = 8 f^2 m^2 sigma^6 / hbar^4.
template <typename Scalar>
Scalar regime_parameter(const BasicExperimentParams<Scalar>& p) {
  const Scalar a = stiffness_group(p);
  return Scalar(8) * a * a;
}

/// Momentum-dominated limit of the decoherence time, hbar / (sqrt2 f sigma).
template <typename Scalar>
Scalar decoherence_time_momentum_limit(const BasicExperimentParams<Scalar>& p) {
  return p.hbar() / (detail::sqrt2<Scalar>() * p.force() * p.sigma0());
}

/// Spreading-dominated limit, sqrt(2 sqrt2 m sigma / f).
template <typename Scalar>
Scalar decoherence_time_spreading_limit(const BasicExperimentParams<Scalar>& p) {
  using std::sqrt;
  return sqrt(Scalar(2) * detail::sqrt2<Scalar>() * p.mass() * p.sigma0() / p.force());
}

/// Time at which C(t) = 1/e:
///   tau = sqrt(2 sqrt2 m sigma / f) [sqrt(1 + chi) - sqrt(chi)]^(1/2).
/// The bracket is evaluated as 1 / (sqrt(1 + chi) + sqrt(chi)); the difference
/// form loses every digit once chi exceeds ~1e16.
template <typename Scalar>
Scalar decoherence_time(const BasicExperimentParams<Scalar>& p) {
  using std::hypot;
  using std::sqrt;
  const Scalar root_chi = Scalar(2) * detail::sqrt2<Scalar>() * stiffness_group(p);
  const Scalar bracket = Scalar(1) / (hypot(Scalar(1), root_chi) + root_chi);
  return decoherence_time_spreading_limit(p) * sqrt(bracket);
}

enum class Regime { MomentumDominated, SpreadingDominated, Intermediate };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::MomentumDominated: return "MomentumDominated";
    case Regime::SpreadingDominated: return "SpreadingDominated";
    case Regime::Intermediate: return "Intermediate";
  }
  return "?";
}

inline constexpr double kMomentumRegimeThreshold = 1e3;
inline constexpr double kSpreadingRegimeThreshold = 1e-3;

template <typename Scalar>
Regime classify_regime(Scalar chi) {
  if (chi > Scalar(kMomentumRegimeThreshold)) return Regime::MomentumDominated;
  if (chi < Scalar(kSpreadingRegimeThreshold)) return Regime::SpreadingDominated;
  return Regime::Intermediate;
}

template <typename Scalar>
struct BasicCoherenceReport {
  Scalar chi;
  Regime regime;
  Scalar tau;
  Scalar tau1;
  Scalar tau2;
  Scalar sep_position_at_tau;
  Scalar sep_momentum_at_tau;
};

using CoherenceReport = BasicCoherenceReport<double>;

template <typename Scalar>
BasicCoherenceReport<Scalar> regime_report(const BasicExperimentParams<Scalar>& p) {
  BasicCoherenceReport<Scalar> r;
  r.chi = regime_parameter(p);
  r.regime = classify_regime(r.chi);
  r.tau = decoherence_time(p);
  r.tau1 = decoherence_time_momentum_limit(p);
  r.tau2 = decoherence_time_spreading_limit(p);
  r.sep_position_at_tau = separation_position_ratio(p, r.tau);
  r.sep_momentum_at_tau = separation_momentum_ratio(p, r.tau);
  return r;
}

}  // namespace sg
