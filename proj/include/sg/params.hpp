#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "sg/constants.hpp"
#include "sg/errors.hpp"

namespace sg {

/// Spin branch of the beam, i.e. the sigma_z eigenvalue s = +1 or -1.
enum class Branch { Plus, Minus };

constexpr int spin_sign(Branch b) noexcept { return b == Branch::Plus ? 1 : -1; }

/// What to do when |alpha|^2 + |beta|^2 differs from one by more than 1e-12.
enum class AmplitudePolicy { Normalize, Strict };

/// Raw physical inputs in SI units. Plain aggregate; validated by
/// BasicExperimentParams::create.
template <typename Scalar>
struct PhysicalInputs {
  Scalar mass{};                                       // kg
  Scalar magnetic_moment{static_cast<Scalar>(kBohrMagneton)};  // J/T
  Scalar field_gradient{};                             // T/m
  Scalar sigma0{};                                     // m
  std::complex<Scalar> alpha{static_cast<Scalar>(0.70710678118654752440L), 0};
  std::complex<Scalar> beta{static_cast<Scalar>(0.70710678118654752440L), 0};
};

/// Immutable, validated parameter record for a single Stern-Gerlach run.
///
/// Invariants: mass, magnetic moment, field gradient and initial width are
/// finite and strictly positive; |alpha|^2 + |beta|^2 = 1 within 1e-12.
template <typename Scalar>
class BasicExperimentParams {
 public:
  using scalar_type = Scalar;
  using complex_type = std::complex<Scalar>;

  static BasicExperimentParams create(const PhysicalInputs<Scalar>& in,
                                      AmplitudePolicy policy = AmplitudePolicy::Normalize) {
    require_positive(in.mass, "mass");
    require_positive(in.magnetic_moment, "magnetic_moment");
    require_positive(in.field_gradient, "field_gradient");
    require_positive(in.sigma0, "sigma0");
    using std::isfinite;
    if (!isfinite(in.alpha.real()) || !isfinite(in.alpha.imag()) ||
        !isfinite(in.beta.real()) || !isfinite(in.beta.imag())) {
      throw DomainError("spin amplitudes must be finite");
    }
    const Scalar norm2 = std::norm(in.alpha) + std::norm(in.beta);
    if (!(norm2 > Scalar(0))) {
      throw DomainError("spin amplitudes must not both vanish");
    }
    BasicExperimentParams p;
    p.in_ = in;
    using std::abs;
    using std::sqrt;
    if (abs(norm2 - Scalar(1)) > Scalar(1e-12)) {
      if (policy == AmplitudePolicy::Strict) {
        throw DomainError("|alpha|^2 + |beta|^2 must equal 1 (strict mode)");
      }
      const Scalar n = sqrt(norm2);
      p.in_.alpha /= n;
      p.in_.beta /= n;
    }
    return p;
  }

  Scalar mass() const noexcept { return in_.mass; }
  Scalar magnetic_moment() const noexcept { return in_.magnetic_moment; }
  Scalar field_gradient() const noexcept { return in_.field_gradient; }
  Scalar sigma0() const noexcept { return in_.sigma0; }
  complex_type alpha() const noexcept { return in_.alpha; }
  complex_type beta() const noexcept { return in_.beta; }
  static constexpr Scalar hbar() noexcept { return static_cast<Scalar>(kHbar); }

  /// Magnitude of the Stern-Gerlach force f = mu * dB/dz, N.
  Scalar force() const noexcept { return in_.magnetic_moment * in_.field_gradient; }

  const PhysicalInputs<Scalar>& inputs() const noexcept { return in_; }

  template <typename Other>
  BasicExperimentParams<Other> cast() const {
    PhysicalInputs<Other> o;
    o.mass = static_cast<Other>(in_.mass);
    o.magnetic_moment = static_cast<Other>(in_.magnetic_moment);
    o.field_gradient = static_cast<Other>(in_.field_gradient);
    o.sigma0 = static_cast<Other>(in_.sigma0);
    o.alpha = {static_cast<Other>(in_.alpha.real()), static_cast<Other>(in_.alpha.imag())};
    o.beta = {static_cast<Other>(in_.beta.real()), static_cast<Other>(in_.beta.imag())};
    return BasicExperimentParams<Other>::create(o, AmplitudePolicy::Normalize);
  }

 private:
  BasicExperimentParams() = default;

  static void require_positive(Scalar v, const char* name) {
    using std::isfinite;
    if (!isfinite(v) || !(v > Scalar(0))) {
      throw DomainError(std::string(name) + " must be finite and > 0");
    }
  }

  PhysicalInputs<Scalar> in_;
};

using ExperimentParams = BasicExperimentParams<double>;

}  // namespace sg
