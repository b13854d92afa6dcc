#pragma once

namespace sg {

/// Reduced Planck constant, J s (CODATA 2018, exact by SI definition of h).
inline constexpr double kHbar = 1.054571817e-34;

/// Bohr magneton, J/T (CODATA 2018). Default magnetic moment of the beam atoms.
inline constexpr double kBohrMagneton = 9.2740100783e-24;

inline constexpr double kPi = 3.14159265358979323846;

}  // namespace sg
