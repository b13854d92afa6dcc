#pragma once

// Frozen values at the typical copper-beam parameters (m = 1.8e-25 kg,
// dB/dz = 1e3 T/m, sigma = 1e-5 m, mu = Bohr magneton), produced by the
// 50-digit evaluation in extended_precision.hpp and truncated to 25 digits.
// test_reference.cpp regenerates them and fails if they drift.

namespace sg::test::ref {

// t = 2 ns
inline constexpr const char* kDeltaP_2ns = "1.8548020156600000000000000e-29";
inline constexpr const char* kDeltaZ_2ns = "1.0304455642555555555555556e-13";
inline constexpr const char* kSigmaT_2ns = "1.0000000000000000171623722e-05";
inline constexpr const char* kCoherence_2ns = "2.0561999830810764010942955e-03";
inline constexpr const char* kSepPosition_2ns = "1.0304455642555555378706653e-08";

// t = 10 us
inline constexpr const char* kDeltaZ_10us = "2.5761139106388888888888889e-06";
inline constexpr const char* kSigmaT_10us = "1.0000000004290593043873836e-05";
inline constexpr const char* kSepPosition_10us = "2.5761139095335832468417463e-01";

inline constexpr const char* kChi = "1.8024593580339552559971559e+17";
inline constexpr const char* kTau = "8.0406951982265977504411483e-10";
inline constexpr const char* kTau1 = "8.0406951982265977560173456e-10";
inline constexpr const char* kTau2 = "2.3430144528280742293947725e-05";
inline constexpr const char* kSepPositionAtTau = "1.6655292404093294633797485e-09";

}  // namespace sg::test::ref
