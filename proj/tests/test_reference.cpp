#include <doctest.h>

#include "extended_precision.hpp"
#include "reference_values.hpp"
#include "sg/analytic.hpp"
#include "sg/experiment.hpp"

using sg::test::Real50;

namespace {

double rel50(const Real50& a, const char* frozen) {
  const Real50 b(frozen);
  return static_cast<double>(abs((a - b) / b));
}

double rel(double a, const char* frozen) {
  const double b = std::stod(frozen);
  return std::abs(a - b) / std::abs(b);
}

}  // namespace

TEST_CASE("frozen values are reproduced by the 50-digit evaluation") {
  namespace ref = sg::test::ref;
  const auto in = sg::test::typical50();
  const auto v2 = sg::test::evaluate50(in, Real50("2e-9"));
  const auto v10 = sg::test::evaluate50(in, Real50("1e-5"));
  const double tight = 1e-24;

  CHECK(rel50(v2.delta_p, ref::kDeltaP_2ns) < tight);
  CHECK(rel50(v2.delta_z, ref::kDeltaZ_2ns) < tight);
  CHECK(rel50(v2.delta_z_bar, ref::kDeltaZ_2ns) < tight);
  CHECK(rel50(v2.sigma_t, ref::kSigmaT_2ns) < tight);
  CHECK(rel50(v2.coherence, ref::kCoherence_2ns) < tight);
  CHECK(rel50(v2.delta_z_bar / v2.sigma_t, ref::kSepPosition_2ns) < tight);
  CHECK(rel50(v10.delta_z, ref::kDeltaZ_10us) < tight);
  CHECK(rel50(v10.sigma_t, ref::kSigmaT_10us) < tight);
  CHECK(rel50(v10.delta_z_bar / v10.sigma_t, ref::kSepPosition_10us) < tight);

  CHECK(rel50(sg::test::chi50(in), ref::kChi) < tight);
  // The un-rationalised tau form cancels ~18 of its 50 digits here.
  CHECK(rel50(sg::test::tau50(in), ref::kTau) < 1e-20);
  CHECK(rel50(sg::test::tau1_50(in), ref::kTau1) < tight);
  CHECK(rel50(sg::test::tau2_50(in), ref::kTau2) < tight);
  const auto at_tau = sg::test::evaluate50(in, Real50(ref::kTau));
  CHECK(rel50(at_tau.delta_z_bar / at_tau.sigma_t, ref::kSepPositionAtTau) < 1e-20);
}

TEST_CASE("double-precision closed forms match the frozen values") {
  namespace ref = sg::test::ref;
  const auto p = sg::typical_params();

  const auto k2 = sg::kinematics(p, 2e-9);
  CHECK(rel(k2.delta_p, ref::kDeltaP_2ns) < 1e-15);
  CHECK(rel(k2.delta_z, ref::kDeltaZ_2ns) < 1e-15);
  CHECK(rel(k2.delta_z_bar, ref::kDeltaZ_2ns) < 1e-15);
  CHECK(rel(k2.sigma_t, ref::kSigmaT_2ns) < 1e-15);
  CHECK(rel(sg::coherence(p, 2e-9), ref::kCoherence_2ns) < 1e-13);
  CHECK(rel(sg::separation_position_ratio(p, 2e-9), ref::kSepPosition_2ns) < 1e-14);

  const auto k10 = sg::kinematics(p, 1e-5);
  CHECK(rel(k10.delta_z, ref::kDeltaZ_10us) < 1e-15);
  CHECK(rel(k10.sigma_t, ref::kSigmaT_10us) < 1e-15);
  CHECK(rel(sg::separation_position_ratio(p, 1e-5), ref::kSepPosition_10us) < 1e-14);

  const auto r = sg::regime_report(p);
  CHECK(rel(r.chi, ref::kChi) < 1e-14);
  CHECK(rel(r.tau, ref::kTau) < 1e-14);
  CHECK(rel(r.tau1, ref::kTau1) < 1e-14);
  CHECK(rel(r.tau2, ref::kTau2) < 1e-14);
  CHECK(rel(r.sep_position_at_tau, ref::kSepPositionAtTau) < 1e-13);
  CHECK(r.regime == sg::Regime::MomentumDominated);
}

TEST_CASE("long double evaluation agrees with double") {
  const auto p = sg::typical_params();
  const auto pl = p.cast<long double>();
  for (double t : {1e-12, 2e-9, 1e-6, 1e-4}) {
    const long double cl = sg::coherence(pl, static_cast<long double>(t));
    CHECK(std::abs(static_cast<double>(cl) - sg::coherence(p, t)) <=
          1e-13 * static_cast<double>(cl) + 1e-300);
  }
  CHECK(std::abs(static_cast<double>(sg::decoherence_time(pl)) / sg::decoherence_time(p) - 1.0) <
        1e-14);
}
