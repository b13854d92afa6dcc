#include <doctest.h>

#include <cmath>
#include <vector>

#include "sg/analytic.hpp"
#include "sg/experiment.hpp"
#include "sg/oracle.hpp"
#include "sg/validation.hpp"
#include "test_support.hpp"

using namespace sg;
using cd = std::complex<double>;

TEST_SUITE("quadrature") {
  TEST_CASE("smooth integrals") {
    auto s = quad::integrate_uniform([](double x) { return cd(std::sin(x), 0.0); }, 0.0, kPi, 1,
                                     1e-14, 64);
    CHECK(s.value.real() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s.error <= 1e-14);

    auto g = quad::integrate_uniform([](double x) { return cd(std::exp(-0.5 * x * x), 0.0); },
                                     -12.0, 12.0, 4, 1e-13, 256);
    CHECK(g.value.real() == doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-13));
  }

  TEST_CASE("oscillatory integral with refinement") {
    const double k = 400.0;
    auto r = quad::integrate_uniform([k](double x) { return std::polar(1.0, k * x); }, 0.0, 1.0, 1,
                                     1e-12, 4096);
    const cd exact = (std::polar(1.0, k) - 1.0) / cd(0.0, k);
    CHECK(std::abs(r.value - exact) <= 1e-12);
    CHECK(r.panels > 1);
  }

  TEST_CASE("Filon rule on a Gaussian wave packet") {
    // integral of exp(-x^2/2) exp(i k x) = sqrt(2 pi) exp(-k^2/2)
    for (double k : {0.0, 0.5, 3.0, 8.0, 40.0, 1e6}) {
      auto f = [k](double x) { return std::exp(-0.5 * x * x) * std::polar(1.0, k * x); };
      auto integ = quad::make_integrator(f, quad::LegendreFilonRule{k});
      for (int i = 0; i < 24; ++i) integ.add(integ.evaluate(-12.0 + i, -11.0 + i));
      const auto r = integ.refine(1e-13, 4096);
      const double exact = std::sqrt(2.0 * kPi) * std::exp(-0.5 * k * k);
      CHECK(std::abs(r.value - exact) <= 1e-13);
      CHECK(r.panels == 24);
    }
  }

  TEST_CASE("Filon rule with a mismatched carrier still converges") {
    const double k = 6.0;
    auto f = [k](double x) { return std::exp(-0.5 * x * x) * std::polar(1.0, k * x); };
    const double exact = std::sqrt(2.0 * kPi) * std::exp(-0.5 * k * k);
    for (double carrier : {0.0, 0.9 * k, -k}) {
      auto integ = quad::make_integrator(f, quad::LegendreFilonRule{carrier});
      integ.add(integ.evaluate(-12.0, 12.0));
      const auto r = integ.refine(1e-12, 4096);
      CHECK(std::abs(r.value - exact) <= 1e-12);
    }
  }

  TEST_CASE("oscillation panel width") {
    CHECK(quad::oscillation_panel_width(2.0 * kPi, 61.0) == doctest::Approx(1.0));
    CHECK(std::isinf(quad::oscillation_panel_width(0.0, 20.0)));
  }

  TEST_CASE("budget exhaustion carries the best estimate") {
    auto f = [](double x) { return std::polar(1.0, 1e4 * x * x); };
    try {
      quad::integrate_uniform(f, 0.0, 10.0, 1, 1e-15, 8);
      FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
      CHECK(std::isfinite(e.best_estimate().real()));
      CHECK(e.error_bound() > 1e-15);
    }
    CHECK_THROWS_AS(quad::integrate_uniform(f, 0.0, 1.0, 100, 1e-6, 8), ConvergenceError);
  }

  TEST_CASE("spec validation") {
    QuadratureSpec s;
    CHECK_NOTHROW(s.validate());
    s.abs_tol = 0.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = {};
    s.max_subdivisions = 0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = {};
    s.window_halfwidth_sigmas = 3.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = {};
    s.min_points_per_oscillation = 2.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
  }
}

TEST_SUITE("overlap") {
  TEST_CASE("unit overlap at t = 0") {
    const auto q = overlap_quadrature(typical_params(), 0.0);
    CHECK(std::abs(q.value - 1.0) <= 1e-9);
  }

  TEST_CASE("1/e at tau and real-valued") {
    for (const auto& p : sg::test::random_parameter_sets(4, 41)) {
      const double tau = decoherence_time(p);
      const auto q = overlap_quadrature(p, tau);
      CHECK(std::abs(std::abs(q.value) - std::exp(-1.0)) <= 1e-6);
      CHECK(std::abs(q.value.imag()) <= 1e-8);
      CHECK(q.value.real() > 0.0);
    }
  }

  TEST_CASE("typical coherence at 2 ns") {
    const auto p = typical_params();
    const auto q = overlap_quadrature(p, 2e-9);
    CHECK(std::abs(q.value) < 0.05);
    CHECK(std::abs(std::abs(q.value) - coherence(p, 2e-9)) <= 1e-6 * coherence(p, 2e-9));
  }

  TEST_CASE("tightening the tolerance moves the value by less than the error estimate") {
    const auto p = typical_params();
    for (double t : {1e-10, 8e-10, 3e-9, 1e-6}) {
      QuadratureSpec a;
      QuadratureSpec b;
      b.abs_tol = 0.5 * a.abs_tol;
      const auto qa = overlap_quadrature(p, t, a);
      const auto qb = overlap_quadrature(p, t, b);
      CHECK(qa.error <= a.abs_tol);
      CHECK(qb.error <= b.abs_tol);
      CHECK(std::abs(qa.value - qb.value) <= qa.error + qb.error + 1e-15);
    }
  }

  TEST_CASE("closed form across the spreading and momentum regimes") {
    const std::vector<ExperimentParams> sets = {
        sg::test::make_params(1.8e-25, 1e3, 1e-10),
        sg::test::make_params(1e-30, 1e-3, 1e-5),
        sg::test::scaled_typical(0.01, 0.01, 0.01),
    };
    for (const auto& p : sets) {
      const double tau = decoherence_time(p);
      std::vector<double> times;
      for (double x : {0.01, 0.3, 1.0, 2.0, 3.0}) times.push_back(x * tau);
      const auto s = overlap_sweep(p, times, {});
      CHECK(s.max_abs_error <= 1e-6);
      CHECK(s.max_rel_error <= 1e-6);
      CHECK(s.max_imaginary <= 1e-8);
    }
  }

  TEST_CASE("closed form on independently seeded parameter sets") {
    for (const auto& p : sg::test::random_parameter_sets(30, 101)) {
      const auto s = overlap_sweep(p, time_grid(1e-12, 1e-4, 12, Spacing::Log), {});
      CHECK(s.max_abs_error <= 1e-6);
      CHECK(s.max_rel_error <= 1e-6);
      CHECK(s.max_imaginary <= 1e-8);
      CHECK(s.max_reported_error <= QuadratureSpec{}.abs_tol);
    }
  }

  TEST_CASE("forced convergence failure") {
    QuadratureSpec s;
    s.abs_tol = 1e-15;
    s.max_subdivisions = 8;
    CHECK_THROWS_AS(overlap_quadrature(typical_params(), 1e-5, s), ConvergenceError);
    CHECK_THROWS_AS(overlap_quadrature(typical_params(), -1.0), DomainError);
  }
}

TEST_SUITE("kernel") {
  // Light, weakly pulled particle: the real-axis route stays cheap.
  ExperimentParams light() { return sg::test::make_params(1e-30, 1e-3, 1e-5); }

  TEST_CASE("requires t > 0") {
    const std::vector<double> z{0.0};
    CHECK_THROWS_AS(propagate_via_kernel(light(), Branch::Plus, z, 0.0), DomainError);
    CHECK_THROWS_AS(propagate_via_kernel(light(), Branch::Plus, z, -1.0), DomainError);
  }

  TEST_CASE("both contours reproduce the closed-form packet") {
    const auto p = light();
    const std::vector<double> ts = {0.1 * spreading_time(p), spreading_time(p), 5.0 * spreading_time(p)};
    for (double t : ts) {
      for (Branch b : {Branch::Plus, Branch::Minus}) {
        const auto k = kinematics(p, t);
        std::vector<double> z;
        for (int i = -20; i <= 20; ++i) z.push_back(spin_sign(b) * k.delta_z_bar + 0.25 * i * k.sigma_t);
        const auto sd = propagate_via_kernel(p, b, z, t, {}, KernelContour::SteepestDescent);
        const auto ra = propagate_via_kernel(p, b, z, t, {}, KernelContour::RealAxis);
        REQUIRE(sd.size() == z.size());
        REQUIRE(ra.size() == z.size());
        const cd ref_phase = sd[20].value / packet_amplitude(p, b, z[20], t);
        for (std::size_t i = 0; i < z.size(); ++i) {
          const cd exact = packet_amplitude(p, b, z[i], t);
          const double scale = std::abs(sd[20].value);
          CHECK(std::abs(sd[i].value - ra[i].value) <= 1e-7 * scale);
          CHECK(std::abs(sd[i].value - ref_phase * exact) <= 1e-7 * scale);
        }
        CHECK(std::abs(std::abs(ref_phase) - 1.0) <= 1e-9);
      }
    }
  }

  TEST_CASE("kernel is the free propagator in the weak-force limit") {
    const auto p = sg::test::make_params(1e-30, 1e-30, 1e-5);
    const double t = 1e-6;
    const double z = 3e-5;
    const cd w(1e-5, 0.0);
    const double m = p.mass();
    const cd free = std::sqrt(cd(m / (2.0 * kPi * kHbar * t), 0.0) / cd(0.0, 1.0)) *
                    std::exp(cd(0.0, m * (z - w.real()) * (z - w.real()) / (2.0 * kHbar * t)));
    CHECK(std::abs(branch_kernel(p, Branch::Plus, z, w, t) - free) <= 1e-9 * std::abs(free));
  }

  TEST_CASE("typical parameters at the three check times") {
    const auto p = typical_params();
    for (double t : {2e-9, 1e-6, 1e-5}) {
      const auto c = compare_kernel(p, Branch::Minus, t, {}, 201);
      CHECK(c.max_density_rel_error <= 1e-4);
      CHECK(c.max_phase_deviation <= 1e-3);
      CHECK(c.peak_offset <= 1.0);
    }
  }

  TEST_CASE("unitarity") {
    for (double t : {2e-9, 1e-5}) {
      const auto n = kernel_norm(typical_params(), Branch::Plus, t);
      CHECK(std::abs(n.value.real() - 1.0) <= 1e-6);
    }
  }
}

TEST_SUITE("bisection") {
  TEST_CASE("brackets shrink around the closed-form root") {
    const auto p = typical_params();
    const double tau = decoherence_time(p);
    double prev_lo = 0.0;
    double prev_hi = std::numeric_limits<double>::infinity();
    int calls = 0;
    const auto r = decoherence_time_bisection(p, 1e-12, [&](double lo, double hi) {
      ++calls;
      CHECK(lo >= prev_lo);
      CHECK(hi <= prev_hi);
      CHECK(lo <= tau * (1.0 + 1e-12));
      CHECK(hi >= tau * (1.0 - 1e-12));
      prev_lo = lo;
      prev_hi = hi;
    });
    CHECK(calls > 0);
    CHECK(r.iterations <= kMaxBisectionIterations);
    CHECK(r.upper - r.lower <= 1e-12 * r.upper);
    CHECK(std::abs(r.root - tau) / tau <= 1e-6);
  }

  TEST_CASE("27-point sweep") {
    for (const auto& p : sg::test::sweep_27()) {
      const auto r = decoherence_time_bisection(p);
      CHECK(r.iterations <= kMaxBisectionIterations);
      CHECK(sg::test::rel_diff(decoherence_time(p), r.root) <= 1e-6);
    }
  }

  TEST_CASE("tolerance validation") {
    CHECK_THROWS_AS(decoherence_time_bisection(typical_params(), 0.0), DomainError);
    CHECK_THROWS_AS(decoherence_time_bisection(typical_params(), std::nan("")), DomainError);
  }
}
