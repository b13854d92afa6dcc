#pragma once

// Globally adaptive integration of complex-valued integrands over an explicit
// initial partition, with a Gauss-Kronrod (30/61) panel rule or a
// Legendre-Filon rule for integrands with a known plane-wave carrier. The
// caller decides the partition; this driver only refines the worst panel
// until the summed error estimate meets the tolerance or the panel budget is
// exhausted.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "sg/errors.hpp"

namespace sg {

/// Tolerances and sampling density for the numeric oracles.
struct QuadratureSpec {
  double abs_tol = 1e-9;
  std::size_t max_subdivisions = std::size_t{1} << 20;
  double window_halfwidth_sigmas = 12.0;
  double min_points_per_oscillation = 20.0;

  void validate() const {
    if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) {
      throw DomainError("abs_tol must be finite and > 0");
    }
    if (max_subdivisions < 1) throw DomainError("max_subdivisions must be >= 1");
    if (!(window_halfwidth_sigmas >= 6.0)) {
      throw DomainError("window_halfwidth_sigmas must be >= 6");
    }
    if (!(min_points_per_oscillation >= 8.0)) {
      throw DomainError("min_points_per_oscillation must be >= 8");
    }
  }
};

struct QuadratureResult {
  std::complex<double> value;
  double error = 0.0;  // estimated absolute error
  std::size_t panels = 0;
  std::size_t evaluations = 0;
};

namespace quad {

/// Nodes per panel of the Kronrod rule.
inline constexpr int kRulePoints = 61;

struct Panel {
  double a = 0.0;
  double b = 0.0;
  std::complex<double> value;
  double error = 0.0;
  double l1 = 0.0;  // Kronrod estimate of the integral of |f|
};

/// Width of a panel that places at least `points_per_oscillation` rule nodes
/// on each period 2 pi / wavenumber.
inline double oscillation_panel_width(double wavenumber, double points_per_oscillation) {
  if (!(wavenumber > 0.0)) return std::numeric_limits<double>::infinity();
  constexpr double two_pi = 6.283185307179586476925286766559;
  return (kRulePoints / points_per_oscillation) * two_pi / wavenumber;
}

/// Kronrod 61-point value, |Kronrod - Gauss 30| error, and the Kronrod
/// estimate of the integral of |f| on [a, b].
struct KronrodRule {
  template <typename F>
  Panel operator()(F& f, double a, double b, std::size_t& evaluations) const {
    using Kronrod = boost::math::quadrature::gauss_kronrod<double, kRulePoints>;
    using Gauss = boost::math::quadrature::gauss<double, (kRulePoints - 1) / 2>;
    const auto& x = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();
    const double mean = 0.5 * (a + b);
    const double scale = 0.5 * (b - a);

    // Gauss order 30 is even: Gauss nodes sit at odd indices of the Kronrod
    // abscissae and the centre node belongs to Kronrod only.
    std::complex<double> centre = f(mean);
    std::complex<double> kronrod = centre * wk[0];
    std::complex<double> gauss{};
    double l1 = std::abs(centre) * wk[0];
    for (std::size_t i = 1; i < x.size(); ++i) {
      const std::complex<double> fp = f(mean + scale * x[i]);
      const std::complex<double> fm = f(mean - scale * x[i]);
      kronrod += (fp + fm) * wk[i];
      l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
      if (i % 2 == 1) gauss += (fp + fm) * wg[i / 2];
    }
    evaluations += 2 * x.size() - 1;

    Panel p;
    p.a = a;
    p.b = b;
    p.value = kronrod * scale;
    p.error = std::abs(kronrod - gauss) * scale;
    p.l1 = l1 * scale;
    return p;
  }
};

namespace detail {

// Full symmetric N-point Gauss-Legendre rule with P_j(x_i), j < N, tabulated.
template <int N>
struct LegendreTable {
  std::array<double, N> x{};
  std::array<double, N> w{};
  std::array<std::array<double, N>, N> P{};  // P[j][i]

  LegendreTable() {
    using Gauss = boost::math::quadrature::gauss<double, N>;
    const auto& ax = Gauss::abscissa();
    const auto& aw = Gauss::weights();
    int n = 0;
    for (std::size_t i = 0; i < ax.size(); ++i) {
      x[n] = ax[i];
      w[n++] = aw[i];
      if (ax[i] != 0.0) {
        x[n] = -ax[i];
        w[n++] = aw[i];
      }
    }
    for (int i = 0; i < N; ++i) {
      P[0][i] = 1.0;
      if (N > 1) P[1][i] = x[i];
      for (int j = 2; j < N; ++j) {
        P[j][i] = ((2 * j - 1) * x[i] * P[j - 1][i] - (j - 1) * P[j - 2][i]) / j;
      }
    }
  }

  static const LegendreTable& get() {
    static const LegendreTable table;
    return table;
  }
};

// Integral over [-1, 1] of g(x) exp(i omega x), with g replaced by its
// degree N-1 Legendre interpolant through the Gauss nodes. `moments[j]` holds
// (2j+1) i^j j_j(omega), the Legendre coefficients of the carrier.
template <int N>
std::complex<double> filon_sum(const LegendreTable<N>& table, const std::complex<double>* g,
                               const std::complex<double>* moments) {
  std::complex<double> sum{};
  for (int i = 0; i < N; ++i) {
    std::complex<double> weight{};
    for (int j = 0; j < N; ++j) weight += moments[j] * table.P[j][i];
    sum += table.w[i] * weight * g[i];
  }
  return sum;
}

}  // namespace detail

/// Legendre-Filon rule for integrands g(z) exp(i k z) whose carrier
/// wavenumber k is known and whose envelope g is smooth. g is sampled at
/// 30 and 15 Gauss-Legendre nodes, expanded in Legendre polynomials and
/// integrated against the carrier exactly, using
///   integral_{-1}^{1} P_j(x) exp(i omega x) dx = 2 i^j j_j(omega).
/// Panels need only resolve g, not the carrier. If k is wrong the
/// residual oscillation of g shows up in the 30/15 error estimate and
/// forces refinement.
struct LegendreFilonRule {
  double wavenumber = 0.0;

  template <typename F>
  Panel operator()(F& f, double a, double b, std::size_t& evaluations) const {
    constexpr int kHigh = 30;
    constexpr int kLow = 15;
    const auto& high = detail::LegendreTable<kHigh>::get();
    const auto& low = detail::LegendreTable<kLow>::get();
    const double mean = 0.5 * (a + b);
    const double scale = 0.5 * (b - a);
    const double omega = wavenumber * scale;

    std::array<std::complex<double>, kHigh> moments;
    std::complex<double> i_pow(1.0, 0.0);
    for (int j = 0; j < kHigh; ++j) {
      moments[j] = double(2 * j + 1) * i_pow *
                   boost::math::sph_bessel(static_cast<unsigned>(j), std::abs(omega)) *
                   (omega < 0.0 && j % 2 == 1 ? -1.0 : 1.0);
      i_pow *= std::complex<double>(0.0, 1.0);
    }

    // Envelope samples; the carrier is removed relative to the panel centre.
    auto envelope = [&](double x) { return f(mean + scale * x) * std::polar(1.0, -omega * x); };
    std::array<std::complex<double>, kHigh> gh;
    std::array<std::complex<double>, kLow> gl;
    double l1 = 0.0;
    for (int i = 0; i < kHigh; ++i) {
      gh[i] = envelope(high.x[i]);
      l1 += high.w[i] * std::abs(gh[i]);
    }
    for (int i = 0; i < kLow; ++i) gl[i] = envelope(low.x[i]);
    evaluations += kHigh + kLow;

    const std::complex<double> vh = detail::filon_sum(high, gh.data(), moments.data());
    const std::complex<double> vl = detail::filon_sum(low, gl.data(), moments.data());

    Panel p;
    p.a = a;
    p.b = b;
    p.value = vh * scale;
    p.error = std::abs(vh - vl) * scale;
    p.l1 = l1 * scale;
    return p;
  }
};

template <typename F, typename Rule = KronrodRule>
class PanelIntegrator {
 public:
  explicit PanelIntegrator(F f, Rule rule = {}) : f_(std::move(f)), rule_(rule) {}

  Panel evaluate(double a, double b) { return rule_(f_, a, b, evaluations_); }

  /// Adds a panel that may be bisected further.
  void add(const Panel& p) {
    active_.push(p);
    error_sum_ += p.error;
  }

  /// Adds a panel whose contribution is fixed, with a rigorous error bound.
  void add_settled(std::complex<double> value, double error) {
    settled_value_ += value;
    settled_error_ += error;
    ++settled_count_;
  }

  std::size_t panel_count() const { return active_.size() + settled_count_; }
  std::size_t evaluations() const { return evaluations_; }

  /// Current estimate without further refinement.
  QuadratureResult snapshot() const {
    QuadratureResult r;
    r.value = settled_value_;
    r.error = settled_error_;
    auto copy = active_;
    while (!copy.empty()) {
      r.value += copy.top().value;
      r.error += copy.top().error;
      copy.pop();
    }
    r.panels = panel_count();
    r.evaluations = evaluations_;
    return r;
  }

  /// Bisects the worst panel until the total error is <= abs_tol.
  /// Throws ConvergenceError if the budget of max_panels is exhausted.
  QuadratureResult refine(double abs_tol, std::size_t max_panels) {
    for (;;) {
      if (settled_error_ + error_sum_ <= abs_tol) {
        // Resum exactly before accepting; the running sum can drift.
        QuadratureResult r = snapshot();
        error_sum_ = r.error - settled_error_;
        if (r.error <= abs_tol) return r;
      }
      if (active_.empty() || panel_count() >= max_panels) {
        fail("panel budget exhausted");
      }
      Panel worst = active_.top();
      const double mid = 0.5 * (worst.a + worst.b);
      if (!(mid > worst.a && mid < worst.b)) {
        fail("panel width reached floating-point resolution");
      }
      active_.pop();
      error_sum_ -= worst.error;
      add(evaluate(worst.a, mid));
      add(evaluate(mid, worst.b));
    }
  }

  [[noreturn]] void fail(const char* why) const {
    const QuadratureResult r = snapshot();
    throw ConvergenceError(std::string("quadrature did not converge: ") + why, r.value, r.error);
  }

 private:
  struct ByError {
    bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
  };

  F f_;
  Rule rule_;
  std::priority_queue<Panel, std::vector<Panel>, ByError> active_;
  double error_sum_ = 0.0;
  std::complex<double> settled_value_{};
  double settled_error_ = 0.0;
  std::size_t settled_count_ = 0;
  std::size_t evaluations_ = 0;
};

template <typename F, typename Rule = KronrodRule>
PanelIntegrator<std::decay_t<F>, Rule> make_integrator(F&& f, Rule rule = {}) {
  return PanelIntegrator<std::decay_t<F>, Rule>(std::forward<F>(f), rule);
}

/// Integrates f over [a, b] split into `n` equal panels, then refines.
template <typename F>
QuadratureResult integrate_uniform(F&& f, double a, double b, std::size_t n, double abs_tol,
                                   std::size_t max_panels) {
  auto integ = make_integrator(std::forward<F>(f));
  const bool over_budget = n > max_panels;
  if (over_budget) n = max_panels;
  const double h = (b - a) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = a + h * static_cast<double>(i);
    const double hi = (i + 1 == n) ? b : a + h * static_cast<double>(i + 1);
    integ.add(integ.evaluate(lo, hi));
  }
  if (over_budget) integ.fail("initial partition exceeds panel budget");
  return integ.refine(abs_tol, max_panels);
}

}  // namespace quad
}  // namespace sg
