#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "quenchlab/analytics.hpp"

using namespace quenchlab;
using std::numbers::pi;

namespace {
const ArrayParams kDefaults;

std::vector<SpectrumRow> synthetic_spectrum(int n_k, double width) {
  // Mimics the unitary sweep: per-momentum the two excesses cancel exactly
  // (population conservation), the excess is odd through the mirror point,
  // and the initial populations swap across it.
  std::vector<SpectrumRow> rows;
  for (const double k : momentum_grid(n_k)) {
    const double x = k - pi / 2;
    const double mag = std::exp(-x * x / (width * width));
    const double sgn = x <= 0 ? 1.0 : -1.0;
    SpectrumRow r{};
    r.k = k;
    r.n_i_a = x <= 0 ? 0.5 : 1.0;
    r.n_i_b = x <= 0 ? 1.0 : 0.5;
    r.n_q_a = sgn * mag;
    r.n_q_b = -sgn * mag;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace

TEST_CASE("avoided-crossing transfer probability: exact at the crossing, decaying off it") {
  const QuenchProtocol q{kDefaults.g, 400.0};
  CHECK(lz_probability(kDefaults, q, pi / 2) == doctest::Approx(1.0).epsilon(1e-15));
  // Slower sweeps transfer less at fixed k != pi/2.
  double prev = 1.0;
  for (const double tau : {100.0, 400.0, 1600.0, 6400.0}) {
    const double p = lz_probability(kDefaults, {kDefaults.g, tau}, 0.3 * pi);
    CHECK(p < prev);
    CHECK(p > 0.0);
    prev = p;
  }
  // Mirror symmetry in k.
  CHECK(lz_probability(kDefaults, q, 0.3 * pi) ==
        doctest::Approx(lz_probability(kDefaults, q, 0.7 * pi)).epsilon(1e-15));
}

TEST_CASE("critical-momentum amplitude matches its closed form") {
  const double amp = lz_critical_k_amplitude(kDefaults, kDefaults.g);
  CHECK(amp == doctest::Approx(std::sqrt(2.0 * 0.02 / pi) / 0.0113).epsilon(1e-12));
  CHECK(amp == doctest::Approx(9.98565).epsilon(1e-4));
  const QuenchProtocol q{kDefaults.g, 1600.0};
  CHECK(lz_critical_k(kDefaults, q) == doctest::Approx(amp / 40.0).epsilon(1e-12));
}

TEST_CASE("freeze-out time and excitation reproduce frozen high-precision anchors") {
  // Anchors computed independently at 40-digit precision for
  // g_m = 0.02, delta = 0.005, tau = 100.
  const double t_hat = freezeout_time(0.02, 0.005, 100.0);
  CHECK(t_hat == doctest::Approx(68.53653118474801).epsilon(1e-12));
  CHECK(freezeout_excitation(0.02, 0.005, 100.0) ==
        doctest::Approx(0.8825685973290516).epsilon(1e-12));
  CHECK(freezeout_excitation_closed_form(0.02, 0.005, 100.0) ==
        doctest::Approx(0.9567716003993895).epsilon(1e-12));
}

TEST_CASE("freeze-out limits: full excitation at zero detuning, none deep in the slow regime") {
  CHECK(freezeout_excitation(0.02, 0.0, 100.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(freezeout_excitation(0.02, 0.1, 1e7) < 1e-4);
  // The defining relation t = 1/gap(t) holds at the returned time.
  const double t_hat = freezeout_time(0.03, 0.007, 500.0);
  const double gap = std::sqrt(0.007 * 0.007 + std::pow(0.03 * t_hat / 500.0, 2));
  CHECK(t_hat * gap == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("equivalent one-sided ramp: same rate, detuning frozen at the sweep momentum") {
  const QuenchProtocol q{kDefaults.g, 3200.0};
  const RampParams r = equivalent_ramp(kDefaults, q, 0.3 * pi);
  CHECK(r.g_m == doctest::Approx(kDefaults.g));
  CHECK(r.tau == doctest::Approx(1600.0));
  CHECK(r.delta == doctest::Approx(0.0113 * std::abs(std::cos(0.3 * pi))).epsilon(1e-12));
  CHECK(r.g_m / r.tau == doctest::Approx(2.0 * q.g0 / q.tau_q).epsilon(1e-12));
  // |cos| makes the mapping mirror-symmetric.
  CHECK(equivalent_ramp(kDefaults, q, 0.7 * pi).delta == doctest::Approx(r.delta).epsilon(1e-13));
}

TEST_CASE("power-law fit recovers exact data and flags noisy data via the residual") {
  std::vector<double> x, y;
  for (int i = 1; i <= 12; ++i) {
    x.push_back(25.0 * i);
    y.push_back(3.7 * std::pow(x.back(), -1.5));
  }
  const PowerLawFit f = fit_power_law(x, y);
  CHECK(f.amplitude == doctest::Approx(3.7).epsilon(1e-12));
  CHECK(f.exponent == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(f.rms_residual < 1e-13);

  // Multiplicative perturbation shows up as a log-space residual of its size.
  std::vector<double> yn = y;
  for (std::size_t i = 0; i < yn.size(); ++i) yn[i] *= (i % 2 == 0 ? 1.05 : 0.95);
  const PowerLawFit g = fit_power_law(x, yn);
  CHECK(g.rms_residual > 0.03);
  CHECK(g.rms_residual < 0.08);
  CHECK(g.exponent == doctest::Approx(-1.5).epsilon(0.02));
}

TEST_CASE("power-law fit rejects unusable input") {
  const std::vector<double> x{1.0, 2.0}, bad{1.0, -2.0}, one{1.0};
  CHECK_THROWS(fit_power_law(x, bad));
  CHECK_THROWS(fit_power_law(one, one));
  const std::vector<double> same{2.0, 2.0}, y{1.0, 2.0};
  CHECK_THROWS(fit_power_law(same, y));
}

TEST_CASE("critical momentum from a synthetic spectrum recovers the profile width") {
  const int n_k = 401;
  const double width = 0.3;
  const auto rows = synthetic_spectrum(n_k, width);
  const double dk = rows[1].k - rows[0].k;
  // Threshold at 1/e of the peak: the crossing sits at |k - pi/2| = width.
  const CriticalPoint pt = critical_k_from_spectrum(rows, 123.0, std::exp(-1.0));
  CHECK(pt.tau_q == 123.0);
  CHECK(!pt.saturated);
  CHECK(std::abs(pt.k_c - width) < 1.5 * dk);
  // A threshold below the edge value saturates the extraction.
  const double edge = std::exp(-std::pow(pi / 2, 2) / (width * width));
  const CriticalPoint sat = critical_k_from_spectrum(rows, 1.0, edge * 0.5);
  CHECK(sat.saturated);
  CHECK(sat.k_c == doctest::Approx(pi / 2 + dk / 2).epsilon(1e-12));
  // A threshold above everything yields an empty width.
  const CriticalPoint none = critical_k_from_spectrum(rows, 1.0, 2.0);
  CHECK(none.k_c == 0.0);
  CHECK(!none.saturated);
}

TEST_CASE("integrated excess: raw signed part cancels, normalized signed part survives") {
  const auto rows = synthetic_spectrum(801, 0.25);
  const double gauss = 0.25 * std::sqrt(pi);  // integral of the magnitude profile
  const IntegratedRow raw = integrated_excitation(rows, 10.0, false);
  CHECK(raw.tau_q == 10.0);
  CHECK(std::abs(raw.sum_signed) < 1e-12);
  CHECK(raw.sum_abs == doctest::Approx(2.0 * gauss).epsilon(1e-3));

  // Dividing by the mirror-swapped initial populations makes the signed
  // integrand even, so it stops cancelling: (1/0.5 - 1/1) * magnitude.
  const IntegratedRow norm = integrated_excitation(rows, 10.0, true);
  CHECK(norm.sum_signed == doctest::Approx(gauss).epsilon(1e-3));
  CHECK(norm.sum_abs == doctest::Approx(3.0 * gauss).epsilon(1e-3));
}

TEST_CASE("simulated transfer matches the closed form in the adiabatic-crossing regime") {
  const QuenchProtocol q{kDefaults.g, 1600.0};
  const double k = 0.3 * pi;
  const double sim = transfer_probability(kDefaults, k, q);
  const double model = lz_probability(kDefaults, q, k);
  CHECK(std::abs(sim - model) < 0.01);
}
