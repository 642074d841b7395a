#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "quenchlab/bloch.hpp"

using namespace quenchlab;
using std::numbers::pi;

TEST_CASE("momentum grid spans [0, pi] inclusive and uniformly") {
  const auto ks = momentum_grid(5);
  REQUIRE(ks.size() == 5);
  CHECK(ks.front() == 0.0);
  CHECK(ks.back() == doctest::Approx(pi).epsilon(1e-15));
  for (int i = 1; i < 5; ++i) CHECK(ks[i] - ks[i - 1] == doctest::Approx(pi / 4).epsilon(1e-14));
  CHECK_THROWS(momentum_grid(1));
}

TEST_CASE("band frequencies come from the Bloch matrix and the gap is 2*hypot(g, mismatch)") {
  const ArrayParams p;
  for (const double k : momentum_grid(17)) {
    for (const double g : {0.0, 0.02, 0.05}) {
      const Mat2 h = bloch_hamiltonian(p, k, g);
      const Eig2 e = eigh2(h);
      const Bands b = band_frequencies(p, k, g);
      CHECK(b.lower == doctest::Approx(e.values[0]).epsilon(1e-14));
      CHECK(b.upper == doctest::Approx(e.values[1]).epsilon(1e-14));
      CHECK(band_gap(p, k, g) ==
            doctest::Approx(2.0 * std::hypot(g, branch_mismatch(p, k))).epsilon(1e-14));
      CHECK(b.upper - b.lower == doctest::Approx(band_gap(p, k, g)).epsilon(1e-12));
    }
  }
}

TEST_CASE("at the default detuning the branches cross at k = pi/2 and the gap there is 2g") {
  const ArrayParams p;  // delta = -omega
  CHECK(branch_mismatch(p, pi / 2) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(band_gap(p, pi / 2, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(band_gap(p, pi / 2, p.g) == doctest::Approx(2.0 * p.g).epsilon(1e-14));
}

TEST_CASE("optical weights at mirror momenta sum to one") {
  const ArrayParams p;
  for (const double g : {0.005, 0.02, 0.05}) {
    for (const double k : momentum_grid(301)) {
      const double w = mode_frame(p, k, g).optical_weight();
      const double wm = mode_frame(p, pi - k, g).optical_weight();
      CHECK(std::abs(w + wm - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("mode frame is orthogonal and its A row is the upper-band eigenvector") {
  const ArrayParams p;
  for (const double k : momentum_grid(41)) {
    const ModeFrame f = mode_frame(p, k, p.g);
    CHECK(f.a1 * f.a1 + f.a2 * f.a2 == doctest::Approx(1.0).epsilon(1e-14));
    const Mat2 r = f.rotation();
    const Mat2 rrt = r * r.adjoint();
    CHECK((rrt - Mat2::identity()).frobenius_norm() < 1e-14);

    // R h R^T must be diagonal with the upper frequency in the A slot.
    const Mat2 h = bloch_hamiltonian(p, k, p.g);
    const Mat2 d = r * h * r.adjoint();
    CHECK(std::abs(d(0, 1)) < 1e-13);
    CHECK(std::abs(d(1, 0)) < 1e-13);
    const Bands b = band_frequencies(p, k, p.g);
    CHECK(d(0, 0).real() == doctest::Approx(b.upper).epsilon(1e-12));
    CHECK(d(1, 1).real() == doctest::Approx(b.lower).epsilon(1e-12));
  }
}

TEST_CASE("mode A is optical-like left of the crossing and mechanical-like right of it") {
  const ArrayParams p;
  const double w_left = mode_frame(p, 0.2 * pi, p.g).optical_weight();
  const double w_right = mode_frame(p, 0.8 * pi, p.g).optical_weight();
  CHECK(w_left > 0.5);
  CHECK(w_left < 1.0);
  CHECK(w_right == doctest::Approx(1.0 - w_left).epsilon(1e-12));
  // Decoupled limit: weights snap to 0/1.
  CHECK(mode_frame(p, 0.2 * pi, 0.0).optical_weight() == doctest::Approx(1.0));
  CHECK(mode_frame(p, 0.8 * pi, 0.0).optical_weight() == doctest::Approx(0.0));
}

TEST_CASE("steady-state populations obey the single-bath and equal-rate identities") {
  const ArrayParams p;
  // Fully mechanical mode A: thermalizes to the mechanical bath.
  CHECK(thermal_from_weight(p, 0.0).n_a == doctest::Approx(p.n_bath_mech).epsilon(1e-15));
  CHECK(thermal_from_weight(p, 0.0).n_b == doctest::Approx(0.0).epsilon(1e-15));
  // Fully optical mode A: thermalizes to the (empty) optical bath.
  CHECK(thermal_from_weight(p, 1.0).n_a == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(thermal_from_weight(p, 1.0).n_b == doctest::Approx(p.n_bath_mech).epsilon(1e-15));
  // Equal rates: populations interpolate linearly and sum to n_bath_mech.
  ArrayParams eq = p;
  eq.gamma = eq.kappa;
  for (double w = 0.0; w <= 1.0; w += 0.125) {
    const ThermalPair t = thermal_from_weight(eq, w);
    CHECK(std::abs(t.n_a - (1.0 - w) * eq.n_bath_mech) < 1e-12);
    CHECK(std::abs(t.n_b - w * eq.n_bath_mech) < 1e-12);
    CHECK(std::abs(t.n_a + t.n_b - eq.n_bath_mech) < 1e-12);
  }
}

TEST_CASE("the more-optical mode is the colder one") {
  const ArrayParams p;  // kappa >> gamma, optical bath empty
  for (const double k : momentum_grid(31)) {
    const double w = mode_frame(p, k, p.g).optical_weight();
    const ThermalPair t = thermal_populations(p, k, p.g);
    if (w > 0.5 + 1e-9) CHECK(t.n_a < t.n_b);
    if (w < 0.5 - 1e-9) CHECK(t.n_a > t.n_b);
    CHECK(t.n_a >= 0.0);
    CHECK(t.n_b >= 0.0);
    CHECK(t.n_a <= p.n_bath_mech + 1e-15);
    CHECK(t.n_b <= p.n_bath_mech + 1e-15);
  }
}

TEST_CASE("thermal populations reject a dead mode with no decay channel") {
  ArrayParams p;
  p.kappa = 0.0;
  CHECK_THROWS_AS(thermal_from_weight(p, 1.0), std::domain_error);
}
