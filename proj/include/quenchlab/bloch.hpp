#pragma once
// Momentum-space description of a 1D chain of coupled optical/mechanical
// pairs: two-band Bloch Hamiltonian, normal-mode frame, and the steady-state
// thermal populations selected by the two baths.
#include <vector>

#include "quenchlab/numerics.hpp"

namespace quenchlab {

// Bare chain parameters in the rotating frame of the drive. delta is the
// optical detuning (negative = red-detuned), omega the mechanical frequency,
// g the intra-cell coupling, j the photon hopping, k_hop the phonon hopping,
// kappa/gamma the optical/mechanical decay rates, n_bath_* the bath
// occupations seen by each species.
struct ArrayParams {
  double omega = 1.0;
  double delta = -1.0;
  double g = 0.02;
  double j = 0.0123;
  double k_hop = 0.0010;
  double kappa = 0.01;
  double gamma = 0.001;
  double n_bath_mech = 1.0;
  double n_bath_opt = 0.0;
};

// Uniform grid of n_k momenta covering [0, pi] inclusive.
std::vector<double> momentum_grid(int n_k);

// h_k = [[-delta + 2 j cos k, g], [g, omega + 2 k_hop cos k]].
Mat2 bloch_hamiltonian(const ArrayParams& p, double k, double g);

// Half-sum and half-difference of the diagonal of h_k. The mismatch is the
// detuning between the two bare branches; it crosses zero at k = pi/2 when
// delta = -omega.
double mean_frequency(const ArrayParams& p, double k);
double branch_mismatch(const ArrayParams& p, double k);

struct Bands {
  double upper, lower;
};
Bands band_frequencies(const ArrayParams& p, double k, double g);
double band_gap(const ArrayParams& p, double k, double g);  // upper - lower = 2*hypot(g, mismatch)

// Orthogonal change of basis to the normal modes. Row A = upper band, row B =
// lower band; B's row is (-a2, a1) so the frame is right-handed. Populations
// are insensitive to per-row sign flips.
struct ModeFrame {
  double a1 = 1.0, a2 = 0.0;
  double optical_weight() const { return a1 * a1; }  // optical fraction of mode A
  Mat2 rotation() const { return {{complexd{a1}, complexd{a2}, complexd{-a2}, complexd{a1}}}; }
};
ModeFrame mode_frame(const ArrayParams& p, double k, double g);

// Steady-state populations when each normal mode drains into both baths with
// weights set by its optical fraction w: the mode with larger optical weight
// couples harder to the cold optical bath and ends up colder.
struct ThermalPair {
  double n_a, n_b;
};
ThermalPair thermal_from_weight(const ArrayParams& p, double optical_weight);
ThermalPair thermal_populations(const ArrayParams& p, double k, double g);

}  // namespace quenchlab
