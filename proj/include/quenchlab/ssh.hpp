#pragma once
// Finite chain with alternating bond strengths: spectra, exponentially
// localized end modes when the outer bond dominates, and quench dynamics of
// those modes when the bond pattern is swapped.
#include <vector>

#include "quenchlab/bloch.hpp"
#include "quenchlab/numerics.hpp"

namespace quenchlab {

// 2*n_cells sites; bond inside cell m couples sites (2m-1, 2m) with k_intra,
// the bond between cells with k_inter. lambda = k_inter / k_intra > 1 puts
// the chain in the phase that hosts end modes.
struct SshChain {
  int n_cells = 10;
  double k_intra = 1.0;
  double k_inter = 3.0;
  int n_sites() const { return 2 * n_cells; }
  double lambda() const { return k_inter / k_intra; }
};

Matrix ssh_hamiltonian(const SshChain& c);
EigenSystem ssh_eigensystem(const SshChain& c);

// Rotates the two smallest-|energy| eigenvectors into the combination with
// all its head weight on site 1 (left) and the orthogonal partner (right).
// For lambda > 1 these are the end modes: envelope falls by lambda^-2 per
// cell and the left mode lives on odd sites only.
struct EdgeStates {
  std::vector<double> left, right;
  double energy_scale;  // max |E| of the central pair
  double pair_gap;      // energy difference across the central pair
};
EdgeStates edge_states(const SshChain& c, const EigenSystem& es);

// Fastest wave packet on the infinite chain, in cells per unit time: the band
// slope max of E(q) = sqrt(ka^2 + kb^2 + 2 ka kb cos q) is exactly min(ka, kb).
double max_group_velocity(const SshChain& c);
// Ballistic time from one end to the other: n_cells / max_group_velocity.
double arrival_time(const SshChain& c);

// Exact spectral evolution exp(-i H t) psi0 under the given eigensystem.
std::vector<complexd> evolve_state(const EigenSystem& es, const std::vector<complexd>& psi0,
                                   double t);

// Prepares the left end mode of `initial`, then evolves it under `final_chain`.
struct SshQuenchResult {
  std::vector<double> times;
  Matrix occupation;              // n_samples x n_sites, |psi_site(t)|^2
  std::vector<double> rightmost;  // occupation on the last site
  std::vector<double> survival;   // |<psi0|psi(t)>|^2
  double arrival;                 // ballistic arrival time under final_chain
};
SshQuenchResult ssh_edge_quench(const SshChain& initial, const SshChain& final_chain,
                                double t_max, int n_samples);

// Bond between next-nearest mechanical neighbours generated by the photons
// when the optical band is far detuned: at fourth order in g/J the strength is
//   2 g^2 j (j^2 - delta^2 - omega^2) / [(j - delta - omega)(j + delta - omega)
//                                        (j - delta + omega)(j + delta + omega)],
// which tends to g^2 / j far from every resonance. Throws if one of the four
// denominator factors vanishes, naming the resonant factor.
double effective_inter_cell_coupling(const ArrayParams& p);

}  // namespace quenchlab
