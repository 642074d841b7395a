#include "quenchlab/bloch.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace quenchlab {

std::vector<double> momentum_grid(int n_k) {
  if (n_k < 2) throw std::invalid_argument("momentum_grid: need at least two points");
  std::vector<double> ks(n_k);
  for (int i = 0; i < n_k; ++i) ks[i] = std::numbers::pi * i / (n_k - 1);
  return ks;
}

Mat2 bloch_hamiltonian(const ArrayParams& p, double k, double g) {
  const double ck = std::cos(k);
  Mat2 h;
  h(0, 0) = -p.delta + 2.0 * p.j * ck;
  h(0, 1) = g;
  h(1, 0) = g;
  h(1, 1) = p.omega + 2.0 * p.k_hop * ck;
  return h;
}

double mean_frequency(const ArrayParams& p, double k) {
  return 0.5 * (p.omega - p.delta) + (p.j + p.k_hop) * std::cos(k);
}

double branch_mismatch(const ArrayParams& p, double k) {
  return 0.5 * (p.omega + p.delta) + (p.k_hop - p.j) * std::cos(k);
}

Bands band_frequencies(const ArrayParams& p, double k, double g) {
  const double m = mean_frequency(p, k);
  const double e = std::hypot(g, branch_mismatch(p, k));
  return {m + e, m - e};
}

double band_gap(const ArrayParams& p, double k, double g) {
  return 2.0 * std::hypot(g, branch_mismatch(p, k));
}

ModeFrame mode_frame(const ArrayParams& p, double k, double g) {
  const double d = branch_mismatch(p, k);
  const double e = std::hypot(g, d);
  // Upper eigenvector of [[-d, g], [g, d]], written to avoid cancellation:
  // (g, e + d) and (e - d, g) span the same direction.
  double a1, a2;
  if (e == 0.0) {
    a1 = 1.0;
    a2 = 0.0;
  } else if (d >= 0.0) {
    a1 = g;
    a2 = e + d;
  } else {
    a1 = e - d;
    a2 = g;
  }
  const double n = std::hypot(a1, a2);
  a1 /= n;
  a2 /= n;
  // Largest-|component| made positive; populations don't care about the sign.
  if (std::abs(a1) >= std::abs(a2) ? a1 < 0.0 : a2 < 0.0) {
    a1 = -a1;
    a2 = -a2;
  }
  return {a1, a2};
}

ThermalPair thermal_from_weight(const ArrayParams& p, double w) {
  const double ra = w * p.kappa + (1.0 - w) * p.gamma;
  const double rb = (1.0 - w) * p.kappa + w * p.gamma;
  if (ra <= 0.0 || rb <= 0.0)
    throw std::domain_error("thermal_from_weight: total decay rate must be positive");
  const double n_a = (w * p.kappa * p.n_bath_opt + (1.0 - w) * p.gamma * p.n_bath_mech) / ra;
  const double n_b = ((1.0 - w) * p.kappa * p.n_bath_opt + w * p.gamma * p.n_bath_mech) / rb;
  return {n_a, n_b};
}

ThermalPair thermal_populations(const ArrayParams& p, double k, double g) {
  return thermal_from_weight(p, mode_frame(p, k, g).optical_weight());
}

}  // namespace quenchlab
