#include "quenchlab/ssh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace quenchlab {

Matrix ssh_hamiltonian(const SshChain& c) {
  const int n = c.n_sites();
  if (c.n_cells < 1) throw std::invalid_argument("ssh_hamiltonian: need at least one cell");
  Matrix h(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    const double bond = (i % 2 == 0) ? c.k_intra : c.k_inter;
    h(i, i + 1) = bond;
    h(i + 1, i) = bond;
  }
  return h;
}

EigenSystem ssh_eigensystem(const SshChain& c) { return jacobi_eigensystem(ssh_hamiltonian(c)); }

EdgeStates edge_states(const SshChain& c, const EigenSystem& es) {
  const int n = c.n_sites();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(es.values[a]) < std::abs(es.values[b]);
  });
  const int i1 = order[0], i2 = order[1];
  const std::vector<double> v1 = es.vectors.column(i1);
  const std::vector<double> v2 = es.vectors.column(i2);

  // In-pair rotation putting all site-1 weight on one combination; the two
  // central eigenvectors are end-mode superpositions, so this untangles them.
  const double a = v1[0], b = v2[0];
  const double nrm = std::hypot(a, b);
  EdgeStates out;
  out.left.resize(n);
  out.right.resize(n);
  if (nrm < 1e-14) {
    out.left = v1;
    out.right = v2;
  } else {
    for (int i = 0; i < n; ++i) {
      out.left[i] = (a * v1[i] + b * v2[i]) / nrm;
      out.right[i] = (b * v1[i] - a * v2[i]) / nrm;
    }
  }
  if (out.left[0] < 0.0)
    for (double& x : out.left) x = -x;
  if (out.right[n - 1] < 0.0)
    for (double& x : out.right) x = -x;
  out.energy_scale = std::max(std::abs(es.values[i1]), std::abs(es.values[i2]));
  out.pair_gap = std::abs(es.values[i2] - es.values[i1]);
  return out;
}

double max_group_velocity(const SshChain& c) { return std::min(c.k_intra, c.k_inter); }

double arrival_time(const SshChain& c) {
  const double v = max_group_velocity(c);
  if (v <= 0.0) throw std::domain_error("arrival_time: needs both bonds positive");
  return c.n_cells / v;
}

std::vector<complexd> evolve_state(const EigenSystem& es, const std::vector<complexd>& psi0,
                                   double t) {
  const int n = es.vectors.rows();
  if (static_cast<int>(psi0.size()) != n)
    throw std::invalid_argument("evolve_state: state size mismatch");
  std::vector<complexd> coeff(n);
  for (int j = 0; j < n; ++j) {
    complexd s = 0.0;
    for (int i = 0; i < n; ++i) s += es.vectors(i, j) * psi0[i];
    coeff[j] = s * std::exp(complexd{0.0, -es.values[j] * t});
  }
  std::vector<complexd> psi(n);
  for (int i = 0; i < n; ++i) {
    complexd s = 0.0;
    for (int j = 0; j < n; ++j) s += es.vectors(i, j) * coeff[j];
    psi[i] = s;
  }
  return psi;
}

SshQuenchResult ssh_edge_quench(const SshChain& initial, const SshChain& final_chain,
                                double t_max, int n_samples) {
  if (n_samples < 2) throw std::invalid_argument("ssh_edge_quench: need at least two samples");
  if (initial.n_cells != final_chain.n_cells)
    throw std::invalid_argument("ssh_edge_quench: cell counts differ");
  const int n = initial.n_sites();
  const EdgeStates edges = edge_states(initial, ssh_eigensystem(initial));
  std::vector<complexd> psi0(edges.left.begin(), edges.left.end());
  const EigenSystem es_f = ssh_eigensystem(final_chain);

  SshQuenchResult out;
  out.times.resize(n_samples);
  out.occupation = Matrix(n_samples, n);
  out.rightmost.resize(n_samples);
  out.survival.resize(n_samples);
  out.arrival = arrival_time(final_chain);
  for (int s = 0; s < n_samples; ++s) {
    const double t = t_max * s / (n_samples - 1);
    const auto psi = evolve_state(es_f, psi0, t);
    complexd ov = 0.0;
    for (int i = 0; i < n; ++i) {
      out.occupation(s, i) = std::norm(psi[i]);
      ov += std::conj(psi0[i]) * psi[i];
    }
    out.times[s] = t;
    out.rightmost[s] = out.occupation(s, n - 1);
    out.survival[s] = std::norm(ov);
  }
  return out;
}

double effective_inter_cell_coupling(const ArrayParams& p) {
  struct Factor {
    double value;
    const char* name;
  };
  const Factor factors[] = {
      {-p.delta + p.j - p.omega, "(-delta + j - omega)"},
      {p.delta + p.j - p.omega, "(delta + j - omega)"},
      {-p.delta + p.j + p.omega, "(-delta + j + omega)"},
      {p.delta + p.j + p.omega, "(delta + j + omega)"},
  };
  const double scale = std::abs(p.delta) + std::abs(p.j) + std::abs(p.omega);
  double denom = 1.0;
  for (const auto& f : factors) {
    if (std::abs(f.value) < 1e-9 * std::max(scale, 1.0))
      throw std::domain_error(std::string("effective_inter_cell_coupling: resonant denominator, ") +
                              f.name + " vanishes");
    denom *= f.value;
  }
  const double numer = 2.0 * p.g * p.g * p.j * (p.j * p.j - p.delta * p.delta - p.omega * p.omega);
  return numer / denom;
}

}  // namespace quenchlab
