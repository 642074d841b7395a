#pragma once
// Sweeping the intra-cell coupling through zero and tracking how band
// populations redistribute, with and without dissipation.
#include <vector>

#include "quenchlab/bloch.hpp"

namespace quenchlab {

// Linear ramp g(t) = g0 (1 - 2 t / tau_q) for t in [0, tau_q]: +g0 -> -g0,
// crossing zero at tau_q / 2.
struct QuenchProtocol {
  double g0 = 0.02;
  double tau_q = 3200.0;
  double g(double t) const { return g0 * (1.0 - 2.0 * t / tau_q); }
};

// Adaptive-step controls. A step dt must satisfy dt*|h| <= norm_cap at both
// ends of the step and dt^2*|[h(t), h(t+dt)]| <= commutator_cap (Frobenius
// norms); runs abort if that forces dt below min_dt. project_unitary re-projects the propagator
// onto the unitary group after every step (first-order polar correction),
// which pins |S^dag S - 1| at the accumulation floor instead of letting the
// per-step RK4 defect add up.
struct StepPolicy {
  double norm_cap = 0.05;
  double commutator_cap = 1e-4;
  double min_dt = 1e-12;
  bool project_unitary = true;
};

struct PropagatorResult {
  Mat2 s = Mat2::identity();  // propagator of the traceless generator over [0, tau_q]
  long steps = 0;
  double max_unitarity_defect = 0.0;  // max over steps of |S^dag S - 1|_F
  double min_dt_used = 0.0;
  double max_dt_used = 0.0;
};

// Integrates dS/dt = -i h~(t) S where h~ is the traceless part of the Bloch
// Hamiltonian. The identity part only contributes a global phase, which
// cancels in every |amplitude|^2 used downstream, so dropping it is exact and
// shrinks |h~| (hence the step count) by orders of magnitude.
PropagatorResult evolve_propagator(const ArrayParams& p, double k, const QuenchProtocol& q,
                                   const StepPolicy& sp = {});

// Transfer matrix between normal-mode frames: C = R(g_final) S R(g_initial)^T.
// |C_ij|^2 maps initial mode populations to final ones.
Mat2 mode_map(const ArrayParams& p, double k, const QuenchProtocol& q, const Mat2& s);

// |C_AB|^2: probability that a lower-band quasiparticle ends in the upper band.
double transfer_probability(const ArrayParams& p, double k, const QuenchProtocol& q,
                            const StepPolicy& sp = {});

// Initial thermal, final, and excess populations for one momentum.
struct SpectrumRow {
  double k;
  double n_i_a, n_i_b;  // thermal populations before the sweep
  double n_f_a, n_f_b;  // populations after the sweep
  double n_q_a, n_q_b;  // excess over thermal
};
SpectrumRow quench_excitations(const ArrayParams& p, double k, const QuenchProtocol& q,
                               const StepPolicy& sp = {});
std::vector<SpectrumRow> quench_spectrum(const ArrayParams& p, const QuenchProtocol& q, int n_k,
                                         const StepPolicy& sp = {}, int threads = 1);

// Mode populations vs time at fixed momentum, tracked in the instantaneous
// normal-mode frame of the swept Hamiltonian.
struct TracePoint {
  double t, n_a, n_b;
};
std::vector<TracePoint> quench_trace(const ArrayParams& p, double k, const QuenchProtocol& q,
                                     int n_samples, const StepPolicy& sp = {});

// Decay rates and bath occupations for the damped sweep. scale multiplies
// both rates together; the initial thermal state always comes from the
// array's own rates so every scale starts from the same state.
struct DissipativeParams {
  double kappa = 0.01;
  double gamma = 0.001;
  double n_bath_opt = 0.0;
  double n_bath_mech = 1.0;
  static DissipativeParams from_array(const ArrayParams& p, double scale) {
    return {p.kappa * scale, p.gamma * scale, p.n_bath_opt, p.n_bath_mech};
  }
};

// Second moments N_ij = <X_i^dag X_j> under
//   dN/dt = i[h~, N] - {diag(kappa, gamma), N}/2 + diag(kappa n_opt, gamma n_mech),
// starting from n0 in the bare (optical, mechanical) basis.
Mat2 evolve_covariance_from(const Mat2& n0, const ArrayParams& p, double k,
                            const QuenchProtocol& q, const DissipativeParams& dp,
                            const StepPolicy& sp = {});
// Same, starting from the thermal state of the undriven array.
SpectrumRow dissipative_excitations(const ArrayParams& p, double k, const QuenchProtocol& q,
                                    const DissipativeParams& dp, const StepPolicy& sp = {});
std::vector<SpectrumRow> dissipative_spectrum(const ArrayParams& p, const QuenchProtocol& q,
                                              const DissipativeParams& dp, int n_k,
                                              const StepPolicy& sp = {}, int threads = 1);

}  // namespace quenchlab
