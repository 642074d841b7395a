#include "quenchlab/quench.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace quenchlab {

namespace {

constexpr complexd kMinusI{0.0, -1.0};

// Traceless part of the Bloch Hamiltonian: [[-d, g], [g, d]].
Mat2 traceless_h(double d, double g) {
  Mat2 h;
  h(0, 0) = -d;
  h(0, 1) = g;
  h(1, 0) = g;
  h(1, 1) = d;
  return h;
}

// First-order polar correction S <- S (3 - S^dag S)/2; the unitarity defect
// drops from eps to O(eps^2) per application.
void project_unitary(Mat2& s) {
  Mat2 t = s.adjoint() * s;
  t(0, 0) -= 1.0;
  t(1, 1) -= 1.0;
  s = s - (s * t) * 0.5;
}

double unitarity_defect(const Mat2& s) {
  Mat2 t = s.adjoint() * s;
  t(0, 0) -= 1.0;
  t(1, 1) -= 1.0;
  return t.frobenius_norm();
}

// Largest dt at time t satisfying both step caps. The commutator cap is
// solved iteratively since the commutator itself depends on dt; the map
// contracts, so a handful of iterations settle it.
double capped_dt(double d, const QuenchProtocol& q, const StepPolicy& sp, double t,
                 double extra_rate) {
  const Mat2 h_now = traceless_h(d, q.g(t));
  const double hn = h_now.frobenius_norm() + extra_rate;
  double dt = sp.norm_cap / std::max(hn, 1e-300);
  // Contract dt until the norm cap holds at both ends of the step (|h| along
  // the linear ramp is V-shaped, so the endpoint max bounds the interior) and
  // the commutator cap holds across it.
  for (int it = 0; it < 8; ++it) {
    const Mat2 h_end = traceless_h(d, q.g(t + dt));
    const double hn_end = h_end.frobenius_norm() + extra_rate;
    const double cn = commutator(h_now, h_end).frobenius_norm();
    double want = dt;
    if (dt * hn_end > sp.norm_cap) want = sp.norm_cap / hn_end;
    if (dt * dt * cn > sp.commutator_cap)
      want = std::min(want, std::sqrt(sp.commutator_cap / cn));
    if (want >= dt) break;
    dt = want;
  }
  if (dt < sp.min_dt) throw std::runtime_error("quench step size underflow");
  return dt;
}

struct SegmentStats {
  long steps = 0;
  double max_defect = 0.0;
  double min_dt = 0.0, max_dt = 0.0;
};

// Advances S over [t0, t1] with the capped RK4 scheme.
void evolve_segment(Mat2& s, double d, const ArrayParams&, const QuenchProtocol& q,
                    const StepPolicy& sp, double t0, double t1, SegmentStats& st) {
  auto deriv = [&](double t, const Mat2& y) { return kMinusI * (traceless_h(d, q.g(t)) * y); };
  double t = t0;
  while (t < t1) {
    double dt = capped_dt(d, q, sp, t, 0.0);
    dt = std::min(dt, t1 - t);
    s = rk4_step(t, dt, s, deriv);
    if (sp.project_unitary) project_unitary(s);
    const double defect = unitarity_defect(s);
    st.max_defect = std::max(st.max_defect, defect);
    st.min_dt = st.steps == 0 ? dt : std::min(st.min_dt, dt);
    st.max_dt = std::max(st.max_dt, dt);
    ++st.steps;
    t += dt;
  }
}

// |C|^2-weighted population transport: n_out_i = sum_j |C_ij|^2 n_in_j.
std::array<double, 2> propagate_populations(const Mat2& c, double n_a, double n_b) {
  return {std::norm(c(0, 0)) * n_a + std::norm(c(0, 1)) * n_b,
          std::norm(c(1, 0)) * n_a + std::norm(c(1, 1)) * n_b};
}

}  // namespace

PropagatorResult evolve_propagator(const ArrayParams& p, double k, const QuenchProtocol& q,
                                   const StepPolicy& sp) {
  PropagatorResult out;
  SegmentStats st;
  const double d = branch_mismatch(p, k);
  evolve_segment(out.s, d, p, q, sp, 0.0, q.tau_q, st);
  out.steps = st.steps;
  out.max_unitarity_defect = st.max_defect;
  out.min_dt_used = st.min_dt;
  out.max_dt_used = st.max_dt;
  return out;
}

Mat2 mode_map(const ArrayParams& p, double k, const QuenchProtocol& q, const Mat2& s) {
  const Mat2 r0 = mode_frame(p, k, q.g(0.0)).rotation();
  const Mat2 rf = mode_frame(p, k, q.g(q.tau_q)).rotation();
  return rf * s * r0.adjoint();
}

double transfer_probability(const ArrayParams& p, double k, const QuenchProtocol& q,
                            const StepPolicy& sp) {
  const Mat2 c = mode_map(p, k, q, evolve_propagator(p, k, q, sp).s);
  return std::norm(c(0, 1));
}

SpectrumRow quench_excitations(const ArrayParams& p, double k, const QuenchProtocol& q,
                               const StepPolicy& sp) {
  const ThermalPair th = thermal_populations(p, k, q.g(0.0));
  const Mat2 c = mode_map(p, k, q, evolve_propagator(p, k, q, sp).s);
  const auto n_f = propagate_populations(c, th.n_a, th.n_b);
  return {k, th.n_a, th.n_b, n_f[0], n_f[1], n_f[0] - th.n_a, n_f[1] - th.n_b};
}

std::vector<SpectrumRow> quench_spectrum(const ArrayParams& p, const QuenchProtocol& q, int n_k,
                                         const StepPolicy& sp, int threads) {
  const std::vector<double> ks = momentum_grid(n_k);
  std::vector<SpectrumRow> rows(n_k);
  parallel_for(n_k, threads, [&](int i) { rows[i] = quench_excitations(p, ks[i], q, sp); });
  return rows;
}

std::vector<TracePoint> quench_trace(const ArrayParams& p, double k, const QuenchProtocol& q,
                                     int n_samples, const StepPolicy& sp) {
  if (n_samples < 2) throw std::invalid_argument("quench_trace: need at least two samples");
  const ThermalPair th = thermal_populations(p, k, q.g(0.0));
  const Mat2 r0t = mode_frame(p, k, q.g(0.0)).rotation().adjoint();
  const double d = branch_mismatch(p, k);

  std::vector<TracePoint> out;
  out.reserve(n_samples);
  Mat2 s = Mat2::identity();
  SegmentStats st;
  for (int i = 0; i < n_samples; ++i) {
    const double t = q.tau_q * i / (n_samples - 1);
    if (i > 0) evolve_segment(s, d, p, q, sp, q.tau_q * (i - 1) / (n_samples - 1), t, st);
    const Mat2 c = mode_frame(p, k, q.g(t)).rotation() * s * r0t;
    const auto n = propagate_populations(c, th.n_a, th.n_b);
    out.push_back({t, n[0], n[1]});
  }
  return out;
}

Mat2 evolve_covariance_from(const Mat2& n0, const ArrayParams& p, double k,
                            const QuenchProtocol& q, const DissipativeParams& dp,
                            const StepPolicy& sp) {
  const double d = branch_mismatch(p, k);
  const Mat2 damp = Mat2::diag(dp.kappa, dp.gamma);
  const Mat2 drive = Mat2::diag(dp.kappa * dp.n_bath_opt, dp.gamma * dp.n_bath_mech);
  const double extra = std::max(dp.kappa, dp.gamma);
  auto deriv = [&](double t, const Mat2& n) {
    const Mat2 h = traceless_h(d, q.g(t));
    return complexd{0.0, 1.0} * commutator(h, n) - (damp * n + n * damp) * 0.5 + drive;
  };

  Mat2 n = n0;
  double t = 0.0;
  while (t < q.tau_q) {
    double dt = capped_dt(d, q, sp, t, extra);
    dt = std::min(dt, q.tau_q - t);
    n = rk4_step(t, dt, n, deriv);
    n = (n + n.adjoint()) * 0.5;  // keep exactly Hermitian
    t += dt;
  }
  return n;
}

SpectrumRow dissipative_excitations(const ArrayParams& p, double k, const QuenchProtocol& q,
                                    const DissipativeParams& dp, const StepPolicy& sp) {
  const ThermalPair th = thermal_populations(p, k, q.g(0.0));
  const Mat2 r0 = mode_frame(p, k, q.g(0.0)).rotation();
  const Mat2 n0 = r0.adjoint() * Mat2::diag(th.n_a, th.n_b) * r0;
  const Mat2 nf = evolve_covariance_from(n0, p, k, q, dp, sp);
  const Mat2 rf = mode_frame(p, k, q.g(q.tau_q)).rotation();
  const Mat2 nm = rf * nf * rf.adjoint();
  const double n_f_a = nm(0, 0).real();
  const double n_f_b = nm(1, 1).real();
  return {k, th.n_a, th.n_b, n_f_a, n_f_b, n_f_a - th.n_a, n_f_b - th.n_b};
}

std::vector<SpectrumRow> dissipative_spectrum(const ArrayParams& p, const QuenchProtocol& q,
                                              const DissipativeParams& dp, int n_k,
                                              const StepPolicy& sp, int threads) {
  const std::vector<double> ks = momentum_grid(n_k);
  std::vector<SpectrumRow> rows(n_k);
  parallel_for(n_k, threads,
               [&](int i) { rows[i] = dissipative_excitations(p, ks[i], q, dp, sp); });
  return rows;
}

}  // namespace quenchlab
