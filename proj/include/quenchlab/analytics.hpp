#pragma once
// Closed-form benchmarks for the swept two-band problem (avoided-crossing
// transfer, freeze-out scaling) plus the power-law fitting and critical-
// momentum extraction used to compare them against simulation.
#include <span>
#include <vector>

#include "quenchlab/quench.hpp"

namespace quenchlab {

// Avoided-crossing transfer probability for the linear sweep at momentum k:
// P = exp(-pi (j - k_hop)^2 cos^2 k * tau_q / (2 g0)).
double lz_probability(const ArrayParams& p, const QuenchProtocol& q, double k);

// Half-width in k around pi/2 inside which transfer stays order one: the
// exponent above reaches 1 at |k - pi/2| = amplitude / sqrt(tau_q) with
// amplitude = sqrt(2 g0 / pi) / (j - k_hop).
double lz_critical_k_amplitude(const ArrayParams& p, double g0);
double lz_critical_k(const ArrayParams& p, const QuenchProtocol& q);

// One-sided linear ramp g(t) = g_m t / tau at fixed detuning delta. The
// freeze-out time solves t = 1 / sqrt(delta^2 + (g_m t / tau)^2): the moment
// the instantaneous gap stops beating the remaining ramp time.
double freezeout_time(double g_m, double delta, double tau);
// Excited-state weight frozen in at that moment: gt^2 / (gt^2 + delta^2)
// with gt = g_m * t_hat / tau.
double freezeout_excitation(double g_m, double delta, double tau);
// Closed-form variant of the same weight, kept verbatim for comparison; it
// does not reduce exactly to freezeout_excitation (the radical differs).
double freezeout_excitation_closed_form(double g_m, double delta, double tau);

// Maps one momentum of the symmetric sweep (+g0 -> -g0 over tau_q) onto the
// equivalent one-sided ramp: same rate 2 g0 / tau_q, detuning frozen at
// (j - k_hop)|cos k|.
struct RampParams {
  double g_m, delta, tau;
};
RampParams equivalent_ramp(const ArrayParams& p, const QuenchProtocol& q, double k);

// Least squares on log-log: y ~ amplitude * x^exponent. rms_residual is the
// root-mean-square misfit of log(y).
struct PowerLawFit {
  double amplitude, exponent, rms_residual;
};
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

// Largest |k - pi/2| whose excess population exceeds the threshold, padded by
// half a grid cell; saturated means the excited region reaches a grid edge,
// so the width is a floor rather than a measurement.
struct CriticalPoint {
  double tau_q;
  double k_c;
  bool saturated;
};
CriticalPoint critical_k_from_spectrum(const std::vector<SpectrumRow>& rows, double tau_q,
                                       double threshold);

// Sweeps tau_q, extracts k_c at a per-sweep threshold (peak_fraction of that
// sweep's max |excess|), and fits the unsaturated points to a power law.
struct CriticalKSweep {
  std::vector<CriticalPoint> points;
  PowerLawFit fit;                   // over unsaturated points only
  double predicted_amplitude;        // lz_critical_k_amplitude at the sweep's g0
};
CriticalKSweep critical_k_sweep(const ArrayParams& p, std::span<const double> tau_list, int n_k,
                                double peak_fraction, const StepPolicy& sp = {}, int threads = 1);

// Trapezoid over the momentum grid of the excess populations, both signed and
// absolute. normalized divides each mode's excess by its initial population
// before summing.
struct IntegratedRow {
  double tau_q, sum_signed, sum_abs;
};
IntegratedRow integrated_excitation(const std::vector<SpectrumRow>& rows, double tau_q,
                                    bool normalized);

}  // namespace quenchlab
