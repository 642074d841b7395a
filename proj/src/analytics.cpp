#include "quenchlab/analytics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace quenchlab {

double lz_probability(const ArrayParams& p, const QuenchProtocol& q, double k) {
  const double slope = (p.j - p.k_hop) * std::cos(k);
  return std::exp(-std::numbers::pi * slope * slope * q.tau_q / (2.0 * q.g0));
}

double lz_critical_k_amplitude(const ArrayParams& p, double g0) {
  return std::sqrt(2.0 * g0 / std::numbers::pi) / (p.j - p.k_hop);
}

double lz_critical_k(const ArrayParams& p, const QuenchProtocol& q) {
  return lz_critical_k_amplitude(p, q.g0) / std::sqrt(q.tau_q);
}

double freezeout_time(double g_m, double delta, double tau) {
  if (g_m <= 0.0 || tau <= 0.0) throw std::domain_error("freezeout_time: g_m and tau must be positive");
  auto f = [&](double t) { return t * std::sqrt(delta * delta + std::pow(g_m * t / tau, 2)) - 1.0; };
  double lo = 0.0, hi = 1.0;
  while (f(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e12) throw std::runtime_error("freezeout_time: bracket blew up");
  }
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double freezeout_excitation(double g_m, double delta, double tau) {
  const double gt = g_m * freezeout_time(g_m, delta, tau) / tau;
  return gt * gt / (gt * gt + delta * delta);
}

double freezeout_excitation_closed_form(double g_m, double delta, double tau) {
  const double d2t2 = delta * delta * tau * tau;
  const double root = std::sqrt(d2t2 * d2t2 + 32.0 * g_m * g_m * tau * tau);
  return 1.0 - 2.0 * d2t2 / (d2t2 + root);
}

RampParams equivalent_ramp(const ArrayParams& p, const QuenchProtocol& q, double k) {
  return {q.g0, (p.j - p.k_hop) * std::abs(std::cos(k)), 0.5 * q.tau_q};
}

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw std::invalid_argument("fit_power_law: need >= 2 paired points");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] <= 0.0 || y[i] <= 0.0) throw std::domain_error("fit_power_law: positive data required");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::domain_error("fit_power_law: degenerate abscissae");
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (intercept + slope * lx[i]);
    ss += r * r;
  }
  return {std::exp(intercept), slope, std::sqrt(ss / n)};
}

CriticalPoint critical_k_from_spectrum(const std::vector<SpectrumRow>& rows, double tau_q,
                                       double threshold) {
  if (rows.size() < 2) throw std::invalid_argument("critical_k_from_spectrum: need >= 2 rows");
  const double half_cell = 0.5 * (rows[1].k - rows[0].k);
  const double mid = 0.5 * std::numbers::pi;
  double k_c = 0.0;
  bool any = false;
  for (const auto& r : rows) {
    if (std::abs(r.n_q_a) > threshold) {
      any = true;
      k_c = std::max(k_c, std::abs(r.k - mid));
    }
  }
  const bool saturated =
      std::abs(rows.front().n_q_a) > threshold || std::abs(rows.back().n_q_a) > threshold;
  return {tau_q, any ? k_c + half_cell : 0.0, saturated};
}

CriticalKSweep critical_k_sweep(const ArrayParams& p, std::span<const double> tau_list, int n_k,
                                double peak_fraction, const StepPolicy& sp, int threads) {
  CriticalKSweep out;
  out.predicted_amplitude = lz_critical_k_amplitude(p, p.g);
  std::vector<double> tau_fit, kc_fit;
  for (const double tau : tau_list) {
    const QuenchProtocol q{p.g, tau};
    const auto rows = quench_spectrum(p, q, n_k, sp, threads);
    double peak = 0.0;
    for (const auto& r : rows) peak = std::max(peak, std::abs(r.n_q_a));
    const auto pt = critical_k_from_spectrum(rows, tau, peak_fraction * peak);
    out.points.push_back(pt);
    if (!pt.saturated && pt.k_c > 0.0) {
      tau_fit.push_back(tau);
      kc_fit.push_back(pt.k_c);
    }
  }
  if (tau_fit.size() < 2)
    throw std::runtime_error("critical_k_sweep: not enough unsaturated points to fit");
  out.fit = fit_power_law(tau_fit, kc_fit);
  return out;
}

IntegratedRow integrated_excitation(const std::vector<SpectrumRow>& rows, double tau_q,
                                    bool normalized) {
  if (rows.size() < 2) throw std::invalid_argument("integrated_excitation: need >= 2 rows");
  auto signed_at = [&](const SpectrumRow& r) {
    if (!normalized) return r.n_q_a + r.n_q_b;
    return r.n_q_a / r.n_i_a + r.n_q_b / r.n_i_b;
  };
  auto abs_at = [&](const SpectrumRow& r) {
    if (!normalized) return std::abs(r.n_q_a) + std::abs(r.n_q_b);
    return std::abs(r.n_q_a) / r.n_i_a + std::abs(r.n_q_b) / r.n_i_b;
  };
  double s = 0.0, a = 0.0;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double dk = rows[i + 1].k - rows[i].k;
    s += 0.5 * dk * (signed_at(rows[i]) + signed_at(rows[i + 1]));
    a += 0.5 * dk * (abs_at(rows[i]) + abs_at(rows[i + 1]));
  }
  return {tau_q, s, a};
}

}  // namespace quenchlab
