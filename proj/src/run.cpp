#include "quenchlab/run.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "quenchlab/analytics.hpp"
#include "quenchlab/bloch.hpp"
#include "quenchlab/quench.hpp"
#include "quenchlab/ssh.hpp"

namespace quenchlab {

namespace fs = std::filesystem;

namespace {

using ParamMap = std::map<std::string, std::string>;

const ParamMap kArrayDefaults = {
    {"array.omega", "1"},        {"array.delta", "-1"},    {"array.g", "0.02"},
    {"array.j", "0.0123"},       {"array.k", "0.001"},     {"array.kappa", "0.01"},
    {"array.gamma", "0.001"},    {"array.n_bath_mech", "1"}, {"array.n_bath_opt", "0"},
};
const ParamMap kStepDefaults = {
    {"steps.norm_cap", "0.05"},
    {"steps.commutator_cap", "1e-4"},
};

ParamMap merged(std::initializer_list<ParamMap> maps) {
  ParamMap out;
  for (const auto& m : maps) out.insert(m.begin(), m.end());
  return out;
}

const std::map<std::string, ParamMap>& experiment_table() {
  static const std::map<std::string, ParamMap> table = {
      {"bandstructure", merged({kArrayDefaults,
                                {{"grid.n_k", "512"}, {"band.g_list", "0,0.02"}}})},
      {"quench-trace", merged({kArrayDefaults, kStepDefaults,
                               {{"quench.tau_q", "50"},
                                {"grid.k_over_pi", "0.2"},
                                {"trace.n_samples", "401"}}})},
      {"quench-spectrum", merged({kArrayDefaults, kStepDefaults,
                                  {{"quench.tau_q", "3200"}, {"grid.n_k", "512"}}})},
      {"kc-sweep", merged({kArrayDefaults, kStepDefaults,
                           {{"grid.n_k", "512"},
                            {"sweep.tau_first", "25"},
                            {"sweep.tau_count", "12"},
                            {"sweep.peak_fraction", "0.9"}}})},
      {"dissipation", merged({kArrayDefaults, kStepDefaults,
                              {{"quench.tau_q", "25"},
                               {"grid.n_k", "256"},
                               {"dissipation.scales", "0,0.5,1,2"}}})},
      {"integrated", merged({kArrayDefaults, kStepDefaults,
                             {{"grid.n_k", "512"},
                              {"sweep.tau_first", "400"},
                              {"sweep.tau_count", "8"},
                              {"integrated.normalized", "1"}}})},
      {"ssh-spectrum", merged({{{"ssh.n_cells", "12"},
                                {"ssh.k_intra", "1"},
                                {"ssh.lambda_min", "0"},
                                {"ssh.lambda_max", "3"},
                                {"ssh.lambda_count", "61"}}})},
      {"ssh-quench", merged({{{"ssh.n_cells", "10"},
                              {"ssh.k_intra", "1"},
                              {"ssh.lambda", "3"},
                              {"ssh.t_max", "30"},
                              {"ssh.n_samples", "301"}}})},
      {"lz-kz-compare", merged({kArrayDefaults, kStepDefaults,
                                {{"quench.tau_q", "3200"}, {"grid.n_k", "512"}}})},
  };
  return table;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    while (pos < value.size() && std::isspace(static_cast<unsigned char>(value[pos]))) ++pos;
    if (pos != value.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("parameter " + key + ": cannot parse '" + value + "' as a number");
  }
}

int to_int(const std::string& key, const std::string& value) {
  const double v = to_double(key, value);
  const int i = static_cast<int>(std::lround(v));
  if (std::abs(v - i) > 1e-9) throw std::invalid_argument("parameter " + key + ": expected an integer");
  return i;
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, item));
  if (out.empty()) throw std::invalid_argument("parameter " + key + ": empty list");
  return out;
}

class Params {
 public:
  Params(const std::string& experiment, const ParamMap& overrides) {
    const auto& table = experiment_table();
    const auto it = table.find(experiment);
    if (it == table.end()) {
      std::string names;
      for (const auto& n : experiment_names()) names += (names.empty() ? "" : ", ") + n;
      throw std::invalid_argument("unknown experiment '" + experiment + "' (expected one of: " +
                                  names + ")");
    }
    values_ = it->second;
    for (const auto& [key, value] : overrides) {
      if (!values_.count(key)) {
        std::string keys;
        for (const auto& [k, v] : values_) keys += (keys.empty() ? "" : ", ") + k;
        throw std::invalid_argument("unknown parameter '" + key + "' for experiment '" +
                                    experiment + "' (accepted: " + keys + ")");
      }
      values_[key] = value;
    }
  }

  double get(const std::string& key) const { return to_double(key, raw(key)); }
  int get_int(const std::string& key) const { return to_int(key, raw(key)); }
  std::vector<double> get_list(const std::string& key) const { return to_list(key, raw(key)); }
  bool get_flag(const std::string& key) const { return get(key) != 0.0; }

  ArrayParams array() const {
    ArrayParams p;
    p.omega = get("array.omega");
    p.delta = get("array.delta");
    p.g = get("array.g");
    p.j = get("array.j");
    p.k_hop = get("array.k");
    p.kappa = get("array.kappa");
    p.gamma = get("array.gamma");
    p.n_bath_mech = get("array.n_bath_mech");
    p.n_bath_opt = get("array.n_bath_opt");
    return p;
  }
  StepPolicy steps() const {
    StepPolicy sp;
    sp.norm_cap = get("steps.norm_cap");
    sp.commutator_cap = get("steps.commutator_cap");
    return sp;
  }

 private:
  const std::string& raw(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw std::logic_error("parameter table misses key " + key);
    return it->second;
  }
  ParamMap values_;
};

// Shortest round-trip decimal form; the same bytes for the same double on
// every run, which is what makes artifacts thread-count independent.
std::string fmt(double v) {
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (res.ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return {buf.data(), res.ptr};
}

std::string join_csv(std::initializer_list<double> vals) {
  std::string row;
  for (const double v : vals) {
    if (!row.empty()) row += ',';
    row += fmt(v);
  }
  return row;
}

// Write-to-temp then rename, LF line endings.
fs::path write_csv(const fs::path& dir, const std::string& name, const std::string& header,
                   const std::vector<std::string>& rows) {
  const fs::path final_path = dir / name;
  const fs::path tmp_path = dir / (name + ".tmp");
  {
    std::ofstream f(tmp_path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp_path.string());
    f << header << '\n';
    for (const auto& r : rows) f << r << '\n';
    if (!f.flush()) throw std::runtime_error("write failed for " + tmp_path.string());
  }
  fs::rename(tmp_path, final_path);
  return final_path;
}

std::vector<double> tau_doubling(double first, int count) {
  std::vector<double> out(count);
  double t = first;
  for (int i = 0; i < count; ++i, t *= 2.0) out[i] = t;
  return out;
}

using Paths = std::vector<fs::path>;

Paths run_bandstructure(const Params& pp, const fs::path& dir, int) {
  const ArrayParams p = pp.array();
  const auto ks = momentum_grid(pp.get_int("grid.n_k"));
  const auto gs = pp.get_list("band.g_list");
  std::vector<std::string> rows;
  rows.reserve(ks.size() * gs.size());
  for (const double k : ks)
    for (const double g : gs) {
      const Bands b = band_frequencies(p, k, g);
      rows.push_back(join_csv({k, g, b.upper, b.lower, band_gap(p, k, g)}));
    }
  return {write_csv(dir, "bands.csv", "k,g,omega_A,omega_B,gap", rows)};
}

Paths run_quench_trace(const Params& pp, const fs::path& dir, int) {
  const ArrayParams p = pp.array();
  const QuenchProtocol q{p.g, pp.get("quench.tau_q")};
  const double k = pp.get("grid.k_over_pi") * std::numbers::pi;
  const auto trace = quench_trace(p, k, q, pp.get_int("trace.n_samples"), pp.steps());
  std::vector<std::string> rows;
  rows.reserve(trace.size());
  for (const auto& tp : trace) rows.push_back(join_csv({tp.t, tp.n_a, tp.n_b}));
  return {write_csv(dir, "trace.csv", "t,n_A,n_B", rows)};
}

std::vector<std::string> spectrum_rows(const std::vector<SpectrumRow>& spec) {
  std::vector<std::string> rows;
  rows.reserve(spec.size());
  for (const auto& r : spec)
    rows.push_back(join_csv({r.k, r.n_i_a, r.n_i_b, r.n_f_a, r.n_f_b, r.n_q_a, r.n_q_b}));
  return rows;
}

Paths run_quench_spectrum(const Params& pp, const fs::path& dir, int threads) {
  const ArrayParams p = pp.array();
  const QuenchProtocol q{p.g, pp.get("quench.tau_q")};
  const auto spec = quench_spectrum(p, q, pp.get_int("grid.n_k"), pp.steps(), threads);
  return {write_csv(dir, "spectrum.csv", "k,N_i_A,N_i_B,N_f_A,N_f_B,N_Q_A,N_Q_B",
                    spectrum_rows(spec))};
}

Paths run_kc_sweep(const Params& pp, const fs::path& dir, int threads) {
  const ArrayParams p = pp.array();
  const auto taus = tau_doubling(pp.get("sweep.tau_first"), pp.get_int("sweep.tau_count"));
  const auto sweep = critical_k_sweep(p, taus, pp.get_int("grid.n_k"),
                                      pp.get("sweep.peak_fraction"), pp.steps(), threads);
  std::vector<std::string> rows;
  rows.reserve(sweep.points.size());
  for (const auto& pt : sweep.points) rows.push_back(join_csv({pt.tau_q, pt.k_c}));
  Paths out;
  out.push_back(write_csv(dir, "kc.csv", "tau_q,k_c", rows));
  out.push_back(write_csv(dir, "kc_fit.csv",
                          "amplitude,exponent,rms_residual,lz_amplitude_prediction",
                          {join_csv({sweep.fit.amplitude, sweep.fit.exponent,
                                     sweep.fit.rms_residual, sweep.predicted_amplitude})}));
  return out;
}

Paths run_dissipation(const Params& pp, const fs::path& dir, int threads) {
  const ArrayParams p = pp.array();
  const QuenchProtocol q{p.g, pp.get("quench.tau_q")};
  const int n_k = pp.get_int("grid.n_k");
  const auto scales = pp.get_list("dissipation.scales");
  std::vector<std::vector<SpectrumRow>> specs;
  specs.reserve(scales.size());
  for (const double s : scales)
    specs.push_back(dissipative_spectrum(p, q, DissipativeParams::from_array(p, s), n_k,
                                         pp.steps(), threads));
  std::vector<std::string> rows;
  rows.reserve(static_cast<std::size_t>(n_k) * scales.size());
  for (int i = 0; i < n_k; ++i)
    for (std::size_t si = 0; si < scales.size(); ++si) {
      const auto& r = specs[si][i];
      rows.push_back(
          join_csv({r.k, p.kappa * scales[si], r.n_f_a / r.n_i_a, r.n_f_b / r.n_i_b}));
    }
  return {write_csv(dir, "dissipation.csv", "k,kappa,N_f_A_norm,N_f_B_norm", rows)};
}

Paths run_integrated(const Params& pp, const fs::path& dir, int threads) {
  const ArrayParams p = pp.array();
  const auto taus = tau_doubling(pp.get("sweep.tau_first"), pp.get_int("sweep.tau_count"));
  const int n_k = pp.get_int("grid.n_k");
  const bool normalized = pp.get_flag("integrated.normalized");
  std::vector<std::string> rows;
  rows.reserve(taus.size());
  for (const double tau : taus) {
    const QuenchProtocol q{p.g, tau};
    const auto spec = quench_spectrum(p, q, n_k, pp.steps(), threads);
    const auto ir = integrated_excitation(spec, tau, normalized);
    rows.push_back(join_csv({ir.tau_q, ir.sum_signed, ir.sum_abs}));
  }
  return {write_csv(dir, "integrated.csv", "tau_q,sum_signed,sum_abs", rows)};
}

Paths run_ssh_spectrum(const Params& pp, const fs::path& dir, int) {
  const int n_cells = pp.get_int("ssh.n_cells");
  const double k_intra = pp.get("ssh.k_intra");
  const double lmin = pp.get("ssh.lambda_min");
  const double lmax = pp.get("ssh.lambda_max");
  const int count = pp.get_int("ssh.lambda_count");
  if (count < 2) throw std::invalid_argument("ssh.lambda_count: need at least two points");
  std::vector<std::string> rows;
  rows.reserve(static_cast<std::size_t>(count) * 2 * n_cells);
  for (int li = 0; li < count; ++li) {
    const double lambda = lmin + (lmax - lmin) * li / (count - 1);
    const SshChain chain{n_cells, k_intra, lambda * k_intra};
    const auto es = ssh_eigensystem(chain);
    for (std::size_t e = 0; e < es.values.size(); ++e)
      rows.push_back(join_csv({lambda, static_cast<double>(e), es.values[e]}));
  }
  return {write_csv(dir, "ssh_spectrum.csv", "lambda,eigen_index,energy", rows)};
}

Paths run_ssh_quench(const Params& pp, const fs::path& dir, int) {
  const int n_cells = pp.get_int("ssh.n_cells");
  const double k_intra = pp.get("ssh.k_intra");
  const double lambda = pp.get("ssh.lambda");
  const SshChain initial{n_cells, k_intra, lambda * k_intra};
  const SshChain final_chain{n_cells, lambda * k_intra, k_intra};  // bond pattern swapped
  const auto res =
      ssh_edge_quench(initial, final_chain, pp.get("ssh.t_max"), pp.get_int("ssh.n_samples"));
  std::vector<std::string> map_rows, pr_rows;
  const int n = 2 * n_cells;
  map_rows.reserve(res.times.size() * n);
  pr_rows.reserve(res.times.size());
  for (std::size_t s = 0; s < res.times.size(); ++s) {
    for (int site = 0; site < n; ++site)
      map_rows.push_back(
          join_csv({res.times[s], static_cast<double>(site + 1), res.occupation(s, site)}));
    pr_rows.push_back(join_csv({res.times[s], res.rightmost[s], res.survival[s]}));
  }
  Paths out;
  out.push_back(write_csv(dir, "ssh_map.csv", "t,site,occupation", map_rows));
  out.push_back(
      write_csv(dir, "ssh_pr.csv", "t,rightmost_occupation,survival_overlap", pr_rows));
  return out;
}

Paths run_lz_kz_compare(const Params& pp, const fs::path& dir, int threads) {
  const ArrayParams p = pp.array();
  const QuenchProtocol q{p.g, pp.get("quench.tau_q")};
  const int n_k = pp.get_int("grid.n_k");
  const StepPolicy sp = pp.steps();
  const auto ks = momentum_grid(n_k);
  std::vector<double> sim(n_k);
  parallel_for(n_k, threads, [&](int i) { sim[i] = transfer_probability(p, ks[i], q, sp); });
  std::vector<std::string> rows;
  rows.reserve(n_k);
  for (int i = 0; i < n_k; ++i) {
    const RampParams ramp = equivalent_ramp(p, q, ks[i]);
    rows.push_back(join_csv({ks[i], sim[i], lz_probability(p, q, ks[i]),
                             freezeout_excitation(ramp.g_m, ramp.delta, ramp.tau)}));
  }
  return {write_csv(dir, "compare.csv", "k,sim_excitation_prob,p_lz,beta_sq_kz", rows)};
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "bandstructure", "quench-trace", "quench-spectrum", "kc-sweep",  "dissipation",
      "integrated",    "ssh-spectrum", "ssh-quench",      "lz-kz-compare"};
  return names;
}

std::map<std::string, std::string> default_params(const std::string& experiment) {
  const auto& table = experiment_table();
  const auto it = table.find(experiment);
  if (it == table.end()) throw std::invalid_argument("unknown experiment '" + experiment + "'");
  return it->second;
}

std::map<std::string, std::string> parse_config_file(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file " + path.string());
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  std::map<std::string, std::string> out;
  std::string line;
  for (int lineno = 1; std::getline(f, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": empty key");
    out[key] = value;
  }
  return out;
}

std::vector<fs::path> run_experiment(const RunConfig& cfg) {
  const Params pp(cfg.experiment, cfg.params);
  const int threads = std::max(1, cfg.threads);
  fs::create_directories(cfg.out_dir);

  if (cfg.experiment == "bandstructure") return run_bandstructure(pp, cfg.out_dir, threads);
  if (cfg.experiment == "quench-trace") return run_quench_trace(pp, cfg.out_dir, threads);
  if (cfg.experiment == "quench-spectrum") return run_quench_spectrum(pp, cfg.out_dir, threads);
  if (cfg.experiment == "kc-sweep") return run_kc_sweep(pp, cfg.out_dir, threads);
  if (cfg.experiment == "dissipation") return run_dissipation(pp, cfg.out_dir, threads);
  if (cfg.experiment == "integrated") return run_integrated(pp, cfg.out_dir, threads);
  if (cfg.experiment == "ssh-spectrum") return run_ssh_spectrum(pp, cfg.out_dir, threads);
  if (cfg.experiment == "ssh-quench") return run_ssh_quench(pp, cfg.out_dir, threads);
  if (cfg.experiment == "lz-kz-compare") return run_lz_kz_compare(pp, cfg.out_dir, threads);
  throw std::logic_error("experiment dispatch out of sync: " + cfg.experiment);
}

}  // namespace quenchlab
