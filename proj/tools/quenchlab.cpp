// Command-line front end: quenchlab <experiment> [--config FILE] [--out DIR]
// [--threads N] [--param key=value ...] [--tau-q T]
#include <charconv>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quenchlab/run.hpp"

namespace {

int env_threads() {
  if (const char* v = std::getenv("QUENCHLAB_THREADS")) {
    try {
      return std::max(1, std::stoi(v));
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring non-numeric QUENCHLAB_THREADS='" << v << "'\n";
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quenchlab: quench dynamics of 1D optomechanical arrays"};

  std::string experiment;
  std::string config_file;
  std::string out_dir = "out";
  int threads = -1;  // -1: fall back to QUENCHLAB_THREADS, then 1
  std::vector<std::string> param_args;
  double tau_q = 0.0;

  std::string experiment_help = "experiment to run (one of:";
  for (const auto& name : quenchlab::experiment_names()) experiment_help += " " + name;
  experiment_help += ")";

  app.add_option("experiment", experiment, experiment_help)
      ->required()
      ->check(CLI::IsMember(quenchlab::experiment_names()));
  app.add_option("--config", config_file, "key=value config file with experiment parameters");
  app.add_option("--out", out_dir, "output directory for CSV artifacts")
      ->capture_default_str();
  app.add_option("--threads", threads,
                 "worker threads (default: QUENCHLAB_THREADS or 1; output is identical "
                 "for any value)");
  app.add_option("--param", param_args, "parameter override, repeatable: --param section.key=value");
  auto* tau_opt =
      app.add_option("--tau-q", tau_q, "shorthand for --param quench.tau_q=<value>");

  CLI11_PARSE(app, argc, argv);

  try {
    quenchlab::RunConfig cfg;
    cfg.experiment = experiment;
    cfg.out_dir = out_dir;
    cfg.threads = threads > 0 ? threads : env_threads();
    if (!config_file.empty()) cfg.params = quenchlab::parse_config_file(config_file);
    for (const auto& kv : param_args) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("--param expects key=value, got '" + kv + "'");
      cfg.params[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    if (tau_opt->count() > 0) {
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof buf, tau_q);
      cfg.params["quench.tau_q"] = std::string(buf, res.ptr);
    }

    const auto files = quenchlab::run_experiment(cfg);
    for (const auto& f : files) std::cout << "wrote " << f.string() << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
