#pragma once
// Named experiments behind the CLI: parameter tables with defaults, flat
// key=value config parsing, and deterministic CSV artifact writing.
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace quenchlab {

struct RunConfig {
  std::string experiment;
  std::filesystem::path out_dir = "out";
  int threads = 1;
  std::map<std::string, std::string> params;  // overrides, section-prefixed keys
};

// Experiments in CLI listing order.
const std::vector<std::string>& experiment_names();

// Accepted keys and their defaults for one experiment; unknown experiments throw.
std::map<std::string, std::string> default_params(const std::string& experiment);

// Flat "key = value" lines; '#' starts a comment, blank lines are skipped.
// Later duplicates win. Throws with the line number on malformed lines.
std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path);

// Runs one experiment and writes its CSV artifacts into cfg.out_dir (created
// if missing, files replaced atomically). Returns the files written. Unknown
// parameter keys throw, listing the accepted set. Output bytes are
// independent of cfg.threads.
std::vector<std::filesystem::path> run_experiment(const RunConfig& cfg);

}  // namespace quenchlab
