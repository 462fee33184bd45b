#ifndef DPS_CONFIG_FILE_HPP
#define DPS_CONFIG_FILE_HPP

#include <string>
#include <vector>

#include "dps/experiment.hpp"

namespace dps {

// Parses the flat sectioned key-value config format ([model], [base], [run],
// [thresholds]). Parse problems are appended to errors with line numbers;
// the returned config is usable only when errors stays empty.
ExperimentConfig parse_config_text(const std::string& text, std::vector<std::string>& errors);
ExperimentConfig load_config_file(const std::string& path, std::vector<std::string>& errors);

std::string render_config(const ExperimentConfig& config);

struct Preset {
  std::string name;
  std::string description;
  ExperimentConfig config;
};

// Named model presets with ready-to-run experiment defaults.
const std::vector<Preset>& preset_catalog();

// Frozen default configuration for a verification suite:
// convergence | rates | clt | coverage.
ExperimentConfig default_suite_config(const std::string& suite);

}  // namespace dps

#endif  // DPS_CONFIG_FILE_HPP
