#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mlnsocp/conic.hpp"
#include "mlnsocp/net_model.hpp"

namespace mlnsocp {

// Resolved run parameters: the NetworkConfig plus run bookkeeping. Built
// from a flat key=value file with command-line overrides on top.
struct RunConfig {
  NetworkConfig net;
  Method method = Method::MlnSocp;
  std::uint64_t seed = 1;
  int trials = 100;
  std::string out_dir = "out";
  std::string experiment;  // table1|table2|cdf|rmse-surface|crlb-surface|scaling
  double grid_spacing = 1.0;
  std::vector<double> p_values = {0.1, 0.2, 0.3};
};

// key=value text, one entry per line, '#' comments. Keys:
//   dim side nodes p range g eta_l eta_n anchors method seed trials out
//   experiment spacing p_values
std::map<std::string, std::string> load_key_value_file(const std::string& path);

// Overrides win over base values; unknown keys raise ConfigError listing
// the valid keys; invariants are checked with errors naming the field.
RunConfig resolve_run_config(const std::map<std::string, std::string>& base,
                             const std::map<std::string, std::string>& overrides,
                             bool require_experiment = false);

// echo in the same key=value format; resolving the echo reproduces the
// config exactly
std::string echo_run_config(const RunConfig& config);

const std::vector<std::string>& experiment_names();

}  // namespace mlnsocp
