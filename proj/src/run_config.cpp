#include "mlnsocp/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "mlnsocp/errors.hpp"
#include "mlnsocp/harness.hpp"

namespace mlnsocp {

namespace {

const std::vector<std::string> kKeys = {
    "dim", "side", "nodes", "p", "range", "g", "eta_l", "eta_n", "anchors",
    "max_anchors", "method", "seed", "trials", "out", "experiment", "spacing",
    "p_values"};

std::string key_list() {
  std::string s;
  for (const std::string& k : kKeys) {
    if (!s.empty()) s += ", ";
    s += k;
  }
  return s;
}

double parse_number(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("value '" + value + "' for key '" + key + "' is not a number");
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_num(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "table1", "table2", "cdf", "rmse-surface", "crlb-surface", "scaling"};
  return names;
}

std::map<std::string, std::string> load_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line '" + line + "' is not key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

RunConfig resolve_run_config(const std::map<std::string, std::string>& base,
                             const std::map<std::string, std::string>& overrides,
                             bool require_experiment) {
  std::map<std::string, std::string> kv = base;
  for (const auto& [k, v] : overrides) kv[k] = v;

  for (const auto& [k, v] : kv) {
    if (std::find(kKeys.begin(), kKeys.end(), k) == kKeys.end())
      throw ConfigError("unknown config key '" + k + "'; valid keys: " + key_list());
  }

  if (!kv.count("side"))
    throw ConfigError("missing required key 'side' (side length N_d in meters)");
  if (!kv.count("nodes"))
    throw ConfigError("missing required key 'nodes' (node count)");
  if (!kv.count("range"))
    throw ConfigError("missing required key 'range' (radio range R in meters)");

  RunConfig rc;
  auto num = [&](const char* key, double fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : parse_number(key, it->second);
  };
  rc.net.dimension = static_cast<int>(num("dim", 2));
  rc.net.side = num("side", 0);
  rc.net.node_count = static_cast<int>(num("nodes", 0));
  rc.net.anchor_fraction = num("p", 0.3);
  rc.net.range = num("range", 0);
  rc.net.los_probability = num("g", 0.7);
  rc.net.eta_los = num("eta_l", 0.1);
  rc.net.eta_nlos = num("eta_n", 0.06);
  rc.net.max_anchors = static_cast<int>(num("max_anchors", 20));
  if (auto it = kv.find("anchors"); it != kv.end()) {
    if (it->second == "random")
      rc.net.placement = AnchorPlacement::RandomUniform;
    else if (it->second == "boundary")
      rc.net.placement = AnchorPlacement::Boundary;
    else
      throw ConfigError("anchors must be 'random' or 'boundary'");
  }
  if (auto it = kv.find("method"); it != kv.end()) rc.method = method_from_string(it->second);
  rc.seed = static_cast<std::uint64_t>(num("seed", 1));
  rc.trials = static_cast<int>(num("trials", 100));
  if (auto it = kv.find("out"); it != kv.end()) rc.out_dir = it->second;
  if (auto it = kv.find("experiment"); it != kv.end()) rc.experiment = it->second;
  rc.grid_spacing = num("spacing", 1.0);
  if (auto it = kv.find("p_values"); it != kv.end()) {
    rc.p_values.clear();
    std::stringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ','))
      rc.p_values.push_back(parse_number("p_values", trim(tok)));
  }

  rc.net.validate();
  if (rc.trials < 1) throw ConfigError("trials must be at least 1");
  if (!(rc.grid_spacing > 0.0)) throw ConfigError("spacing must be positive");
  if (!rc.experiment.empty()) {
    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), rc.experiment) == names.end()) {
      std::string list;
      for (const std::string& n : names) {
        if (!list.empty()) list += ", ";
        list += n;
      }
      throw ConfigError("unknown experiment '" + rc.experiment + "'; valid names: " + list);
    }
  } else if (require_experiment) {
    throw ConfigError("missing required key 'experiment'");
  }
  return rc;
}

std::string echo_run_config(const RunConfig& config) {
  std::ostringstream out;
  out << "dim=" << config.net.dimension << "\n";
  out << "side=" << format_num(config.net.side) << "\n";
  out << "nodes=" << config.net.node_count << "\n";
  out << "p=" << format_num(config.net.anchor_fraction) << "\n";
  out << "range=" << format_num(config.net.range) << "\n";
  out << "g=" << format_num(config.net.los_probability) << "\n";
  out << "eta_l=" << format_num(config.net.eta_los) << "\n";
  out << "eta_n=" << format_num(config.net.eta_nlos) << "\n";
  out << "anchors=" << (config.net.placement == AnchorPlacement::Boundary ? "boundary" : "random")
      << "\n";
  out << "max_anchors=" << config.net.max_anchors << "\n";
  out << "method=" << to_string(config.method) << "\n";
  out << "seed=" << config.seed << "\n";
  out << "trials=" << config.trials << "\n";
  out << "out=" << config.out_dir << "\n";
  if (!config.experiment.empty()) out << "experiment=" << config.experiment << "\n";
  out << "spacing=" << format_num(config.grid_spacing) << "\n";
  out << "p_values=";
  for (std::size_t i = 0; i < config.p_values.size(); ++i) {
    if (i) out << ',';
    out << format_num(config.p_values[i]);
  }
  out << "\n";
  return out.str();
}

}  // namespace mlnsocp
