#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mlnsocp/crlb.hpp"
#include "mlnsocp/errors.hpp"
#include "mlnsocp/harness.hpp"
#include "mlnsocp/measurement.hpp"
#include "mlnsocp/net_model.hpp"
#include "mlnsocp/rng.hpp"
#include "mlnsocp/run_config.hpp"

namespace fs = std::filesystem;
using namespace mlnsocp;

namespace {

struct KeyOptions {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void attach(CLI::App* cmd) {
    static const char* keys[] = {"dim", "side", "nodes", "p", "range", "g",
                                 "eta_l", "eta_n", "anchors", "method", "seed",
                                 "trials", "out", "experiment", "spacing", "p_values"};
    for (const char* key : keys)
      options[key] = cmd->add_option("--" + std::string(key), values[key]);
  }

  std::map<std::string, std::string> overrides() const {
    std::map<std::string, std::string> out;
    for (const auto& [key, opt] : options)
      if (opt->count() > 0) out[key] = values.at(key);
    return out;
  }
};

RunConfig resolve(const std::string& config_path, const KeyOptions& keys,
                  bool require_experiment) {
  std::map<std::string, std::string> base;
  if (!config_path.empty()) base = load_key_value_file(config_path);
  return resolve_run_config(base, keys.overrides(), require_experiment);
}

fs::path prepare_out_dir(const RunConfig& rc) {
  fs::path dir(rc.out_dir);
  fs::create_directories(dir);
  std::ofstream echo(dir / "config.txt", std::ios::binary);
  echo << echo_run_config(rc);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

int cmd_deploy(const RunConfig& rc) {
  const fs::path dir = prepare_out_dir(rc);
  const Topology topo = deploy_uniform(rc.net, rc.seed);
  std::ofstream out(dir / "topology.json", std::ios::binary);
  write_topology(topo, out);
  std::cout << "wrote " << (dir / "topology.json").string() << " ("
            << topo.unknown_count << " unknowns, " << topo.anchor_count()
            << " anchors, " << topo.edges.size() << " edges)\n";
  return 0;
}

int cmd_measure(const RunConfig& rc) {
  const fs::path dir = prepare_out_dir(rc);
  const Topology topo = deploy_uniform(rc.net, rc.seed);
  const MeasurementSet mset = measure_all(topo, rc.net, rc.seed);
  {
    std::ofstream out(dir / "topology.json", std::ios::binary);
    write_topology(topo, out);
  }
  {
    std::ofstream out(dir / "measurements.csv", std::ios::binary);
    write_measurements_csv(mset, out);
  }
  std::cout << "wrote " << (dir / "measurements.csv").string() << " ("
            << mset.values.size() << " edges, " << mset.floored_count << " floored)\n";
  return 0;
}

int cmd_localize(const RunConfig& rc) {
  const fs::path dir = prepare_out_dir(rc);
  std::ofstream est(dir / "estimates.csv", std::ios::binary);
  est << "trial,node,true_x,true_y,est_x,est_y,error,p_i,status,iterations\n";
  est.precision(17);

  std::size_t failures = 0, unlocalizable = 0, count = 0;
  std::vector<double> errors;
  for (int k = 0; k < rc.trials; ++k) {
    const std::uint64_t seed = derive_seed(rc.seed, stream::kCell, 0, k);
    const TrialResult trial = run_trial(rc.net, seed, rc.method);
    unlocalizable += static_cast<std::size_t>(trial.unlocalizable);
    failures += static_cast<std::size_t>(trial.solver_failures);
    for (const NodeResult& n : trial.nodes) {
      est << k << ',' << n.node << ',' << n.true_x << ',' << n.true_y << ','
          << n.est_x << ',' << n.est_y << ',' << n.error << ',' << n.p_i << ','
          << to_string(n.status) << ',' << n.iterations << '\n';
      errors.push_back(n.error);
      ++count;
    }
  }

  nlohmann::ordered_json summary;
  summary["method"] = to_string(rc.method);
  summary["trials"] = rc.trials;
  summary["localized_nodes"] = count;
  summary["unlocalizable"] = unlocalizable;
  summary["solver_failures"] = failures;
  if (!errors.empty()) {
    std::sort(errors.begin(), errors.end());
    double mean = 0.0;
    for (double e : errors) mean += e;
    mean /= static_cast<double>(errors.size());
    summary["mean_error"] = mean;
    summary["median_error"] = errors[errors.size() / 2];
    summary["max_error"] = errors.back();
  } else {
    summary["note"] = "no unknown nodes were localized";
  }
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
  return failures > 0 ? 2 : 0;
}

int run_experiment(const RunConfig& rc, const std::string& name) {
  const fs::path dir = prepare_out_dir(rc);
  const auto t0 = std::chrono::steady_clock::now();

  if (name == "table1" || name == "table2") {
    const ExperimentReport report =
        name == "table1" ? run_table1(rc.seed, rc.trials) : run_table2(rc.seed, rc.trials);
    write_file(dir / (name + ".json"), report_to_json(report) + "\n");
    std::ofstream raw(dir / (name + "_raw.csv"), std::ios::binary);
    write_raw_errors_csv(report, raw);
  } else if (name == "cdf") {
    const ExperimentReport report = run_cdf(rc.seed, rc.trials, rc.p_values);
    write_file(dir / "cdf.json", report_to_json(report) + "\n");
    std::ofstream cdf(dir / "cdf.csv", std::ios::binary);
    write_cdf_csv(report, cdf);
    std::ofstream raw(dir / "cdf_raw.csv", std::ios::binary);
    write_raw_errors_csv(report, raw);
  } else if (name == "rmse-surface") {
    const RmseSurface surface = run_rmse_surface(rc.net, rc.seed, rc.trials, rc.grid_spacing);
    write_file(dir / "rmse_surface.json", rmse_surface_to_json(surface) + "\n");
    std::ofstream csv(dir / "rmse_surface.csv", std::ios::binary);
    write_rmse_surface_csv(surface, csv);
  } else if (name == "crlb-surface") {
    const CrlbGrid grid = crlb_surface(rc.net, rc.grid_spacing);
    nlohmann::ordered_json j;
    j["min_value"] = grid.min_value;
    j["min_at"] = {grid.min_ix * grid.spacing, grid.min_iy * grid.spacing};
    write_file(dir / "crlb.json", j.dump(2) + "\n");
    std::ofstream csv(dir / "crlb.csv", std::ios::binary);
    write_crlb_csv(grid, csv);
  } else if (name == "scaling") {
    const ScalingReport report = run_scaling_check(rc.seed, rc.trials);
    write_file(dir / "scaling.json", scaling_report_to_json(report) + "\n");
    if (!report.conclusive)
      std::cout << "scaling check inconclusive: " << report.detail << "\n";
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  nlohmann::ordered_json manifest;
  manifest["experiment"] = name;
  manifest["base_seed"] = rc.seed;
  manifest["trials"] = rc.trials;
  manifest["config"] = echo_run_config(rc);
  manifest["wall_seconds"] = wall;
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  std::cout << "experiment " << name << " done in " << wall << " s, artifacts in "
            << dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Range-based sensor localization under mixed LOS/NLOS conditions"};
  app.require_subcommand(1);

  std::string config_path;
  struct Sub {
    CLI::App* cmd = nullptr;
    KeyOptions keys;
  };
  std::map<std::string, Sub> subs;
  for (const char* name : {"deploy", "measure", "localize", "experiment", "crlb"}) {
    Sub& sub = subs[name];
    sub.cmd = app.add_subcommand(name);
    sub.cmd->add_option("--config", config_path, "key=value config file");
    sub.keys.attach(sub.cmd);
  }
  subs["deploy"].cmd->description("generate a random deployment and write topology.json");
  subs["measure"].cmd->description("deploy and write noisy range measurements");
  subs["localize"].cmd->description("run localization trials and write estimates");
  subs["experiment"].cmd->description("run a named experiment (table1, table2, cdf, rmse-surface, crlb-surface, scaling)");
  subs["crlb"].cmd->description("evaluate the position-error lower-bound surface");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    for (auto& [name, sub] : subs) {
      if (!sub.cmd->parsed()) continue;
      if (name == "deploy") return cmd_deploy(resolve(config_path, sub.keys, false));
      if (name == "measure") return cmd_measure(resolve(config_path, sub.keys, false));
      if (name == "localize") return cmd_localize(resolve(config_path, sub.keys, false));
      if (name == "experiment") {
        const RunConfig rc = resolve(config_path, sub.keys, true);
        return run_experiment(rc, rc.experiment);
      }
      if (name == "crlb") {
        RunConfig rc = resolve(config_path, sub.keys, false);
        return run_experiment(rc, "crlb-surface");
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
