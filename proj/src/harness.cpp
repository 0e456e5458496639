#include "mlnsocp/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "mlnsocp/errors.hpp"
#include "mlnsocp/measurement.hpp"
#include "mlnsocp/rng.hpp"

namespace mlnsocp {

const char* to_string(Method method) {
  return method == Method::MlnSocp ? "mln-socp" : "d-socp";
}

Method method_from_string(const std::string& name) {
  if (name == "mln-socp") return Method::MlnSocp;
  if (name == "d-socp") return Method::DSocp;
  throw ConfigError("unknown method '" + name + "' (expected mln-socp or d-socp)");
}

void parallel_for_index(int n, const std::function<void(int)>& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int workers = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&, t]() {
      for (int i = t; i < n; i += workers) fn(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

TrialResult run_trial(const NetworkConfig& config, std::uint64_t seed, Method method) {
  config.validate();
  TrialResult trial;
  trial.seed = seed;
  trial.method = method;

  const Topology topo = deploy_uniform(config, derive_seed(seed, stream::kTrial, 0));
  const MeasurementSet mset = measure_all(topo, config, derive_seed(seed, stream::kTrial, 1));

  for (int r = 0; r < topo.unknown_count; ++r) {
    const auto nbrs = neighbor_anchors(topo, r);
    if (nbrs.empty()) {
      ++trial.unlocalizable;
      continue;
    }
    std::vector<AnchorObservation> obs;
    obs.reserve(nbrs.size());
    for (const auto& [aidx, edge] : nbrs)
      obs.push_back({topo.position(aidx), mset.at(topo, r, aidx)});

    // |P_i| bound: keep the nearest measured ranges (ties by anchor index)
    if (config.max_anchors > 0 && static_cast<int>(obs.size()) > config.max_anchors) {
      std::stable_sort(obs.begin(), obs.end(),
                       [](const AnchorObservation& a, const AnchorObservation& b) {
                         return a.meas.corrected < b.meas.corrected;
                       });
      obs.resize(static_cast<std::size_t>(config.max_anchors));
    }

    const ConicProgram prog = build_node_problem(obs, config.los_probability, method);
    const ConicSolution sol = solve(prog);

    NodeResult res;
    res.node = r;
    res.true_x = topo.position(r)[0];
    res.true_y = topo.position(r)[1];
    const Position est = extract_position(prog, sol.x);
    res.est_x = est[0];
    res.est_y = est[1];
    res.error = distance(est, topo.position(r));
    res.p_i = static_cast<int>(obs.size());
    res.status = sol.status;
    res.iterations = sol.iterations;
    if (sol.status == SolveStatus::NumericalFailure) ++trial.solver_failures;
    trial.nodes.push_back(res);
  }
  return trial;
}

double ExperimentCell::mean_error() const {
  if (raw.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (const RawRecord& r : raw) s += r.error;
  return s / static_cast<double>(raw.size());
}

double ExperimentCell::std_error() const {
  if (raw.size() < 2) return 0.0;
  const double m = mean_error();
  double s = 0.0;
  for (const RawRecord& r : raw) s += (r.error - m) * (r.error - m);
  return std::sqrt(s / static_cast<double>(raw.size() - 1));
}

const ExperimentCell* ExperimentReport::find(
    const std::string& method, std::span<const std::pair<std::string, double>> params) const {
  for (const ExperimentCell& cell : cells) {
    if (cell.method != method) continue;
    bool match = true;
    for (const auto& want : params) {
      bool found = false;
      for (const auto& have : cell.params)
        if (have.first == want.first && have.second == want.second) {
          found = true;
          break;
        }
      if (!found) {
        match = false;
        break;
      }
    }
    if (match) return &cell;
  }
  return nullptr;
}

namespace {

// runs one cell: `trials` trials in parallel, aggregation in trial order
ExperimentCell run_cell(const NetworkConfig& config, Method method,
                        std::uint64_t base_seed, int cell_index, int trials,
                        std::vector<std::pair<std::string, double>> params) {
  ExperimentCell cell;
  cell.method = to_string(method);
  cell.params = std::move(params);
  cell.trials = trials;

  std::vector<TrialResult> results(static_cast<std::size_t>(trials));
  parallel_for_index(trials, [&](int k) {
    const std::uint64_t seed = derive_seed(base_seed, stream::kCell, cell_index, k);
    results[static_cast<std::size_t>(k)] = run_trial(config, seed, method);
  });

  for (int k = 0; k < trials; ++k) {
    const TrialResult& t = results[static_cast<std::size_t>(k)];
    cell.unlocalizable += t.unlocalizable;
    cell.solver_failures += t.solver_failures;
    for (const NodeResult& n : t.nodes) {
      if (n.status == SolveStatus::NumericalFailure) continue;
      cell.raw.push_back({k, n.node, n.p_i, n.error});
    }
  }
  return cell;
}

}  // namespace

ExperimentReport run_table1(std::uint64_t base_seed, int trials) {
  if (trials < 30) throw InputError("table sweeps need at least 30 trials per cell");
  ExperimentReport report;
  report.name = "table1";
  report.base_seed = base_seed;
  report.trials_per_cell = trials;

  struct Condition {
    double side, eta_l, eta_n;
  };
  const Condition conditions[] = {
      {40.0, 0.1, 0.06}, {80.0, 0.1, 0.06}, {40.0, 0.2, 0.15}, {40.0, 0.3, 0.25}};
  const double range_factors[] = {std::sqrt(2.0), 1.0};

  // Both methods run on the same deployments and measurements: the seed
  // stream is keyed by the swept condition, not the method.
  int condition = 0;
  for (double rf : range_factors) {
    for (const Condition& cond : conditions) {
      NetworkConfig config;
      config.side = cond.side;
      config.node_count = 100;
      config.anchor_fraction = 0.3;
      config.range = rf * cond.side;
      config.los_probability = 0.7;
      config.eta_los = cond.eta_l;
      config.eta_nlos = cond.eta_n;
      for (Method method : {Method::DSocp, Method::MlnSocp})
        report.cells.push_back(run_cell(config, method, base_seed, condition, trials,
                                        {{"range_factor", rf},
                                         {"side", cond.side},
                                         {"eta_l", cond.eta_l},
                                         {"eta_n", cond.eta_n}}));
      ++condition;
    }
  }
  return report;
}

ExperimentReport run_table2(std::uint64_t base_seed, int trials) {
  if (trials < 30) throw InputError("table sweeps need at least 30 trials per cell");
  ExperimentReport report;
  report.name = "table2";
  report.base_seed = base_seed;
  report.trials_per_cell = trials;

  const double g_values[] = {0.95, 0.7, 0.4, 0.1};
  const int node_counts[] = {50, 100, 150, 200, 250, 300};

  int condition = 0;
  for (double g : g_values) {
    for (int nodes : node_counts) {
      NetworkConfig config;
      config.side = 40.0;
      config.node_count = nodes;
      config.anchor_fraction = 0.3;
      config.range = 40.0;
      config.los_probability = g;
      config.eta_los = 0.1;
      config.eta_nlos = 0.06;
      for (Method method : {Method::DSocp, Method::MlnSocp})
        report.cells.push_back(run_cell(config, method, base_seed, condition, trials,
                                        {{"g", g}, {"nodes", static_cast<double>(nodes)}}));
      ++condition;
    }
  }
  return report;
}

ExperimentReport run_cdf(std::uint64_t base_seed, int trials, std::span<const double> p_values) {
  for (double p : p_values)
    if (!(p > 0.0 && p <= 1.0)) throw InputError("CDF anchor fractions must lie in (0,1]");
  ExperimentReport report;
  report.name = "cdf";
  report.base_seed = base_seed;
  report.trials_per_cell = trials;

  int condition = 0;
  for (double p : p_values) {
    NetworkConfig config;
    config.side = 40.0;
    config.node_count = 100;
    config.anchor_fraction = p;
    config.range = 40.0;
    config.los_probability = 0.7;
    config.eta_los = 0.1;
    config.eta_nlos = 0.06;
    for (Method method : {Method::DSocp, Method::MlnSocp})
      report.cells.push_back(run_cell(config, method, base_seed, condition, trials, {{"p", p}}));
    ++condition;
  }
  return report;
}

RmseSurface run_rmse_surface(const NetworkConfig& config, std::uint64_t base_seed,
                             int trials, double spacing) {
  config.validate();
  if (config.placement != AnchorPlacement::Boundary)
    throw ConfigError("the RMSE surface uses boundary anchor placement");
  if (trials < 1) throw InputError("at least one trial per grid point is required");

  RmseSurface surface;
  surface.spacing = spacing;
  surface.side = config.side;
  surface.trials = trials;
  surface.points_per_axis = static_cast<int>(std::floor(config.side / spacing + 0.5)) + 1;

  NetworkConfig anchors_only = config;
  anchors_only.node_count = config.anchor_count();
  anchors_only.anchor_fraction = 1.0;
  surface.anchors = deploy_uniform(anchors_only, 0).positions;

  const int n = surface.points_per_axis;
  surface.mln.assign(static_cast<std::size_t>(n) * n, 0.0);
  surface.dsocp.assign(static_cast<std::size_t>(n) * n, 0.0);

  parallel_for_index(n * n, [&](int pi) {
    const int iy = pi / n, ix = pi % n;
    const Position probe = make_position(ix * spacing, iy * spacing);

    double sq_mln = 0.0, sq_d = 0.0;
    for (int k = 0; k < trials; ++k) {
      // one realization: redraw link states, then ranges; both methods see
      // the same draw
      Rng rng(derive_seed(base_seed, stream::kCell, pi, k));
      std::vector<AnchorObservation> obs;
      for (std::size_t a = 0; a < surface.anchors.size(); ++a) {
        const Position& anchor = surface.anchors[a];
        const double d = distance(probe, anchor);
        if (d > config.range) continue;
        Edge e;
        e.r = 0;
        e.t = static_cast<int>(a) + 1;
        e.kind = rng.bernoulli(config.los_probability) ? LinkKind::Los : LinkKind::Nlos;
        e.true_distance = d;
        const Measurement m = e.kind == LinkKind::Los
                                  ? sample_los(e, config.eta_los, rng)
                                  : sample_nlos(e, config.eta_los, config.eta_nlos, rng);
        obs.push_back({anchor, m});
      }
      if (obs.empty()) continue;
      for (Method method : {Method::MlnSocp, Method::DSocp}) {
        const ConicProgram prog = build_node_problem(obs, config.los_probability, method);
        const ConicSolution sol = solve(prog);
        const double err = distance(extract_position(prog, sol.x), probe);
        (method == Method::MlnSocp ? sq_mln : sq_d) += err * err;
      }
    }
    surface.mln[static_cast<std::size_t>(pi)] = std::sqrt(sq_mln / trials);
    surface.dsocp[static_cast<std::size_t>(pi)] = std::sqrt(sq_d / trials);
  });

  auto find_min = [&](const std::vector<double>& grid, double* value, int* mx, int* my) {
    *value = std::numeric_limits<double>::infinity();
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        const double v = grid[static_cast<std::size_t>(iy) * n + ix];
        if (v < *value) {
          *value = v;
          *mx = ix;
          *my = iy;
        }
      }
  };
  find_min(surface.mln, &surface.mln_min, &surface.mln_min_ix, &surface.mln_min_iy);
  find_min(surface.dsocp, &surface.dsocp_min, &surface.dsocp_min_ix, &surface.dsocp_min_iy);
  return surface;
}

ScalingReport run_scaling_check(std::uint64_t base_seed, int trials, double eta_l,
                                double eta_n) {
  if (trials < 50) throw InputError("the scaling check needs at least 50 trials per point");
  ScalingReport report;

  // Range sweep on the 100-node, 30-anchor square for both methods; the
  // smallest range still covers every node with a dozen anchors, so the
  // sweep isolates the effect of admitting ever farther, noisier links.
  // The side and anchor probes run at a fixed anchor count of 10 among 50
  // unknowns. All sweeps lift the per-node |P_i| bound.
  auto range_config = [=](double R) {
    NetworkConfig c;
    c.side = 40.0;
    c.node_count = 100;
    c.anchor_fraction = 0.3;
    c.range = R;
    c.los_probability = 0.7;
    c.eta_los = eta_l;
    c.eta_nlos = eta_n;
    c.max_anchors = 0;
    return c;
  };
  auto probe_config = [=]() {
    NetworkConfig c;
    c.side = 40.0;
    c.node_count = 60;
    c.anchor_fraction = 1.0 / 6.0;
    c.range = 40.0;
    c.los_probability = 0.7;
    c.eta_los = eta_l;
    c.eta_nlos = eta_n;
    c.max_anchors = 0;
    return c;
  };

  int cell_index = 0;
  auto sweep_point = [&](const NetworkConfig& config, Method method, double value) {
    ExperimentCell cell =
        run_cell(config, method, base_seed, cell_index++, trials, {{"value", value}});
    return ScalingPoint{value, cell.mean_error(), cell.raw.size()};
  };

  const double ranges[] = {17.0, 24.0, 33.0, 45.0, 56.0};
  for (double R : ranges) {
    const int condition = cell_index++;
    auto paired_point = [&](Method method) {
      ExperimentCell cell =
          run_cell(range_config(R), method, base_seed, condition, trials, {{"value", R}});
      return ScalingPoint{R, cell.mean_error(), cell.raw.size()};
    };
    const ScalingPoint mln = paired_point(Method::MlnSocp);
    const ScalingPoint d = paired_point(Method::DSocp);
    report.range_sweep_mln.push_back(mln);
    report.range_sweep_dsocp.push_back(d);
    const double total = mln.mean_error * static_cast<double>(mln.samples) +
                         d.mean_error * static_cast<double>(d.samples);
    const std::size_t count = mln.samples + d.samples;
    report.range_sweep.push_back({R, total / static_cast<double>(count), count});
  }

  for (double side : {40.0, 80.0}) {
    NetworkConfig c = probe_config();
    c.side = side;
    // R tracks N_d so connectivity is comparable; anchor count stays at 10
    c.range = side;
    report.side_sweep.push_back(sweep_point(c, Method::MlnSocp, side));
  }

  {
    NetworkConfig c = probe_config();  // 10 anchors, 50 unknowns
    report.anchor_sweep.push_back(sweep_point(c, Method::MlnSocp, 10.0));
    NetworkConfig q = probe_config();  // 40 anchors, 50 unknowns
    q.node_count = 90;
    q.anchor_fraction = 4.0 / 9.0;
    report.anchor_sweep.push_back(sweep_point(q, Method::MlnSocp, 40.0));
  }

  // log-log fits; a zero-noise sweep has no power law to fit (residual
  // errors come from the relaxation geometry alone)
  double max_err = 0.0;
  for (const ScalingPoint& pt : report.range_sweep) max_err = std::max(max_err, pt.mean_error);
  if ((eta_l == 0.0 && eta_n == 0.0) || max_err < 1e-6) {
    report.conclusive = false;
    report.detail = "inconclusive: zero-noise sweep, no error power law to fit";
    return report;
  }

  auto fit = [](const std::vector<ScalingPoint>& pts, double* r2) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
    const double n = static_cast<double>(pts.size());
    for (const ScalingPoint& pt : pts) {
      const double lx = std::log(pt.value), ly = std::log(pt.mean_error);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      syy += ly * ly;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (r2) {
      const double ss_tot = syy - sy * sy / n;
      const double ss_res = ss_tot - slope * (sxy - sx * sy / n);
      *r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 0.0;
    }
    return slope;
  };
  report.exponent = fit(report.range_sweep, &report.fit_r2);
  report.exponent_mln = fit(report.range_sweep_mln, nullptr);
  report.exponent_dsocp = fit(report.range_sweep_dsocp, nullptr);
  report.conclusive = report.fit_r2 >= 0.5;
  report.detail = report.conclusive
                      ? "fitted error-vs-range exponent " + std::to_string(report.exponent)
                      : "inconclusive: noise-dominated sweep (R^2 " + std::to_string(report.fit_r2) + ")";
  return report;
}

namespace {

nlohmann::ordered_json cell_to_json(const ExperimentCell& cell) {
  nlohmann::ordered_json j;
  j["method"] = cell.method;
  for (const auto& [k, v] : cell.params) j["params"][k] = v;
  j["mean_error"] = cell.mean_error();
  j["std_error"] = cell.std_error();
  j["samples"] = cell.raw.size();
  j["trials"] = cell.trials;
  j["unlocalizable"] = cell.unlocalizable;
  j["solver_failures"] = cell.solver_failures;
  return j;
}

void format_double(std::ostream& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.write(buf, res.ptr - buf);
}

}  // namespace

std::vector<double> cdf_levels(const ExperimentReport& report) {
  double max_err = 0.0;
  for (const ExperimentCell& cell : report.cells)
    for (const RawRecord& r : cell.raw) max_err = std::max(max_err, r.error);
  std::vector<double> levels;
  levels.reserve(kCdfLevels + 1);
  for (int i = 0; i <= kCdfLevels; ++i)
    levels.push_back(max_err * static_cast<double>(i) / kCdfLevels);
  return levels;
}

std::string report_to_json(const ExperimentReport& report) {
  nlohmann::ordered_json j;
  j["experiment"] = report.name;
  j["base_seed"] = report.base_seed;
  j["trials_per_cell"] = report.trials_per_cell;
  j["cells"] = nlohmann::ordered_json::array();
  for (const ExperimentCell& cell : report.cells) j["cells"].push_back(cell_to_json(cell));
  return j.dump(2);
}

void write_raw_errors_csv(const ExperimentReport& report, std::ostream& out) {
  out << "cell,method,trial,node,p_i,error\n";
  for (std::size_t c = 0; c < report.cells.size(); ++c) {
    const ExperimentCell& cell = report.cells[c];
    for (const RawRecord& r : cell.raw) {
      out << c << ',' << cell.method << ',' << r.trial << ',' << r.node << ',' << r.p_i << ',';
      format_double(out, r.error);
      out << '\n';
    }
  }
}

// Empirical CDF samples on a shared grid of kCdfLevels + 1 evenly spaced
// error levels spanning all cells, so the curves are directly comparable.
void write_cdf_csv(const ExperimentReport& report, std::ostream& out) {
  out << "cell,method,error,cdf\n";
  const std::vector<double> levels = cdf_levels(report);
  for (std::size_t c = 0; c < report.cells.size(); ++c) {
    const ExperimentCell& cell = report.cells[c];
    std::vector<double> errors;
    errors.reserve(cell.raw.size());
    for (const RawRecord& r : cell.raw) errors.push_back(r.error);
    std::sort(errors.begin(), errors.end());
    for (double level : levels) {
      const auto count = std::upper_bound(errors.begin(), errors.end(), level) - errors.begin();
      out << c << ',' << cell.method << ',';
      format_double(out, level);
      out << ',';
      format_double(out, errors.empty()
                             ? 0.0
                             : static_cast<double>(count) / static_cast<double>(errors.size()));
      out << '\n';
    }
  }
}

std::string rmse_surface_to_json(const RmseSurface& surface) {
  nlohmann::ordered_json j;
  j["spacing"] = surface.spacing;
  j["side"] = surface.side;
  j["points_per_axis"] = surface.points_per_axis;
  j["trials"] = surface.trials;
  j["mln_min"] = surface.mln_min;
  j["mln_min_at"] = {surface.mln_min_ix * surface.spacing, surface.mln_min_iy * surface.spacing};
  j["d_min"] = surface.dsocp_min;
  j["d_min_at"] = {surface.dsocp_min_ix * surface.spacing, surface.dsocp_min_iy * surface.spacing};
  return j.dump(2);
}

void write_rmse_surface_csv(const RmseSurface& surface, std::ostream& out) {
  out << "x,y,rmse_mln,rmse_d\n";
  const int n = surface.points_per_axis;
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      format_double(out, ix * surface.spacing);
      out << ',';
      format_double(out, iy * surface.spacing);
      out << ',';
      format_double(out, surface.mln[static_cast<std::size_t>(iy) * n + ix]);
      out << ',';
      format_double(out, surface.dsocp[static_cast<std::size_t>(iy) * n + ix]);
      out << '\n';
    }
  }
}

std::string scaling_report_to_json(const ScalingReport& report) {
  nlohmann::ordered_json j;
  j["conclusive"] = report.conclusive;
  j["exponent"] = report.exponent;
  j["fit_r2"] = report.fit_r2;
  j["detail"] = report.detail;
  auto sweep = [](const std::vector<ScalingPoint>& pts) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const ScalingPoint& p : pts)
      arr.push_back({{"value", p.value}, {"mean_error", p.mean_error}, {"samples", p.samples}});
    return arr;
  };
  j["exponent_mln"] = report.exponent_mln;
  j["exponent_dsocp"] = report.exponent_dsocp;
  j["range_sweep"] = sweep(report.range_sweep);
  j["range_sweep_mln"] = sweep(report.range_sweep_mln);
  j["range_sweep_dsocp"] = sweep(report.range_sweep_dsocp);
  j["side_sweep"] = sweep(report.side_sweep);
  j["anchor_sweep"] = sweep(report.anchor_sweep);
  return j.dump(2);
}

}  // namespace mlnsocp
