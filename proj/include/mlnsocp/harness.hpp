#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mlnsocp/conic.hpp"
#include "mlnsocp/net_model.hpp"
#include "mlnsocp/socp_solver.hpp"

namespace mlnsocp {

const char* to_string(Method method);
Method method_from_string(const std::string& name);

struct NodeResult {
  int node = 0;
  double true_x = 0.0, true_y = 0.0;
  double est_x = 0.0, est_y = 0.0;
  double error = 0.0;  // Euclidean distance between actual and estimated
  int p_i = 0;
  SolveStatus status = SolveStatus::NumericalFailure;
  int iterations = 0;
};

struct TrialResult {
  std::uint64_t seed = 0;
  Method method = Method::MlnSocp;
  std::vector<NodeResult> nodes;  // one per localizable unknown node
  int unlocalizable = 0;          // unknowns with p_i = 0, excluded
  int solver_failures = 0;
  bool empty() const { return nodes.empty(); }
};

// Deploys, measures, and localizes every unknown node with at least one
// neighbouring anchor, each against its own anchors only. The trial seed
// splits into a deployment substream and a measurement substream.
TrialResult run_trial(const NetworkConfig& config, std::uint64_t seed, Method method);

struct RawRecord {
  int trial = 0;
  int node = 0;
  int p_i = 0;
  double error = 0.0;
};

struct ExperimentCell {
  std::string method;
  std::vector<std::pair<std::string, double>> params;  // swept parameters
  std::vector<RawRecord> raw;  // trial-major, node-minor order
  int trials = 0;
  int unlocalizable = 0;
  int solver_failures = 0;

  double mean_error() const;
  double std_error() const;
};

struct ExperimentReport {
  std::string name;
  std::uint64_t base_seed = 0;
  int trials_per_cell = 0;
  std::vector<ExperimentCell> cells;

  const ExperimentCell* find(const std::string& method,
                             std::span<const std::pair<std::string, double>> params) const;
};

// Trial k of cell c uses seed derive_seed(base_seed, stream::kCell, c, k).
// Cells run sequentially; trials of one cell run concurrently and are
// aggregated in trial order.

// methods x R in {sqrt(2) N_d, N_d} x {(N_d, eta_l, eta_n)} conditions at
// p = 0.3, g = 0.7, node count 100
ExperimentReport run_table1(std::uint64_t base_seed, int trials);

// methods x g in {0.95,0.7,0.4,0.1} x node count in {50..300} at p = 0.3,
// R = N_d = 40, eta = (0.1, 0.06)
ExperimentReport run_table2(std::uint64_t base_seed, int trials);

// pooled per-node errors per (method, anchor fraction)
ExperimentReport run_cdf(std::uint64_t base_seed, int trials, std::span<const double> p_values);

struct RmseSurface {
  double spacing = 1.0;
  double side = 0.0;
  int points_per_axis = 0;
  int trials = 0;
  std::vector<Position> anchors;
  std::vector<double> mln;  // row-major RMSE per grid point
  std::vector<double> dsocp;
  double mln_min = 0.0, dsocp_min = 0.0;
  int mln_min_ix = 0, mln_min_iy = 0;
  int dsocp_min_ix = 0, dsocp_min_iy = 0;
};

// Places a probe node at every grid point of the boundary-anchor
// configuration and runs `trials` measurement realizations (link states
// redrawn per realization); both methods see the same measurements.
RmseSurface run_rmse_surface(const NetworkConfig& config, std::uint64_t base_seed,
                             int trials, double spacing = 1.0);

struct ScalingPoint {
  double value = 0.0;  // swept parameter (R or N_d or anchor count)
  double mean_error = 0.0;
  std::size_t samples = 0;
};

struct ScalingReport {
  bool conclusive = false;
  double exponent = 0.0;      // slope of log pooled mean error vs log R
  double exponent_mln = 0.0;  // per-method slopes
  double exponent_dsocp = 0.0;
  double fit_r2 = 0.0;
  std::vector<ScalingPoint> range_sweep;        // pooled over both methods
  std::vector<ScalingPoint> range_sweep_mln;
  std::vector<ScalingPoint> range_sweep_dsocp;
  std::vector<ScalingPoint> side_sweep;     // fixed anchor count
  std::vector<ScalingPoint> anchor_sweep;   // base and quadrupled anchors
  std::string detail;
};

// Error-vs-range fit and the two monotonicity probes at a fixed anchor
// count (defaults documented in the .cpp). Noise scales are overridable so
// degenerate sweeps can be exercised.
ScalingReport run_scaling_check(std::uint64_t base_seed, int trials,
                                double eta_l = 0.1, double eta_n = 0.06);

// number of intervals in the shared CDF evaluation grid
inline constexpr int kCdfLevels = 200;

// evenly spaced error levels from 0 to the largest pooled error
std::vector<double> cdf_levels(const ExperimentReport& report);

std::string report_to_json(const ExperimentReport& report);
void write_raw_errors_csv(const ExperimentReport& report, std::ostream& out);
void write_cdf_csv(const ExperimentReport& report, std::ostream& out);
std::string rmse_surface_to_json(const RmseSurface& surface);
void write_rmse_surface_csv(const RmseSurface& surface, std::ostream& out);
std::string scaling_report_to_json(const ScalingReport& report);

// deterministic helper: runs fn(0..n-1) on a small thread pool, results
// must be written to per-index slots
void parallel_for_index(int n, const std::function<void(int)>& fn);

}  // namespace mlnsocp
