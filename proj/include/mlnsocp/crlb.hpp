#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <span>
#include <vector>

#include "mlnsocp/net_model.hpp"

namespace mlnsocp {

struct LinkParams {
  double eta_los = 0.1;
  double eta_nlos = 0.06;
  double los_probability = 0.7;
};

// Fisher information for range measurements to the given anchors,
//   F = sum_t lambda u_t u_t',   u_t = (x - a_t)/d_t,
//   lambda = g/eta_l^2 + (1-g)/(eta_l^2 + eta_n^2),
// the classical constant-variance range bound with the LOS/NLOS mixture
// information rate; the per-unit-length noise scales are taken at unit
// distance, so the bound carries that reference scale. Throws InputError
// when x coincides with an anchor.
Eigen::MatrixXd fim(const Position& x, std::span<const Position> anchors,
                    const LinkParams& params);

// sqrt(trace(F^-1)), the root of the bound on total position MSE in the
// reference noise scale. Returns +inf (sentinel) when F is singular or x
// sits on an anchor; such points are excluded from surfaces.
double crlb_at(const Position& x, std::span<const Position> anchors,
               const LinkParams& params);

struct CrlbGrid {
  double spacing = 1.0;
  double side = 0.0;
  int points_per_axis = 0;
  std::vector<double> values;  // row-major, index iy * points_per_axis + ix
  std::vector<Position> anchors;
  LinkParams params;
  double min_value = 0.0;
  int min_ix = 0;
  int min_iy = 0;

  double at(int ix, int iy) const;
};

// Evaluates crlb_at over the inclusive grid [0, side]^2. Anchors come from
// the config (boundary placement); only anchors within radio range of a
// grid point contribute to that point.
CrlbGrid crlb_surface(const NetworkConfig& config, double grid_spacing = 1.0);

// columns: x,y,crlb
void write_crlb_csv(const CrlbGrid& grid, std::ostream& out);

}  // namespace mlnsocp
