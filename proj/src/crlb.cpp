#include "mlnsocp/crlb.hpp"

#include <Eigen/Dense>
#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "mlnsocp/errors.hpp"

namespace mlnsocp {

namespace {
constexpr double kCoincidenceTol = 1e-12;
}

Eigen::MatrixXd fim(const Position& x, std::span<const Position> anchors,
                    const LinkParams& params) {
  const int d = static_cast<int>(x.size());
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(d, d);
  const double g = params.los_probability;
  const double el2 = params.eta_los * params.eta_los;
  const double en2 = params.eta_nlos * params.eta_nlos;
  const double lambda = g / el2 + (1.0 - g) / (el2 + en2);
  for (const Position& a : anchors) {
    const double dist = distance(x, a);
    if (dist < kCoincidenceTol)
      throw InputError("query point coincides with an anchor (singular direction)");
    const Eigen::VectorXd u = (x - a) / dist;
    F += lambda * (u * u.transpose());
  }
  return F;
}

double crlb_at(const Position& x, std::span<const Position> anchors,
               const LinkParams& params) {
  for (const Position& a : anchors)
    if (distance(x, a) < kCoincidenceTol) return std::numeric_limits<double>::infinity();
  const Eigen::MatrixXd F = fim(x, anchors, params);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(F);
  if (!lu.isInvertible()) return std::numeric_limits<double>::infinity();
  return std::sqrt(lu.inverse().trace());
}

double CrlbGrid::at(int ix, int iy) const {
  return values.at(static_cast<std::size_t>(iy) * static_cast<std::size_t>(points_per_axis) +
                   static_cast<std::size_t>(ix));
}

CrlbGrid crlb_surface(const NetworkConfig& config, double grid_spacing) {
  config.validate();
  if (config.placement != AnchorPlacement::Boundary)
    throw ConfigError("crlb surfaces use boundary anchor placement");
  if (!(grid_spacing > 0.0)) throw ConfigError("grid spacing must be positive");

  CrlbGrid grid;
  grid.spacing = grid_spacing;
  grid.side = config.side;
  grid.params = {config.eta_los, config.eta_nlos, config.los_probability};

  // anchor ring only; no unknowns are deployed for the bound
  NetworkConfig anchors_only = config;
  anchors_only.node_count = config.anchor_count();
  anchors_only.anchor_fraction = 1.0;
  const Topology topo = deploy_uniform(anchors_only, 0);
  grid.anchors = topo.positions;

  grid.points_per_axis = static_cast<int>(std::floor(config.side / grid_spacing + 0.5)) + 1;
  grid.min_value = std::numeric_limits<double>::infinity();
  std::vector<Position> in_range;
  for (int iy = 0; iy < grid.points_per_axis; ++iy) {
    for (int ix = 0; ix < grid.points_per_axis; ++ix) {
      const Position p = make_position(ix * grid_spacing, iy * grid_spacing);
      in_range.clear();
      for (const Position& a : grid.anchors)
        if (distance(p, a) <= config.range) in_range.push_back(a);
      const double v = crlb_at(p, in_range, grid.params);
      grid.values.push_back(v);
      if (v < grid.min_value) {
        grid.min_value = v;
        grid.min_ix = ix;
        grid.min_iy = iy;
      }
    }
  }
  return grid;
}

void write_crlb_csv(const CrlbGrid& grid, std::ostream& out) {
  auto fmt = [&](double v) {
    if (std::isinf(v)) {
      out << "inf";
      return;
    }
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, res.ptr - buf);
  };
  out << "x,y,crlb\n";
  for (int iy = 0; iy < grid.points_per_axis; ++iy) {
    for (int ix = 0; ix < grid.points_per_axis; ++ix) {
      fmt(ix * grid.spacing);
      out << ',';
      fmt(iy * grid.spacing);
      out << ',';
      fmt(grid.at(ix, iy));
      out << '\n';
    }
  }
}

}  // namespace mlnsocp
