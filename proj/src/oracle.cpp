#include "mlnsocp/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "mlnsocp/errors.hpp"

namespace mlnsocp {

double range_objective(std::span<const RangeObservation> obs, const Position& x,
                       RangeLoss loss) {
  double f = 0.0;
  for (const RangeObservation& o : obs) {
    double r = distance(x, o.anchor) - o.distance;
    if (loss == RangeLoss::Relaxed) r = std::max(0.0, r);
    f += o.weight * r * r;
  }
  return f;
}

Position oracle_localize(std::span<const RangeObservation> obs, const Bounds2& bounds,
                         double resolution, RangeLoss loss) {
  if (!(resolution > 0.0)) throw InputError("grid resolution must be positive");
  if (!(bounds.x_max >= bounds.x_min) || !(bounds.y_max >= bounds.y_min) ||
      !std::isfinite(bounds.x_min) || !std::isfinite(bounds.x_max) ||
      !std::isfinite(bounds.y_min) || !std::isfinite(bounds.y_max))
    throw InputError("grid bounds must be finite and ordered");

  auto scan = [&](double x_lo, double x_hi, double y_lo, double y_hi, double step) {
    Position best = make_position(x_lo, y_lo);
    double best_f = range_objective(obs, best, loss);
    const int ny = static_cast<int>(std::floor((y_hi - y_lo) / step)) + 1;
    const int nx = static_cast<int>(std::floor((x_hi - x_lo) / step)) + 1;
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < nx; ++ix) {
        const Position p = make_position(x_lo + ix * step, y_lo + iy * step);
        const double f = range_objective(obs, p, loss);
        if (f < best_f) {
          best_f = f;
          best = p;
        }
      }
    }
    return best;
  };

  Position best = scan(bounds.x_min, bounds.x_max, bounds.y_min, bounds.y_max, resolution);
  double step = resolution;
  for (int level = 0; level < 3; ++level) {
    const double window = step;
    step /= 10.0;
    best = scan(std::max(bounds.x_min, best[0] - window), std::min(bounds.x_max, best[0] + window),
                std::max(bounds.y_min, best[1] - window), std::min(bounds.y_max, best[1] + window),
                step);
  }
  return best;
}

}  // namespace mlnsocp
