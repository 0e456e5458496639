#pragma once

#include <span>

#include "mlnsocp/geometry.hpp"

namespace mlnsocp {

// One weighted range target for the brute-force objective.
struct RangeObservation {
  Position anchor;
  double distance = 0.0;
  double weight = 1.0;
};

// TwoSided is the weighted least-squares objective
//     sum_k w_k (|x - a_k| - d_k)^2.
// Relaxed is its value after the distance equalities are relaxed to
// inequalities, which the per-node cone program actually minimizes:
//     sum_k w_k max(0, |x - a_k| - d_k)^2.
// The two coincide on consistent (noiseless) data.
enum class RangeLoss { TwoSided, Relaxed };

struct Bounds2 {
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
};

double range_objective(std::span<const RangeObservation> obs, const Position& x,
                       RangeLoss loss);

// Exhaustive grid scan of the objective over the bounds at the given
// resolution, then three shrinking rescans around the best cell. Ties keep
// the first (lowest y, then lowest x) grid point.
Position oracle_localize(std::span<const RangeObservation> obs, const Bounds2& bounds,
                         double resolution, RangeLoss loss = RangeLoss::TwoSided);

}  // namespace mlnsocp
