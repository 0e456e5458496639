#pragma once

#include <Eigen/Core>
#include <vector>

namespace mlnsocp {

// Point in R^d, d in {2, 3}. Fixed-capacity vector, no heap allocation.
using Position = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;

inline Position make_position(double x, double y) {
  Position p(2);
  p << x, y;
  return p;
}

inline Position make_position(double x, double y, double z) {
  Position p(3);
  p << x, y, z;
  return p;
}

inline double distance(const Position& a, const Position& b) {
  return (a - b).norm();
}

// Convex hull of 2-D points (Andrew monotone chain), counter-clockwise,
// first point repeated nowhere. Collinear inputs yield the two extremes.
std::vector<Position> convex_hull_2d(const std::vector<Position>& points);

// true iff p is inside or on the hull polygon (CCW order), with slack tol
bool point_in_hull_2d(const std::vector<Position>& hull, const Position& p,
                      double tol = 1e-12);

// convenience: hull of `points` contains p
bool in_convex_hull_2d(const std::vector<Position>& points, const Position& p,
                       double tol = 1e-12);

}  // namespace mlnsocp
