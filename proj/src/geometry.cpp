#include "mlnsocp/geometry.hpp"

#include <algorithm>

namespace mlnsocp {

namespace {
double cross(const Position& o, const Position& a, const Position& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}
}  // namespace

std::vector<Position> convex_hull_2d(const std::vector<Position>& points) {
  std::vector<Position> pts = points;
  std::sort(pts.begin(), pts.end(), [](const Position& a, const Position& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Position& a, const Position& b) {
                          return a[0] == b[0] && a[1] == b[1];
                        }),
            pts.end());
  const int n = static_cast<int>(pts.size());
  if (n < 3) return pts;

  std::vector<Position> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (int i = n - 2, lower = k + 1; i >= 0; --i) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

bool point_in_hull_2d(const std::vector<Position>& hull, const Position& p,
                      double tol) {
  if (hull.size() < 3) return false;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Position& a = hull[i];
    const Position& b = hull[(i + 1) % hull.size()];
    if (cross(a, b, p) < -tol) return false;
  }
  return true;
}

bool in_convex_hull_2d(const std::vector<Position>& points, const Position& p,
                       double tol) {
  return point_in_hull_2d(convex_hull_2d(points), p, tol);
}

}  // namespace mlnsocp
