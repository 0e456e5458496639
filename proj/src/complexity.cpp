#include "mlnsocp/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

namespace mlnsocp {

ComplexityReport complexity_budget_check(std::span<const SolveSample> samples,
                                         double budget_exponent) {
  ComplexityReport rep;
  rep.budget = budget_exponent;

  std::map<int, std::vector<double>> by_p;
  for (const SolveSample& s : samples) by_p[s.p_i].push_back(s.wall_seconds);

  std::size_t min_group = std::numeric_limits<std::size_t>::max();
  for (auto& [p, times] : by_p) min_group = std::min(min_group, times.size());
  if (by_p.size() < 4 || min_group < 20) {
    rep.conclusive = false;
    std::ostringstream msg;
    msg << "inconclusive: need >= 4 distinct p_i with >= 20 solves each, got "
        << by_p.size() << " groups, smallest " << (by_p.empty() ? 0 : min_group);
    rep.detail = msg.str();
    return rep;
  }

  std::vector<std::pair<double, double>> pts;  // (log p, log median wall)
  for (auto& [p, times] : by_p) {
    std::sort(times.begin(), times.end());
    const double median = times.size() % 2 == 1
                              ? times[times.size() / 2]
                              : 0.5 * (times[times.size() / 2 - 1] + times[times.size() / 2]);
    if (!(median > 0.0)) {
      rep.conclusive = false;
      rep.detail = "inconclusive: non-positive median wall time";
      return rep;
    }
    pts.emplace_back(std::log(static_cast<double>(p)), std::log(median));
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (auto [lx, ly] : pts) {
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(pts.size());
  rep.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  rep.conclusive = true;
  rep.pass = rep.exponent <= budget_exponent;

  std::ostringstream msg;
  msg << "fitted wall-time exponent " << rep.exponent << " over " << pts.size()
      << " p_i groups (budget " << budget_exponent << ")";
  rep.detail = msg.str();
  return rep;
}

}  // namespace mlnsocp
