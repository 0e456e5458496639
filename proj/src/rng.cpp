#include "mlnsocp/rng.hpp"

#include <cmath>

namespace mlnsocp {

double Rng::normal() {
  const double u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

double Rng::exponential(double mean) {
  return -mean * std::log(uniform01());
}

}  // namespace mlnsocp
