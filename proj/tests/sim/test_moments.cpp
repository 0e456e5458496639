#include <doctest.h>

#include <cmath>
#include <vector>

#include "mlnsocp/measurement.hpp"

using namespace mlnsocp;

namespace {
struct Stats {
  double mean = 0.0;
  double stddev = 0.0;
};

Stats stats_of(const std::vector<double>& xs) {
  Stats s;
  for (double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - s.mean) * (x - s.mean);
  s.stddev = std::sqrt(var / static_cast<double>(xs.size() - 1));
  return s;
}
}  // namespace

TEST_CASE("LOS sample moments match the noise model") {
  const Edge e{0, 1, LinkKind::Los, 10.0};
  const int n = 100000;
  std::vector<double> raw;
  raw.reserve(n);
  Rng rng(123);
  for (int i = 0; i < n; ++i) raw.push_back(sample_los(e, 0.1, rng).raw);
  const Stats s = stats_of(raw);
  const double se = 1.0 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(s.mean - 10.0) <= 3.0 * se);
  CHECK(std::abs(s.stddev - 1.0) <= 0.03);
}

TEST_CASE("NLOS bias moments match the exponential model") {
  const Edge e{0, 1, LinkKind::Nlos, 10.0};
  const int n = 100000;
  std::vector<double> bias, expo;
  bias.reserve(n);
  expo.reserve(n);
  Rng noisy(7), pure(8);
  for (int i = 0; i < n; ++i) {
    bias.push_back(sample_nlos(e, 0.1, 0.06, noisy).raw - 10.0);
    expo.push_back(sample_nlos(e, 0.0, 0.06, pure).raw - 10.0);  // exponential part alone
  }
  const Stats sb = stats_of(bias);
  const double se = std::sqrt((0.6 * 0.6 + 1.0) / static_cast<double>(n));
  CHECK(std::abs(sb.mean - 0.6) <= 3.0 * se);
  const Stats sx = stats_of(expo);
  CHECK(std::abs(sx.stddev - 0.6) <= 0.05 * 0.6);
}

TEST_CASE("bias-corrected ranges are unbiased for both link kinds") {
  const Edge los{0, 1, LinkKind::Los, 10.0};
  const Edge nlos{0, 1, LinkKind::Nlos, 10.0};
  const int n = 100000;
  std::vector<double> c_los, c_nlos;
  Rng r1(21), r2(22);
  for (int i = 0; i < n; ++i) {
    c_los.push_back(sample_los(los, 0.1, r1).corrected);
    c_nlos.push_back(sample_nlos(nlos, 0.1, 0.06, r2).corrected);
  }
  const Stats sl = stats_of(c_los);
  const Stats sn = stats_of(c_nlos);
  CHECK(std::abs(sl.mean - 10.0) <= 3.0 * sl.stddev / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(sn.mean - 10.0) <= 3.0 * sn.stddev / std::sqrt(static_cast<double>(n)));
}
