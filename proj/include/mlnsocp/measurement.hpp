#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "mlnsocp/net_model.hpp"
#include "mlnsocp/rng.hpp"

namespace mlnsocp {

// Floor applied to a corrected range that comes out non-positive, so the
// variance weights stay finite.
inline constexpr double kRangeFloor = 1e-3;

// One noisy range observation for an edge.
//
// LOS:  raw = d + w,            w ~ N(0, (eta_l*d)^2), corrected = raw, mu = 0
// NLOS: raw = d + o + w,        o ~ Exp(mean mu), mu = eta_n*d,
//       corrected = raw - mu (bias removed with the known NLOS state)
//
// sigma_sq and gamma_sq are the estimator-side variance models evaluated at
// the corrected range: sigma^2 = eta_l^2 c^2, gamma^2 = (eta_l^2+eta_n^2) c^2.
// gamma_sq is recorded for NLOS links only.
struct Measurement {
  int r = 0;
  int t = 0;
  LinkKind kind = LinkKind::Los;
  double raw = 0.0;
  double corrected = 0.0;
  double mu = 0.0;
  double sigma_sq = 0.0;
  std::optional<double> gamma_sq;
  bool floored = false;
};

struct MeasurementSet {
  std::uint64_t seed = 0;
  NetworkConfig config;
  std::vector<Measurement> values;  // aligned with Topology::edges
  int floored_count = 0;

  const Measurement& at(const Topology& topology, int a, int b) const;
};

Measurement sample_los(const Edge& edge, double eta_l, Rng& rng);
Measurement sample_nlos(const Edge& edge, double eta_l, double eta_n, Rng& rng);

// One measurement per topology edge, substream per edge.
MeasurementSet measure_all(const Topology& topology, const NetworkConfig& config,
                           std::uint64_t seed);

// Eq-6 cone coefficients evaluated at the corrected range: first the LOS
// form sqrt(g)/ (eta_l c), then the NLOS form sqrt(1-g)/(sqrt(eta_l^2+eta_n^2) c).
struct WeightPair {
  double los = 0.0;
  double nlos = 0.0;
};
WeightPair estimator_weights(const Measurement& m, double g, double eta_l, double eta_n);

// columns: r,t,kind,raw,corrected,mu,sigma_sq,gamma_sq (empty for LOS)
void write_measurements_csv(const MeasurementSet& set, std::ostream& out);

}  // namespace mlnsocp
