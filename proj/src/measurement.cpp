#include "mlnsocp/measurement.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>

#include "mlnsocp/errors.hpp"

namespace mlnsocp {

namespace {

double floored(double v, bool* hit) {
  if (v >= kRangeFloor) return v;
  *hit = true;
  return kRangeFloor;
}

void format_double(std::ostream& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.write(buf, res.ptr - buf);
}

}  // namespace

const Measurement& MeasurementSet::at(const Topology& topology, int a, int b) const {
  const int idx = topology.find_edge(a, b);
  if (idx < 0) throw UsageError("no measurement for the requested edge");
  return values.at(static_cast<std::size_t>(idx));
}

Measurement sample_los(const Edge& edge, double eta_l, Rng& rng) {
  if (edge.kind != LinkKind::Los) throw UsageError("sample_los requires a LOS edge");
  Measurement m;
  m.r = edge.r;
  m.t = edge.t;
  m.kind = LinkKind::Los;
  const double sigma_sim = eta_l * edge.true_distance;
  const double raw = edge.true_distance + (sigma_sim > 0.0 ? rng.normal(0.0, sigma_sim) : 0.0);
  m.raw = floored(raw, &m.floored);
  m.corrected = m.raw;
  m.mu = 0.0;
  m.sigma_sq = eta_l * eta_l * m.corrected * m.corrected;
  return m;
}

Measurement sample_nlos(const Edge& edge, double eta_l, double eta_n, Rng& rng) {
  if (edge.kind != LinkKind::Nlos) throw UsageError("sample_nlos requires an NLOS edge");
  Measurement m;
  m.r = edge.r;
  m.t = edge.t;
  m.kind = LinkKind::Nlos;
  // Simulation-side scales are anchored to the true distance; the bias o is
  // drawn first, then the Gaussian term, so the two parts are separable in
  // moment tests via eta_l = 0.
  m.mu = eta_n * edge.true_distance;
  const double o = m.mu > 0.0 ? rng.exponential(m.mu) : 0.0;
  const double sigma_sim = eta_l * edge.true_distance;
  const double w = sigma_sim > 0.0 ? rng.normal(0.0, sigma_sim) : 0.0;
  m.raw = floored(edge.true_distance + o + w, &m.floored);
  m.corrected = floored(m.raw - m.mu, &m.floored);
  m.sigma_sq = eta_l * eta_l * m.corrected * m.corrected;
  m.gamma_sq = (eta_l * eta_l + eta_n * eta_n) * m.corrected * m.corrected;
  return m;
}

MeasurementSet measure_all(const Topology& topology, const NetworkConfig& config,
                           std::uint64_t seed) {
  MeasurementSet set;
  set.seed = seed;
  set.config = config;
  set.values.reserve(topology.edges.size());
  for (const Edge& e : topology.edges) {
    Rng rng(derive_seed(seed, stream::kEdgeNoise, e.r, e.t));
    Measurement m = e.kind == LinkKind::Los
                        ? sample_los(e, config.eta_los, rng)
                        : sample_nlos(e, config.eta_los, config.eta_nlos, rng);
    if (m.floored) ++set.floored_count;
    set.values.push_back(m);
  }
  return set;
}

WeightPair estimator_weights(const Measurement& m, double g, double eta_l, double eta_n) {
  if (!(m.corrected > 0.0)) throw InputError("estimator weights need a positive corrected range");
  WeightPair w;
  const double sigma_sq = eta_l * eta_l * m.corrected * m.corrected;
  const double gamma_sq = (eta_l * eta_l + eta_n * eta_n) * m.corrected * m.corrected;
  w.los = sigma_sq > 0.0 ? std::sqrt(g / sigma_sq) : std::numeric_limits<double>::infinity();
  w.nlos = gamma_sq > 0.0 ? std::sqrt((1.0 - g) / gamma_sq) : std::numeric_limits<double>::infinity();
  return w;
}

void write_measurements_csv(const MeasurementSet& set, std::ostream& out) {
  out << "r,t,kind,raw,corrected,mu,sigma_sq,gamma_sq\n";
  for (const Measurement& m : set.values) {
    out << m.r << ',' << m.t << ',' << (m.kind == LinkKind::Los ? "los" : "nlos") << ',';
    format_double(out, m.raw);
    out << ',';
    format_double(out, m.corrected);
    out << ',';
    format_double(out, m.mu);
    out << ',';
    format_double(out, m.sigma_sq);
    out << ',';
    if (m.gamma_sq) format_double(out, *m.gamma_sq);
    out << '\n';
  }
}

}  // namespace mlnsocp
