#include "mlnsocp/net_model.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <nlohmann/json.hpp>

#include "mlnsocp/errors.hpp"
#include "mlnsocp/rng.hpp"

namespace mlnsocp {

int NetworkConfig::anchor_count() const {
  int k = static_cast<int>(std::lround(anchor_fraction * node_count));
  if (k == 0 && anchor_fraction > 0.0 && node_count > 0) k = 1;
  return std::min(k, node_count);
}

void NetworkConfig::validate() const {
  if (dimension != 2 && dimension != 3)
    throw ConfigError("dimension d must be 2 or 3");
  if (!(side > 0.0)) throw ConfigError("side length N_d must be positive");
  if (node_count <= 0) throw ConfigError("node count must be positive");
  if (anchor_fraction < 0.0 || anchor_fraction > 1.0)
    throw ConfigError("anchor fraction p must lie in [0,1]");
  if (!(range > 0.0)) throw ConfigError("radio range R must be positive");
  if (los_probability < 0.0 || los_probability > 1.0)
    throw ConfigError("LOS probability g must lie in [0,1]");
  if (eta_los < 0.0) throw ConfigError("eta_l must be non-negative");
  if (eta_nlos < 0.0) throw ConfigError("eta_n must be non-negative");
  if (placement == AnchorPlacement::Boundary && dimension != 2)
    throw ConfigError("boundary anchor placement is defined for d = 2 only");
  if (max_anchors < 0) throw ConfigError("max_anchors must be non-negative");
}

int Topology::find_edge(int a, int b) const {
  const int r = std::min(a, b), t = std::max(a, b);
  auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(r, t),
                             [](const Edge& e, const std::pair<int, int>& key) {
                               return e.r < key.first || (e.r == key.first && e.t < key.second);
                             });
  if (it == edges.end() || it->r != r || it->t != t) return -1;
  return static_cast<int>(it - edges.begin());
}

namespace {

// point on the square perimeter at arc length s from (0,0), walking
// (0,0) -> (L,0) -> (L,L) -> (0,L) -> (0,0)
Position perimeter_point(double side, double s) {
  const double L = side;
  s = std::fmod(s, 4.0 * L);
  if (s < L) return make_position(s, 0.0);
  if (s < 2.0 * L) return make_position(L, s - L);
  if (s < 3.0 * L) return make_position(3.0 * L - s, L);
  return make_position(0.0, 4.0 * L - s);
}

Position sample_position(const NetworkConfig& config, std::uint64_t seed, int node_id) {
  Rng rng(derive_seed(seed, stream::kNodePosition, node_id));
  Position p(config.dimension);
  for (int a = 0; a < config.dimension; ++a) p[a] = rng.uniform(0.0, config.side);
  return p;
}

}  // namespace

Topology deploy_uniform(const NetworkConfig& config, std::uint64_t seed) {
  config.validate();
  const int anchors = config.anchor_count();
  const int unknowns = config.node_count - anchors;
  if (anchors == 0 && unknowns > 0)
    throw ConfigError("zero anchors requested for a deployment with unknown nodes");

  Topology topo;
  topo.dimension = config.dimension;
  topo.side = config.side;
  topo.unknown_count = unknowns;
  topo.positions.reserve(static_cast<std::size_t>(config.node_count));

  // Draw ids 0..anchors-1 feed the anchor positions, the rest the unknowns;
  // the topology stores unknowns first.
  for (int i = 0; i < unknowns; ++i)
    topo.positions.push_back(sample_position(config, seed, anchors + i));
  if (config.placement == AnchorPlacement::Boundary) {
    const double step = 4.0 * config.side / anchors;
    for (int k = 0; k < anchors; ++k)
      topo.positions.push_back(perimeter_point(config.side, k * step));
  } else {
    for (int k = 0; k < anchors; ++k)
      topo.positions.push_back(sample_position(config, seed, k));
  }

  // Edge existence is gated on the true (noiseless) distance.
  const int n = topo.node_count();
  for (int r = 0; r < n; ++r) {
    for (int t = r + 1; t < n; ++t) {
      const double d = distance(topo.positions[r], topo.positions[t]);
      if (d > config.range) continue;
      Rng rng(derive_seed(seed, stream::kEdgeKind, r, t));
      Edge e;
      e.r = r;
      e.t = t;
      e.kind = rng.bernoulli(config.los_probability) ? LinkKind::Los : LinkKind::Nlos;
      e.true_distance = d;
      topo.edges.push_back(e);
    }
  }
  return topo;
}

std::vector<std::pair<int, Edge>> neighbor_anchors(const Topology& topology, int r) {
  if (r < 0 || r >= topology.node_count())
    throw UsageError("node index out of range");
  if (topology.is_anchor(r))
    throw UsageError("neighbor_anchors expects an unknown-node index");
  std::vector<std::pair<int, Edge>> out;
  for (const Edge& e : topology.edges) {
    if (e.r == r && topology.is_anchor(e.t)) out.emplace_back(e.t, e);
    else if (e.t == r && topology.is_anchor(e.r)) out.emplace_back(e.r, e);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::string topology_to_json(const Topology& topology) {
  nlohmann::ordered_json doc;
  doc["dimension"] = topology.dimension;
  doc["side"] = topology.side;
  doc["nodes"] = nlohmann::ordered_json::array();
  for (int i = 0; i < topology.node_count(); ++i) {
    nlohmann::ordered_json node;
    node["id"] = i;
    node["role"] = topology.is_anchor(i) ? "anchor" : "unknown";
    node["coords"] = std::vector<double>(topology.positions[i].begin(), topology.positions[i].end());
    doc["nodes"].push_back(node);
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const Edge& e : topology.edges) {
    nlohmann::ordered_json edge;
    edge["r"] = e.r;
    edge["t"] = e.t;
    edge["kind"] = e.kind == LinkKind::Los ? "los" : "nlos";
    edge["true_distance"] = e.true_distance;
    doc["edges"].push_back(edge);
  }
  return doc.dump(2);
}

Topology topology_from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  Topology topo;
  topo.dimension = doc.at("dimension").get<int>();
  topo.side = doc.at("side").get<double>();
  int unknowns = 0;
  for (const auto& node : doc.at("nodes")) {
    const auto coords = node.at("coords").get<std::vector<double>>();
    Position p(static_cast<Eigen::Index>(coords.size()));
    for (std::size_t a = 0; a < coords.size(); ++a) p[static_cast<Eigen::Index>(a)] = coords[a];
    topo.positions.push_back(p);
    if (node.at("role").get<std::string>() == "unknown") ++unknowns;
  }
  topo.unknown_count = unknowns;
  for (const auto& edge : doc.at("edges")) {
    Edge e;
    e.r = edge.at("r").get<int>();
    e.t = edge.at("t").get<int>();
    e.kind = edge.at("kind").get<std::string>() == "los" ? LinkKind::Los : LinkKind::Nlos;
    e.true_distance = edge.at("true_distance").get<double>();
    topo.edges.push_back(e);
  }
  return topo;
}

void write_topology(const Topology& topology, std::ostream& out) {
  out << topology_to_json(topology) << "\n";
}

}  // namespace mlnsocp
