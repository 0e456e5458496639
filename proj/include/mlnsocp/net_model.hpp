#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mlnsocp/geometry.hpp"

namespace mlnsocp {

enum class LinkKind { Los, Nlos };

enum class AnchorPlacement { RandomUniform, Boundary };

// Deployment parameters of one network instance.
struct NetworkConfig {
  int dimension = 2;       // d
  double side = 40.0;      // N_d, side length of the square region (m)
  int node_count = 100;    // total node count, anchors included
  double anchor_fraction = 0.3;  // p
  double range = 40.0;     // radio range R (m)
  double los_probability = 0.7;  // g
  double eta_los = 0.1;    // noise std per unit length
  double eta_nlos = 0.06;  // NLOS bias std per unit length
  AnchorPlacement placement = AnchorPlacement::RandomUniform;
  // per-node bound on |P_i|: a node uses at most this many of its in-range
  // anchors, preferring the nearest measured ranges; 0 means no bound
  int max_anchors = 20;

  // round(p * node_count), bumped to 1 when a positive fraction rounds
  // down to zero while unknowns remain
  int anchor_count() const;
  int unknown_count() const { return node_count - anchor_count(); }

  void validate() const;  // throws ConfigError
};

struct Edge {
  int r = 0;  // lower node index
  int t = 0;  // higher node index
  LinkKind kind = LinkKind::Los;
  double true_distance = 0.0;
};

// Immutable node/edge structure. Unknown nodes occupy indices
// [0, unknown_count), anchors [unknown_count, size). Edges are stored with
// r < t in lexicographic order, one per unordered pair in range.
struct Topology {
  int dimension = 2;
  double side = 0.0;
  int unknown_count = 0;
  std::vector<Position> positions;
  std::vector<Edge> edges;

  int node_count() const { return static_cast<int>(positions.size()); }
  int anchor_count() const { return node_count() - unknown_count; }
  bool is_anchor(int i) const { return i >= unknown_count; }
  const Position& position(int i) const { return positions.at(static_cast<std::size_t>(i)); }

  // index of edge (min(a,b), max(a,b)) in `edges`, or -1
  int find_edge(int a, int b) const;
};

// Samples node_count positions i.i.d. uniform on [0, side]^d (substream per
// node), designates anchors, and creates an edge for every pair within
// range, each labelled LOS with probability g (substream per edge).
// Boundary placement puts anchors at equal arc-length steps along the
// square perimeter starting from (0,0); unknowns stay uniform inside.
Topology deploy_uniform(const NetworkConfig& config, std::uint64_t seed);

// Anchors sharing an edge with unknown node r, ascending anchor index.
// Throws UsageError if r is an anchor.
std::vector<std::pair<int, Edge>> neighbor_anchors(const Topology& topology, int r);

std::string topology_to_json(const Topology& topology);
Topology topology_from_json(const std::string& text);
void write_topology(const Topology& topology, std::ostream& out);

}  // namespace mlnsocp
