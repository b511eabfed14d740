#ifndef RGH_HYPERGRAPH_HPP
#define RGH_HYPERGRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "rgh/geometry.hpp"

namespace rgh {

// Bipartite geometric graph: node points and center points, with an edge
// between node j and center c iff |nodes[j] - centers[c]| < radius (strict).
struct BipartiteGeometricGraph {
  PointSample nodes;
  PointSample centers;
  double radius;
  // One sorted, duplicate-free list of node indices per center.
  std::vector<std::vector<std::uint32_t>> adjacency;

  std::size_t node_count() const { return nodes.size(); }
  std::size_t center_count() const { return centers.size(); }
  std::size_t edge_count() const;
};

// The pure combinatorial view: node labels and hyperedge membership lists.
// One hyperedge per center; duplicates and empty hyperedges are preserved.
// All geometric information is gone.
struct Hypergraph {
  std::size_t node_count = 0;
  std::vector<std::vector<std::uint32_t>> hyperedges;

  bool operator==(const Hypergraph&) const = default;
};

// Builds the adjacency with the uniform grid (cell width = radius) or a flat
// scan when the grid would not pay off.
BipartiteGeometricGraph build_bipartite(PointSample nodes, PointSample centers,
                                        double r);

Hypergraph to_hypergraph(const BipartiteGeometricGraph& g);

// Connectivity of the bipartite graph over all node and center vertices.
// Empty and single-vertex graphs count as connected. A center with no
// members is an isolated vertex and disconnects the graph; pass
// ignore_empty_centers to compute connectivity of the subgraph without
// degree-0 centers instead.
bool is_connected(const BipartiteGeometricGraph& g,
                  bool ignore_empty_centers = false);

std::size_t component_count(const BipartiteGeometricGraph& g);

// Connectivity at radius r without materializing adjacency lists; this is
// the hot path for bisection and the theorem-validation sweeps.
bool bipartite_connected_at(const PointSample& nodes,
                            const PointSample& centers, double r);

// Text format: header "nodes=<n1> hyperedges=<n2>", then one line per
// hyperedge of comma-separated zero-based node indices (blank for empty).
std::string hypergraph_to_text(const Hypergraph& h);
Hypergraph hypergraph_from_text(const std::string& text);

nlohmann::json hypergraph_to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const nlohmann::json& j);

// Edge list CSV: header "node,center", one row per bipartite edge.
void write_edges_csv(const BipartiteGeometricGraph& g, std::ostream& out);

}  // namespace rgh

#endif
