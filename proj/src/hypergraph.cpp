#include "rgh/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rgh/spatial_index.hpp"
#include "rgh/union_find.hpp"

namespace rgh {

std::size_t BipartiteGeometricGraph::edge_count() const {
  std::size_t m = 0;
  for (const auto& list : adjacency) m += list.size();
  return m;
}

BipartiteGeometricGraph build_bipartite(PointSample nodes, PointSample centers,
                                        double r) {
  if (nodes.dim() != centers.dim()) {
    throw std::invalid_argument("build_bipartite: dimension mismatch");
  }
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("build_bipartite: radius must be positive");
  }

  const std::size_t n1 = nodes.size();
  const std::size_t n2 = centers.size();
  std::vector<std::vector<std::uint32_t>> adjacency(n2);

  if (grid_worthwhile(nodes.dim(), n1)) {
    UniformGrid grid(nodes.data(), nodes.dim(), r);
    for (std::size_t c = 0; c < n2; ++c) {
      grid.append_neighbors_within(centers.point(c), r, adjacency[c]);
      std::sort(adjacency[c].begin(), adjacency[c].end());
    }
  } else {
    const double r2 = r * r;
    for (std::size_t c = 0; c < n2; ++c) {
      const auto q = centers.point(c);
      for (std::size_t j = 0; j < n1; ++j) {
        if (distance2(nodes.point(j), q) < r2) {
          adjacency[c].push_back(static_cast<std::uint32_t>(j));
        }
      }
    }
  }

  return BipartiteGeometricGraph{std::move(nodes), std::move(centers), r,
                                 std::move(adjacency)};
}

Hypergraph to_hypergraph(const BipartiteGeometricGraph& g) {
  return Hypergraph{g.node_count(), g.adjacency};
}

namespace {

std::size_t count_components(const BipartiteGeometricGraph& g,
                             bool ignore_empty_centers) {
  const std::size_t n1 = g.node_count();
  const std::size_t n2 = g.center_count();
  DisjointSets ds(n1 + n2);
  std::size_t skipped = 0;
  for (std::size_t c = 0; c < n2; ++c) {
    if (ignore_empty_centers && g.adjacency[c].empty()) {
      ++skipped;
      continue;
    }
    const auto v = static_cast<std::uint32_t>(n1 + c);
    for (std::uint32_t j : g.adjacency[c]) ds.unite(j, v);
  }
  return ds.component_count() - skipped;
}

}  // namespace

bool is_connected(const BipartiteGeometricGraph& g, bool ignore_empty_centers) {
  return count_components(g, ignore_empty_centers) <= 1;
}

std::size_t component_count(const BipartiteGeometricGraph& g) {
  return count_components(g, false);
}

bool bipartite_connected_at(const PointSample& nodes,
                            const PointSample& centers, double r) {
  if (nodes.dim() != centers.dim()) {
    throw std::invalid_argument("bipartite_connected_at: dimension mismatch");
  }
  const std::size_t n1 = nodes.size();
  const std::size_t n2 = centers.size();
  if (n1 + n2 <= 1) return true;
  if (n1 == 0 || n2 == 0) return false;
  if (!(r > 0.0)) return false;

  DisjointSets ds(n1 + n2);
  if (grid_worthwhile(nodes.dim(), n1)) {
    UniformGrid grid(nodes.data(), nodes.dim(), r);
    std::vector<std::uint32_t> hits;
    for (std::size_t c = 0; c < n2; ++c) {
      hits.clear();
      grid.append_neighbors_within(centers.point(c), r, hits);
      const auto v = static_cast<std::uint32_t>(n1 + c);
      for (std::uint32_t j : hits) ds.unite(j, v);
    }
  } else {
    const double r2 = r * r;
    for (std::size_t c = 0; c < n2; ++c) {
      const auto q = centers.point(c);
      const auto v = static_cast<std::uint32_t>(n1 + c);
      for (std::size_t j = 0; j < n1; ++j) {
        if (distance2(nodes.point(j), q) < r2) {
          ds.unite(static_cast<std::uint32_t>(j), v);
        }
      }
    }
  }
  return ds.component_count() == 1;
}

std::string hypergraph_to_text(const Hypergraph& h) {
  std::ostringstream out;
  out << "nodes=" << h.node_count << " hyperedges=" << h.hyperedges.size()
      << '\n';
  for (const auto& edge : h.hyperedges) {
    for (std::size_t i = 0; i < edge.size(); ++i) {
      if (i > 0) out << ',';
      out << edge[i];
    }
    out << '\n';
  }
  return out.str();
}

Hypergraph hypergraph_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) {
    throw std::invalid_argument("hypergraph_from_text: empty input");
  }
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  if (std::sscanf(header.c_str(), "nodes=%zu hyperedges=%zu", &node_count,
                  &edge_count) != 2) {
    throw std::invalid_argument("hypergraph_from_text: bad header: " + header);
  }

  Hypergraph h;
  h.node_count = node_count;
  h.hyperedges.reserve(edge_count);
  std::string line;
  while (h.hyperedges.size() < edge_count && std::getline(in, line)) {
    std::vector<std::uint32_t> edge;
    if (!line.empty()) {
      std::istringstream fields(line);
      std::string tok;
      while (std::getline(fields, tok, ',')) {
        const unsigned long v = std::stoul(tok);
        if (v >= node_count) {
          throw std::invalid_argument("hypergraph_from_text: index out of range");
        }
        edge.push_back(static_cast<std::uint32_t>(v));
      }
    }
    h.hyperedges.push_back(std::move(edge));
  }
  if (h.hyperedges.size() != edge_count) {
    throw std::invalid_argument("hypergraph_from_text: truncated input");
  }
  return h;
}

nlohmann::json hypergraph_to_json(const Hypergraph& h) {
  return nlohmann::json{{"node_count", h.node_count},
                        {"hyperedges", h.hyperedges}};
}

Hypergraph hypergraph_from_json(const nlohmann::json& j) {
  Hypergraph h;
  h.node_count = j.at("node_count").get<std::size_t>();
  h.hyperedges = j.at("hyperedges").get<std::vector<std::vector<std::uint32_t>>>();
  for (const auto& edge : h.hyperedges) {
    for (std::uint32_t v : edge) {
      if (v >= h.node_count) {
        throw std::invalid_argument("hypergraph_from_json: index out of range");
      }
    }
  }
  return h;
}

void write_edges_csv(const BipartiteGeometricGraph& g, std::ostream& out) {
  out << "node,center\n";
  for (std::size_t c = 0; c < g.adjacency.size(); ++c) {
    for (std::uint32_t j : g.adjacency[c]) {
      out << j << ',' << c << '\n';
    }
  }
}

}  // namespace rgh
