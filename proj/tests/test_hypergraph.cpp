#include <doctest.h>

#include <algorithm>
#include <queue>
#include <vector>

#include "rgh/geometry.hpp"
#include "rgh/hypergraph.hpp"
#include "rgh/rng.hpp"

using namespace rgh;

namespace {

PointSample points_2d(const std::vector<std::pair<double, double>>& pts,
                      double extent = 1.0) {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const auto& [x, y] : pts) out.push_back(Point{{x, y}});
  return PointSample::from_points(Domain(Box({0.0, 0.0}, {extent, extent})), out);
}

// Independent component count: BFS over an explicit vertex adjacency map.
std::size_t bfs_components(const BipartiteGeometricGraph& g) {
  const std::size_t n1 = g.node_count();
  const std::size_t total = n1 + g.center_count();
  std::vector<std::vector<std::size_t>> adj(total);
  for (std::size_t c = 0; c < g.center_count(); ++c) {
    for (std::uint32_t j : g.adjacency[c]) {
      adj[j].push_back(n1 + c);
      adj[n1 + c].push_back(j);
    }
  }
  std::vector<char> visited(total, 0);
  std::size_t components = 0;
  for (std::size_t start = 0; start < total; ++start) {
    if (visited[start]) continue;
    ++components;
    std::queue<std::size_t> queue;
    queue.push(start);
    visited[start] = 1;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop();
      for (std::size_t u : adj[v]) {
        if (!visited[u]) {
          visited[u] = 1;
          queue.push(u);
        }
      }
    }
  }
  return components;
}

}  // namespace

TEST_SUITE_BEGIN("hypergraph");

TEST_CASE("single pair honors the strict radius") {
  const PointSample node = points_2d({{0.0, 0.0}});
  const PointSample center = points_2d({{0.5, 0.0}});
  CHECK(build_bipartite(node, center, 0.6).edge_count() == 1);
  CHECK(build_bipartite(node, center, 0.5).edge_count() == 0);
}

TEST_CASE("build validation") {
  const PointSample a = points_2d({{0.1, 0.1}});
  const PointSample b =
      PointSample::from_points(Domain::unit_cube(3), {Point{{0.1, 0.1, 0.1}}});
  CHECK_THROWS_AS(build_bipartite(a, b, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(build_bipartite(a, a, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_bipartite(a, a, -1.0), std::invalid_argument);
}

TEST_CASE("adjacency equals the quadratic scan") {
  const Domain d = Domain::unit_cube(2);
  const PointSample nodes = sample(d, SampleMode::Fixed, 200, 11);
  const PointSample centers = sample(d, SampleMode::Fixed, 50, 12);
  const double r = 0.1;
  const BipartiteGeometricGraph g = build_bipartite(nodes, centers, r);

  const double r2 = r * r;
  std::size_t edges = 0;
  for (std::size_t c = 0; c < centers.size(); ++c) {
    std::vector<std::uint32_t> expected;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (distance2(nodes.point(j), centers.point(c)) < r2) {
        expected.push_back(static_cast<std::uint32_t>(j));
      }
    }
    CHECK(g.adjacency[c] == expected);  // also proves sorted + duplicate-free
    edges += expected.size();
  }
  CHECK(g.edge_count() == edges);

  // Hyperedge sizes sum to the bipartite edge count.
  const Hypergraph h = to_hypergraph(g);
  std::size_t total = 0;
  for (const auto& e : h.hyperedges) total += e.size();
  CHECK(total == edges);
}

TEST_CASE("hypergraph view of the two-cluster example layout") {
  // Seven nodes and four centers whose incidence is {0}, {1,2}, {3,4,5,6},
  // {4,5,6} at radius 1 (zero-based labels).
  const double extent = 200.0;
  const PointSample nodes = points_2d({{0.0, 1.0},
                                       {10.0, 1.0},
                                       {10.8, 1.0},
                                       {99.3, 1.0},
                                       {100.4, 1.3},
                                       {100.4, 0.7},
                                       {100.9, 1.0}},
                                      extent);
  const PointSample centers = points_2d(
      {{0.5, 1.0}, {10.4, 1.0}, {100.0, 1.0}, {100.8, 1.0}}, extent);

  const Hypergraph h = to_hypergraph(build_bipartite(nodes, centers, 1.0));
  REQUIRE(h.hyperedges.size() == 4);
  CHECK(h.hyperedges[0] == std::vector<std::uint32_t>{0});
  CHECK(h.hyperedges[1] == std::vector<std::uint32_t>{1, 2});
  CHECK(h.hyperedges[2] == std::vector<std::uint32_t>{3, 4, 5, 6});
  CHECK(h.hyperedges[3] == std::vector<std::uint32_t>{4, 5, 6});
}

TEST_CASE("hypergraph keeps duplicates, empties, and drops geometry") {
  const PointSample nodes =
      points_2d({{0.4, 0.4}, {0.5, 0.4}, {0.6, 0.4}, {0.5, 0.5}, {0.5, 0.6}});
  const PointSample centers = points_2d({{0.5, 0.45}, {0.5, 0.5}, {0.45, 0.5}});
  const Hypergraph h = to_hypergraph(build_bipartite(nodes, centers, 2.0));
  REQUIRE(h.hyperedges.size() == 3);
  for (const auto& e : h.hyperedges) {
    CHECK(e == std::vector<std::uint32_t>{0, 1, 2, 3, 4});
  }

  const PointSample no_centers = points_2d({});
  const Hypergraph empty = to_hypergraph(build_bipartite(nodes, no_centers, 0.5));
  CHECK(empty.node_count == 5);
  CHECK(empty.hyperedges.empty());
}

TEST_CASE("connectivity conventions") {
  // Single vertex and empty graphs are connected.
  CHECK(is_connected(build_bipartite(points_2d({{0.5, 0.5}}), points_2d({}), 0.1)));
  CHECK(is_connected(build_bipartite(points_2d({}), points_2d({}), 0.1)));
  CHECK(component_count(build_bipartite(points_2d({}), points_2d({}), 0.1)) == 0);

  // Two nodes bridged by one center.
  const auto bridged = build_bipartite(points_2d({{0.0, 0.0}, {1.0, 0.0}}),
                                       points_2d({{0.5, 0.0}}), 0.6);
  CHECK(is_connected(bridged));

  // A center with no members is an isolated vertex.
  const auto apart = build_bipartite(points_2d({{0.0, 0.0}}),
                                     points_2d({{0.9, 0.9}}), 0.5);
  CHECK_FALSE(is_connected(apart));
  CHECK(component_count(apart) == 2);
  CHECK(is_connected(apart, /*ignore_empty_centers=*/true));

  CHECK(component_count(build_bipartite(
            points_2d({{0.1, 0.1}, {0.5, 0.5}, {0.9, 0.9}}), points_2d({}),
            0.1)) == 3);
}

TEST_CASE("component count equals BFS on random instances") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Domain d = Domain::unit_cube(2);
    const PointSample nodes = sample(d, SampleMode::Fixed, 60, 100 + seed);
    const PointSample centers = sample(d, SampleMode::Fixed, 15, 200 + seed);
    const auto g = build_bipartite(nodes, centers, 0.12);
    CHECK(component_count(g) == bfs_components(g));
    CHECK(is_connected(g) == (bfs_components(g) <= 1));
  }
}

TEST_CASE("connectivity is monotone in the radius") {
  SplitMix64 rng(55);
  const Domain d = Domain::unit_cube(2);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const PointSample nodes = sample(d, SampleMode::Fixed, 80, 300 + seed);
    const PointSample centers = sample(d, SampleMode::Fixed, 20, 400 + seed);
    double r = 0.05;
    bool was_connected = false;
    for (int step = 0; step < 12; ++step) {
      const bool now = bipartite_connected_at(nodes, centers, r);
      if (was_connected) CHECK(now);
      was_connected = now;
      r *= 1.4;
    }
    CHECK(was_connected);  // the final radius exceeds the diameter
  }
}

TEST_CASE("fast connectivity agrees with the materialized graph") {
  const Domain d = Domain::unit_cube(3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PointSample nodes = sample(d, SampleMode::Fixed, 70, 500 + seed);
    const PointSample centers = sample(d, SampleMode::Fixed, 30, 600 + seed);
    const double r = 0.15 + 0.05 * static_cast<double>(seed);
    CHECK(bipartite_connected_at(nodes, centers, r) ==
          is_connected(build_bipartite(nodes, centers, r)));
  }
}

TEST_CASE("text and json serialization round-trip") {
  Hypergraph h;
  h.node_count = 8;
  h.hyperedges = {{0, 3, 5}, {}, {1}, {1}, {0, 1, 2, 3, 4, 5, 6, 7}};

  const std::string text = hypergraph_to_text(h);
  CHECK(text.rfind("nodes=8 hyperedges=5\n", 0) == 0);
  CHECK(hypergraph_from_text(text) == h);

  CHECK(hypergraph_from_json(hypergraph_to_json(h)) == h);

  SplitMix64 rng(77);
  for (int rep = 0; rep < 20; ++rep) {
    Hypergraph random;
    random.node_count = 1 + rng.next() % 30;
    const std::size_t edges = rng.next() % 10;
    for (std::size_t e = 0; e < edges; ++e) {
      std::vector<std::uint32_t> edge;
      const std::size_t len = rng.next() % 6;
      for (std::size_t i = 0; i < len; ++i) {
        edge.push_back(static_cast<std::uint32_t>(rng.next() % random.node_count));
      }
      std::sort(edge.begin(), edge.end());
      edge.erase(std::unique(edge.begin(), edge.end()), edge.end());
      random.hyperedges.push_back(std::move(edge));
    }
    CHECK(hypergraph_from_text(hypergraph_to_text(random)) == random);
    CHECK(hypergraph_from_json(hypergraph_to_json(random)) == random);
  }

  CHECK_THROWS_AS(hypergraph_from_text("garbage\n"), std::invalid_argument);
  CHECK_THROWS_AS(hypergraph_from_text("nodes=2 hyperedges=1\n7\n"),
                  std::invalid_argument);
}

TEST_SUITE_END();
