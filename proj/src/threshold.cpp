#include "rgh/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rgh/hypergraph.hpp"
#include "rgh/union_find.hpp"

namespace rgh {

const char* to_string(ThresholdMethod m) {
  return m == ThresholdMethod::ExactBottleneck ? "exact_bottleneck" : "bisection";
}

ThresholdMethod threshold_method_from_string(const std::string& s) {
  if (s == "exact_bottleneck" || s == "exact") return ThresholdMethod::ExactBottleneck;
  if (s == "bisection") return ThresholdMethod::Bisection;
  throw std::invalid_argument("unknown threshold method: " + s);
}

namespace {

struct PairEdge {
  double d2;
  std::uint32_t node;
  std::uint32_t center;
};

void check_instance(const PointSample& nodes, const PointSample& centers) {
  if (nodes.dim() != centers.dim()) {
    throw std::invalid_argument("critical_radius: dimension mismatch");
  }
  if (nodes.size() + centers.size() < 2) {
    throw std::invalid_argument("critical_radius: need at least two vertices");
  }
}

// Bipartite graphs have no same-side edges, so one empty side can never
// reach the other side's >= 2 vertices.
bool connectivity_unattainable(const PointSample& nodes,
                               const PointSample& centers) {
  return nodes.size() == 0 || centers.size() == 0;
}

CriticalRadiusResult never_connects_result(ThresholdMethod method) {
  CriticalRadiusResult res;
  res.r_star = std::numeric_limits<double>::quiet_NaN();
  res.method = method;
  res.never_connects = true;
  return res;
}

}  // namespace

CriticalRadiusResult critical_radius_exact(const PointSample& nodes,
                                           const PointSample& centers,
                                           std::size_t pair_cap) {
  check_instance(nodes, centers);
  if (connectivity_unattainable(nodes, centers)) {
    return never_connects_result(ThresholdMethod::ExactBottleneck);
  }

  const std::size_t n1 = nodes.size();
  const std::size_t n2 = centers.size();
  if (n1 * n2 > pair_cap) {
    // Memory guard: quadratic pair storage is out of budget.
    const double tol = 1e-12 * nodes.domain().box().diameter();
    return critical_radius_bisection(nodes, centers, tol);
  }

  std::vector<PairEdge> edges;
  edges.reserve(n1 * n2);
  for (std::size_t j = 0; j < n1; ++j) {
    const auto p = nodes.point(j);
    for (std::size_t c = 0; c < n2; ++c) {
      edges.push_back(PairEdge{distance2(p, centers.point(c)),
                               static_cast<std::uint32_t>(j),
                               static_cast<std::uint32_t>(c)});
    }
  }

  // Lazy ascending sweep: popping a min-heap delivers edges in sorted order
  // but stops paying once the sweep exits at the bottleneck.
  const auto greater_d2 = [](const PairEdge& a, const PairEdge& b) {
    return a.d2 > b.d2;
  };
  std::make_heap(edges.begin(), edges.end(), greater_d2);

  DisjointSets ds(n1 + n2);
  auto end = edges.end();
  while (end != edges.begin()) {
    std::pop_heap(edges.begin(), end, greater_d2);
    --end;
    const PairEdge& e = *end;
    if (ds.unite(e.node, static_cast<std::uint32_t>(n1 + e.center)) &&
        ds.component_count() == 1) {
      CriticalRadiusResult res;
      res.r_star = sqrt_rounded_down(e.d2);
      res.method = ThresholdMethod::ExactBottleneck;
      res.certificate = BottleneckEdge{e.node, e.center, res.r_star};
      return res;
    }
  }
  // Unreachable: a complete bipartite graph on nonempty sides is connected.
  throw std::logic_error("critical_radius_exact: sweep exhausted without connectivity");
}

CriticalRadiusResult critical_radius_bisection(const PointSample& nodes,
                                               const PointSample& centers,
                                               double r_lo, double r_hi,
                                               double tol) {
  check_instance(nodes, centers);
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw std::invalid_argument("critical_radius_bisection: tol must be positive");
  }
  if (!(r_lo >= 0.0) || !(r_hi > r_lo)) {
    throw std::invalid_argument("critical_radius_bisection: need 0 <= r_lo < r_hi");
  }
  if (connectivity_unattainable(nodes, centers) ||
      !bipartite_connected_at(nodes, centers, r_hi)) {
    return never_connects_result(ThresholdMethod::Bisection);
  }
  if (r_lo > 0.0 && bipartite_connected_at(nodes, centers, r_lo)) {
    throw std::invalid_argument("critical_radius_bisection: already connected at r_lo");
  }

  double lo = r_lo;
  double hi = r_hi;
  int iterations = 0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval no longer splittable
    ++iterations;
    if (bipartite_connected_at(nodes, centers, mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  CriticalRadiusResult res;
  res.r_star = 0.5 * (lo + hi);
  res.method = ThresholdMethod::Bisection;
  res.iterations = iterations;
  return res;
}

CriticalRadiusResult critical_radius_bisection(const PointSample& nodes,
                                               const PointSample& centers,
                                               double tol) {
  check_instance(nodes, centers);
  // Pair distances never exceed the box diameter, so a hair above it is a
  // valid connected upper bracket whenever connectivity is attainable.
  const double diameter = nodes.domain().box().diameter();
  return critical_radius_bisection(nodes, centers, 0.0,
                                   diameter * (1.0 + 1e-9), tol);
}

}  // namespace rgh
