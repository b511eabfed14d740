#ifndef RGH_THRESHOLD_HPP
#define RGH_THRESHOLD_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "rgh/geometry.hpp"

namespace rgh {

enum class ThresholdMethod { ExactBottleneck, Bisection };

const char* to_string(ThresholdMethod m);
ThresholdMethod threshold_method_from_string(const std::string& s);

struct BottleneckEdge {
  std::uint32_t node;
  std::uint32_t center;
  double distance;
};

// r_star is the infimum radius for connectivity: because edges use the
// strict test |x - y| < r, the graph at exactly r_star is still
// disconnected and any r > r_star connects it.
struct CriticalRadiusResult {
  double r_star = 0.0;
  ThresholdMethod method = ThresholdMethod::ExactBottleneck;
  int iterations = 0;  // bisection only
  std::optional<BottleneckEdge> certificate;
  bool never_connects = false;
};

// Pairs whose count exceeds this cap are not materialized; the exact method
// falls back to bisection with grid-accelerated connectivity checks.
inline constexpr std::size_t kDefaultPairCap = 100'000'000;

// Bottleneck spanning radius: all node-center pair distances are swept in
// ascending order into a union-find (Kruskal) and the sweep stops at the
// edge that first makes the vertex set one component. That edge's distance
// is the max edge of a minimum-bottleneck spanning tree, i.e. r_star.
CriticalRadiusResult critical_radius_exact(const PointSample& nodes,
                                           const PointSample& centers,
                                           std::size_t pair_cap = kDefaultPairCap);

// The bisection procedure: halves [r_lo, r_hi] with a connectivity test at
// each midpoint. Requires a valid bracket (disconnected at r_lo, connected
// at r_hi); the two-argument overload brackets with [0, diameter * (1+1e-9)].
CriticalRadiusResult critical_radius_bisection(const PointSample& nodes,
                                               const PointSample& centers,
                                               double r_lo, double r_hi,
                                               double tol);
CriticalRadiusResult critical_radius_bisection(const PointSample& nodes,
                                               const PointSample& centers,
                                               double tol);

}  // namespace rgh

#endif
