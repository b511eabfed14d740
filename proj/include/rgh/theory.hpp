#ifndef RGH_THEORY_HPP
#define RGH_THEORY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rgh/geometry.hpp"

namespace rgh {

// Named slowly-growing functions w(n) admissible in the weak radius bound.
enum class GrowthKind { Constant, LogLog, SqrtLog };

struct GrowthFn {
  GrowthKind kind = GrowthKind::LogLog;
  double value = 1.0;  // Constant only

  double operator()(double n) const;
};

const char* to_string(GrowthKind k);
GrowthKind growth_kind_from_string(const std::string& s);

// Constants of the radius bounds and coverage-grid construction.
//
// K is the smallest constant with n1 >= n/K and n2 >= n/K for the configured
// node/center split (0.8/0.2 gives K = 5). C bounds the diameter of a grid
// region in units of the cube width; gamma = 1/C so that every region has
// diameter strictly below the radius. For a box domain a 3x...x3 block of
// cubes has diameter exactly 3*sqrt(d) cube widths, so the default C sits a
// hair above that to keep the bound strict.
struct TheoryParams {
  int d = 2;
  double node_fraction = 0.8;
  double C = 0.0;  // <= 0 selects the default for d
  double f_min = 1.0;
  double epsilon = 1.0;
  GrowthFn w{};

  static double default_C(int d);
  static TheoryParams for_dimension(int d, double node_fraction = 0.8);

  double K() const;
  double gamma() const { return 1.0 / effective_C(); }
  double effective_C() const { return C > 0.0 ? C : default_C(d); }

  void validate() const;  // throws on out-of-range fields
};

// Smallest radius satisfying n * (f_min / (K C^d)) * r^d
//   >= log n - log log n + w(n).
double radius_weak(std::uint64_t n, const TheoryParams& p);

// Smallest radius satisfying n * (f_min / (K C^d)) * r^d
//   >= 2 log n + epsilon * log log n.
double radius_strong(std::uint64_t n, const TheoryParams& p);

// Partition of the domain into cubes of width gamma * r, anchored at the
// domain's lower corner. Interior cells are those fully inside the box;
// the region of an interior cell is the 3x...x3 block around it clipped to
// the domain (for a box domain the union of clipped neighbor cubes collapses
// to that single box). Build verifies every region has diameter < r and
// measure >= f_min * (gamma r)^d.
class CoverageGrid {
 public:
  double cube_width() const { return cube_width_; }
  double radius() const { return radius_; }
  std::size_t dim() const { return domain_.dim(); }
  const Domain& domain() const { return domain_; }

  // |S_n|
  std::size_t cell_count() const { return regions_.size(); }
  const std::vector<std::int64_t>& cells_per_axis() const { return cells_per_axis_; }

  const Box& region(std::size_t idx) const { return regions_[idx]; }
  std::vector<std::int64_t> cell_coords(std::size_t idx) const;

  // covered[i] == true iff some point of the sample lies in region i.
  std::vector<std::uint8_t> covered_regions(const PointSample& sample) const;

  friend CoverageGrid build_coverage_grid(const Domain& domain, double r,
                                          const TheoryParams& p);

 private:
  CoverageGrid() = default;

  Domain domain_ = Domain::unit_cube(1);
  double cube_width_ = 0.0;
  double radius_ = 0.0;
  std::vector<std::int64_t> cells_per_axis_;
  std::vector<Box> regions_;
};

CoverageGrid build_coverage_grid(const Domain& domain, double r,
                                 const TheoryParams& p);

// True iff every region holds at least one point of each sample.
bool coverage_holds(const CoverageGrid& grid, const PointSample& a,
                    const PointSample& b);

// Fraction of trials in which coverage_holds is true, with the node and
// center processes Poisson of intensities split from n. Trials run in
// parallel on deterministic per-trial streams.
double coverage_probability(const Domain& domain, std::uint64_t n,
                            const TheoryParams& p, double r, int trials,
                            std::uint64_t seed, int threads = 0);
// Convenience on the unit cube of dimension p.d.
double coverage_probability(std::uint64_t n, const TheoryParams& p, double r,
                            int trials, std::uint64_t seed, int threads = 0);

}  // namespace rgh

#endif
