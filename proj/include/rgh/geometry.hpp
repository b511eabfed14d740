#ifndef RGH_GEOMETRY_HPP
#define RGH_GEOMETRY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rgh/rng.hpp"

namespace rgh {

// Squared Euclidean distance. Every distance comparison in the project goes
// through this one function so results are bit-identical across call sites.
inline double distance2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double t = a[k] - b[k];
    s += t * t;
  }
  return s;
}

// Largest double s with s*s <= d2. Returning a plain sqrt could round so
// that s*s lands one ulp above d2, which would flip the strict test
// d2 < r*r at exactly r == s.
inline double sqrt_rounded_down(double d2) {
  double s = std::sqrt(d2);
  while (s > 0.0 && s * s > d2) s = std::nextafter(s, 0.0);
  return s;
}

// d-dimensional point; exchange type at API boundaries. Bulk storage lives
// in PointSample as a flat row-major buffer.
struct Point {
  std::vector<double> coords;
};

// Axis-aligned box with lower[k] < upper[k] on every axis.
class Box {
 public:
  Box() = default;
  Box(std::vector<double> lower, std::vector<double> upper);

  static Box unit_cube(std::size_t dim);

  std::size_t dim() const { return lower_.size(); }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  double side(std::size_t axis) const { return upper_[axis] - lower_[axis]; }

  double volume() const;
  // Corner-to-corner Euclidean length.
  double diameter() const;
  // Closed-box membership.
  bool contains(std::span<const double> p) const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
};

// Volume of a ∩ b; 0 when disjoint.
double intersection_volume(const Box& a, const Box& b);

enum class Density { Uniform };

// Sampling domain: an axis-aligned box carrying a probability density. v1
// supports the uniform density only; the abstraction exists so non-uniform
// f can slot in later without touching callers.
class Domain {
 public:
  explicit Domain(Box box, Density density = Density::Uniform);

  static Domain unit_cube(std::size_t dim);

  const Box& box() const { return box_; }
  std::size_t dim() const { return box_.dim(); }
  Density density() const { return density_; }

  // Minimum of the density over the box; uniform f == 1/volume everywhere.
  double f_min() const;

  // Integral of the density over region ∩ box, in [0, 1]. Disjoint regions
  // contribute 0.
  double measure(const Box& region) const;

 private:
  Box box_;
  Density density_;
};

enum class SampleMode { Poisson, Fixed };

const char* to_string(SampleMode mode);
SampleMode sample_mode_from_string(const std::string& s);

// Immutable point set with sampling provenance. Coordinates are stored flat
// (row-major, size() * dim() doubles) for cache-friendly pair sweeps.
class PointSample {
 public:
  PointSample(Domain domain, SampleMode mode, double intensity_or_count,
              std::uint64_t seed, std::vector<double> flat_coords);

  // Wraps explicit points (mode Fixed, seed 0); validates containment.
  static PointSample from_points(Domain domain,
                                 const std::vector<Point>& points);

  std::size_t size() const { return count_; }
  std::size_t dim() const { return domain_.dim(); }
  std::span<const double> point(std::size_t i) const {
    return {data_.data() + i * dim(), dim()};
  }
  std::span<const double> data() const { return data_; }

  const Domain& domain() const { return domain_; }
  SampleMode mode() const { return mode_; }
  double intensity_or_count() const { return intensity_or_count_; }
  std::uint64_t seed() const { return seed_; }

 private:
  Domain domain_;
  SampleMode mode_;
  double intensity_or_count_;
  std::uint64_t seed_;
  std::size_t count_;
  std::vector<double> data_;
};

// Draws a point set from the domain's density. Poisson mode draws the count
// N ~ Poisson(n) first, then N i.i.d. points; fixed mode takes n as an exact
// integer count. RNG consumption order (count, then point-by-point,
// axis-by-axis) is part of the contract: identical arguments reproduce the
// sample bit for bit.
PointSample sample(const Domain& domain, SampleMode mode, double n,
                   std::uint64_t seed);

// One row per point, header x0,...,x{d-1}.
void write_points_csv(const PointSample& sample, std::ostream& out);

}  // namespace rgh

#endif
