#include "rgh/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "rgh/format.hpp"

namespace rgh {

Box::Box(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty() || lower_.size() != upper_.size()) {
    throw std::invalid_argument("Box: dimension must be >= 1 and bounds must match");
  }
  for (std::size_t k = 0; k < lower_.size(); ++k) {
    if (!std::isfinite(lower_[k]) || !std::isfinite(upper_[k]) ||
        !(lower_[k] < upper_[k])) {
      throw std::invalid_argument("Box: need finite lower < upper on every axis");
    }
  }
}

Box Box::unit_cube(std::size_t dim) {
  return Box(std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0));
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t k = 0; k < dim(); ++k) v *= side(k);
  return v;
}

double Box::diameter() const {
  double d2 = 0.0;
  for (std::size_t k = 0; k < dim(); ++k) d2 += side(k) * side(k);
  return std::sqrt(d2);
}

bool Box::contains(std::span<const double> p) const {
  if (p.size() != dim()) return false;
  for (std::size_t k = 0; k < dim(); ++k) {
    if (p[k] < lower_[k] || p[k] > upper_[k]) return false;
  }
  return true;
}

double intersection_volume(const Box& a, const Box& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("intersection_volume: dimension mismatch");
  }
  double v = 1.0;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const double lo = std::max(a.lower()[k], b.lower()[k]);
    const double hi = std::min(a.upper()[k], b.upper()[k]);
    if (hi <= lo) return 0.0;
    v *= hi - lo;
  }
  return v;
}

Domain::Domain(Box box, Density density)
    : box_(std::move(box)), density_(density) {}

Domain Domain::unit_cube(std::size_t dim) {
  return Domain(Box::unit_cube(dim));
}

double Domain::f_min() const {
  return 1.0 / box_.volume();
}

double Domain::measure(const Box& region) const {
  const double v = intersection_volume(box_, region);
  return v / box_.volume();
}

const char* to_string(SampleMode mode) {
  return mode == SampleMode::Poisson ? "poisson" : "fixed";
}

SampleMode sample_mode_from_string(const std::string& s) {
  if (s == "poisson") return SampleMode::Poisson;
  if (s == "fixed") return SampleMode::Fixed;
  throw std::invalid_argument("unknown sample mode: " + s);
}

PointSample::PointSample(Domain domain, SampleMode mode,
                         double intensity_or_count, std::uint64_t seed,
                         std::vector<double> flat_coords)
    : domain_(std::move(domain)),
      mode_(mode),
      intensity_or_count_(intensity_or_count),
      seed_(seed),
      data_(std::move(flat_coords)) {
  const std::size_t d = domain_.dim();
  if (data_.size() % d != 0) {
    throw std::invalid_argument("PointSample: coordinate count not a multiple of dim");
  }
  count_ = data_.size() / d;
  for (std::size_t i = 0; i < count_; ++i) {
    if (!domain_.box().contains(point(i))) {
      throw std::invalid_argument("PointSample: point outside the domain box");
    }
  }
}

PointSample PointSample::from_points(Domain domain,
                                     const std::vector<Point>& points) {
  const std::size_t d = domain.dim();
  std::vector<double> flat;
  flat.reserve(points.size() * d);
  for (const Point& p : points) {
    if (p.coords.size() != d) {
      throw std::invalid_argument("from_points: point dimension mismatch");
    }
    flat.insert(flat.end(), p.coords.begin(), p.coords.end());
  }
  return PointSample(std::move(domain), SampleMode::Fixed,
                     static_cast<double>(points.size()), 0, std::move(flat));
}

PointSample sample(const Domain& domain, SampleMode mode, double n,
                   std::uint64_t seed) {
  if (!std::isfinite(n) || n < 0.0) {
    throw std::invalid_argument("sample: n must be finite and >= 0");
  }
  if (mode == SampleMode::Fixed && n != std::floor(n)) {
    throw std::invalid_argument("sample: fixed mode requires an integer count");
  }

  SplitMix64 rng(seed);
  const std::uint64_t count = mode == SampleMode::Poisson
                                  ? poisson_draw(rng, n)
                                  : static_cast<std::uint64_t>(n);

  const std::size_t d = domain.dim();
  const Box& box = domain.box();
  std::vector<double> flat(count * d);
  for (std::uint64_t i = 0; i < count; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      flat[i * d + k] = rng.uniform(box.lower()[k], box.upper()[k]);
    }
  }
  return PointSample(domain, mode, n, seed, std::move(flat));
}

void write_points_csv(const PointSample& sample, std::ostream& out) {
  for (std::size_t k = 0; k < sample.dim(); ++k) {
    out << (k == 0 ? "x" : ",x") << k;
  }
  out << '\n';
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto p = sample.point(i);
    for (std::size_t k = 0; k < p.size(); ++k) {
      if (k > 0) out << ',';
      out << format_double(p[k]);
    }
    out << '\n';
  }
}

}  // namespace rgh
