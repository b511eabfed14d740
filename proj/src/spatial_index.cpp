#include "rgh/spatial_index.hpp"

#include <cmath>
#include <stdexcept>

#include "rgh/geometry.hpp"

namespace rgh {

UniformGrid::UniformGrid(std::span<const double> flat_coords, std::size_t dim,
                         double cell_width)
    : dim_(dim),
      cell_width_(cell_width),
      coords_(flat_coords.begin(), flat_coords.end()) {
  if (dim_ == 0) throw std::invalid_argument("UniformGrid: dimension must be >= 1");
  if (!(cell_width > 0.0) || !std::isfinite(cell_width)) {
    throw std::invalid_argument("UniformGrid: cell_width must be positive");
  }
  if (coords_.size() % dim_ != 0) {
    throw std::invalid_argument("UniformGrid: coordinate count not a multiple of dim");
  }
  count_ = coords_.size() / dim_;

  Cell key(dim_);
  for (std::size_t i = 0; i < count_; ++i) {
    const auto p = point(i);
    for (std::size_t k = 0; k < dim_; ++k) {
      key[k] = static_cast<std::int64_t>(std::floor(p[k] / cell_width_));
    }
    buckets_[key].push_back(static_cast<std::uint32_t>(i));
  }
}

UniformGrid::Cell UniformGrid::cell_of(std::span<const double> p,
                                       double cell_width) {
  Cell c(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    c[k] = static_cast<std::int64_t>(std::floor(p[k] / cell_width));
  }
  return c;
}

std::vector<std::uint32_t> UniformGrid::neighbors_within(
    std::span<const double> query, double r) const {
  std::vector<std::uint32_t> out;
  append_neighbors_within(query, r, out);
  return out;
}

void UniformGrid::append_neighbors_within(std::span<const double> query,
                                          double r,
                                          std::vector<std::uint32_t>& out) const {
  if (query.size() != dim_) {
    throw std::invalid_argument("neighbors_within: query dimension mismatch");
  }
  if (!(r >= 0.0)) {
    throw std::invalid_argument("neighbors_within: radius must be >= 0");
  }
  if (count_ == 0 || r == 0.0) return;

  const double r2 = r * r;
  std::vector<std::int64_t> lo(dim_), hi(dim_);
  for (std::size_t k = 0; k < dim_; ++k) {
    lo[k] = static_cast<std::int64_t>(std::floor((query[k] - r) / cell_width_));
    hi[k] = static_cast<std::int64_t>(std::floor((query[k] + r) / cell_width_));
  }

  Cell cell = lo;
  for (;;) {
    // Skip cells whose closest corner is already outside the ball.
    double gap2 = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
      const double cell_lo = static_cast<double>(cell[k]) * cell_width_;
      const double cell_hi = cell_lo + cell_width_;
      double gap = 0.0;
      if (query[k] < cell_lo) gap = cell_lo - query[k];
      else if (query[k] > cell_hi) gap = query[k] - cell_hi;
      gap2 += gap * gap;
    }
    if (gap2 <= r2) {
      const auto it = buckets_.find(cell);
      if (it != buckets_.end()) {
        for (std::uint32_t idx : it->second) {
          if (distance2(point(idx), query) < r2) out.push_back(idx);
        }
      }
    }

    // Odometer over the cell range.
    std::size_t axis = 0;
    while (axis < dim_ && ++cell[axis] > hi[axis]) {
      cell[axis] = lo[axis];
      ++axis;
    }
    if (axis == dim_) break;
  }
}

bool grid_worthwhile(std::size_t dim, std::size_t point_count) {
  std::size_t cells = 1;
  for (std::size_t k = 0; k < dim; ++k) {
    if (cells > point_count) return false;
    cells *= 3;
  }
  return cells <= point_count;
}

}  // namespace rgh
