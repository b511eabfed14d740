#ifndef RGH_SPATIAL_INDEX_HPP
#define RGH_SPATIAL_INDEX_HPP

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace rgh {

// Grid-bucketed fixed-radius near-neighbor search over a static point set.
// Points are bucketed by the integer cell floor(coord / cell_width) per axis
// and a query inspects only cells overlapping the query ball, so the radius
// test runs in near O(1) per reported neighbor instead of O(n).
class UniformGrid {
 public:
  using Cell = std::vector<std::int64_t>;

  struct CellHash {
    std::size_t operator()(const Cell& c) const {
      std::uint64_t h = 0x9e3779b97f4a7c15ull;
      for (std::int64_t v : c) {
        std::uint64_t z = h ^ (static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        h = z ^ (z >> 31);
      }
      return static_cast<std::size_t>(h);
    }
  };

  using BucketMap = std::unordered_map<Cell, std::vector<std::uint32_t>, CellHash>;

  // Copies the coordinates; the grid is immutable afterwards and safe to
  // query from any number of threads.
  UniformGrid(std::span<const double> flat_coords, std::size_t dim,
              double cell_width);

  std::size_t size() const { return count_; }
  std::size_t dim() const { return dim_; }
  double cell_width() const { return cell_width_; }
  const BucketMap& buckets() const { return buckets_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }

  // Exactly the indices i with |points[i] - query| < r (strict). Only
  // buckets whose cells intersect the query ball are examined.
  std::vector<std::uint32_t> neighbors_within(std::span<const double> query,
                                              double r) const;

  // Hot-path variant: appends into out (not cleared) to reuse capacity.
  void append_neighbors_within(std::span<const double> query, double r,
                               std::vector<std::uint32_t>& out) const;

  static Cell cell_of(std::span<const double> p, double cell_width);

 private:
  std::size_t dim_;
  std::size_t count_;
  double cell_width_;
  std::vector<double> coords_;
  BucketMap buckets_;
};

// Grid bookkeeping pays off only while the 3^d cells a query touches stay
// below the point count; past that a flat scan wins (the d = 10 sweeps).
bool grid_worthwhile(std::size_t dim, std::size_t point_count);

}  // namespace rgh

#endif
