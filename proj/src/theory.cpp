#include "rgh/theory.hpp"

#include <cmath>
#include <stdexcept>

#include "rgh/parallel.hpp"

namespace rgh {

double GrowthFn::operator()(double n) const {
  switch (kind) {
    case GrowthKind::Constant:
      return value;
    case GrowthKind::LogLog:
      return std::log(std::log(n));
    case GrowthKind::SqrtLog:
      return std::sqrt(std::log(n));
  }
  throw std::logic_error("GrowthFn: bad kind");
}

const char* to_string(GrowthKind k) {
  switch (k) {
    case GrowthKind::Constant: return "constant";
    case GrowthKind::LogLog: return "loglog";
    case GrowthKind::SqrtLog: return "sqrtlog";
  }
  return "?";
}

GrowthKind growth_kind_from_string(const std::string& s) {
  if (s == "constant") return GrowthKind::Constant;
  if (s == "loglog") return GrowthKind::LogLog;
  if (s == "sqrtlog") return GrowthKind::SqrtLog;
  throw std::invalid_argument("unknown growth kind: " + s);
}

double TheoryParams::default_C(int d) {
  // 3*sqrt(d) makes the region diameter exactly r; the relative nudge keeps
  // the required strict inequality with margin far above double rounding.
  return 3.0 * std::sqrt(static_cast<double>(d)) * (1.0 + 1e-6);
}

TheoryParams TheoryParams::for_dimension(int d, double node_fraction) {
  TheoryParams p;
  p.d = d;
  p.node_fraction = node_fraction;
  p.validate();
  return p;
}

double TheoryParams::K() const {
  return 1.0 / std::min(node_fraction, 1.0 - node_fraction);
}

void TheoryParams::validate() const {
  if (d < 1) throw std::invalid_argument("TheoryParams: d must be >= 1");
  if (!(node_fraction > 0.0) || !(node_fraction < 1.0)) {
    throw std::invalid_argument("TheoryParams: node_fraction must be in (0, 1)");
  }
  if (C != 0.0 && !(C > 0.0)) {
    throw std::invalid_argument("TheoryParams: C must be positive");
  }
  if (!(f_min > 0.0)) throw std::invalid_argument("TheoryParams: f_min must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("TheoryParams: epsilon must be positive");
  if (w.kind == GrowthKind::Constant && !(w.value > 0.0)) {
    throw std::invalid_argument("TheoryParams: constant w must be positive");
  }
}

namespace {

double radius_from_rhs(double rhs, std::uint64_t n, const TheoryParams& p) {
  const double d = static_cast<double>(p.d);
  const double scale = p.K() * std::pow(p.effective_C(), d) / p.f_min;
  return std::pow(scale * rhs / static_cast<double>(n), 1.0 / d);
}

void check_n(std::uint64_t n) {
  if (n < 3) {
    throw std::invalid_argument("radius bound: n must be >= 3 so log log n > 0");
  }
}

}  // namespace

double radius_weak(std::uint64_t n, const TheoryParams& p) {
  check_n(n);
  p.validate();
  const double ln = std::log(static_cast<double>(n));
  return radius_from_rhs(ln - std::log(ln) + p.w(static_cast<double>(n)), n, p);
}

double radius_strong(std::uint64_t n, const TheoryParams& p) {
  check_n(n);
  p.validate();
  const double ln = std::log(static_cast<double>(n));
  return radius_from_rhs(2.0 * ln + p.epsilon * std::log(ln), n, p);
}

std::vector<std::int64_t> CoverageGrid::cell_coords(std::size_t idx) const {
  std::vector<std::int64_t> coords(dim());
  for (std::size_t k = 0; k < dim(); ++k) {
    coords[k] = static_cast<std::int64_t>(idx % cells_per_axis_[k]);
    idx /= cells_per_axis_[k];
  }
  return coords;
}

CoverageGrid build_coverage_grid(const Domain& domain, double r,
                                 const TheoryParams& p) {
  p.validate();
  if (static_cast<std::size_t>(p.d) != domain.dim()) {
    throw std::invalid_argument("build_coverage_grid: params/domain dimension mismatch");
  }
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("build_coverage_grid: radius must be positive");
  }

  const Box& box = domain.box();
  const std::size_t d = domain.dim();
  const double w = p.gamma() * r;

  CoverageGrid grid;
  grid.domain_ = domain;
  grid.cube_width_ = w;
  grid.radius_ = r;
  grid.cells_per_axis_.resize(d);

  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) {
    // Count of cells [lo + i*w, lo + (i+1)*w] fully inside the box; the
    // float comparison decides borderline cells, matching region corners.
    std::int64_t m = static_cast<std::int64_t>(std::floor(box.side(k) / w));
    while (m > 0 && box.lower()[k] + static_cast<double>(m) * w > box.upper()[k]) --m;
    while (box.lower()[k] + static_cast<double>(m + 1) * w <= box.upper()[k]) ++m;
    if (m < 1) {
      throw std::invalid_argument(
          "build_coverage_grid: gamma*r too large, no interior cells");
    }
    grid.cells_per_axis_[k] = m;
    total *= static_cast<std::size_t>(m);
  }

  grid.regions_.reserve(total);
  std::vector<std::int64_t> coords(d, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<double> lo(d), hi(d);
    for (std::size_t k = 0; k < d; ++k) {
      const double base = box.lower()[k];
      lo[k] = std::max(base, base + static_cast<double>(coords[k] - 1) * w);
      hi[k] = std::min(box.upper()[k], base + static_cast<double>(coords[k] + 2) * w);
    }
    grid.regions_.emplace_back(std::move(lo), std::move(hi));

    std::size_t axis = 0;
    while (axis < d && ++coords[axis] == grid.cells_per_axis_[axis]) {
      coords[axis] = 0;
      ++axis;
    }
  }

  // Build-time invariant checks.
  const double wd = std::pow(w, static_cast<double>(d));
  if (static_cast<double>(total) * wd > box.volume() * (1.0 + 1e-9)) {
    throw std::logic_error("CoverageGrid: cell count bound violated");
  }
  for (const Box& q : grid.regions_) {
    double diag2 = 0.0;
    for (std::size_t k = 0; k < d; ++k) diag2 += q.side(k) * q.side(k);
    if (!(diag2 < r * r)) {
      throw std::logic_error("CoverageGrid: region diameter not below radius");
    }
    // The interior cube sits inside its region by construction; allow only
    // float rounding slack on the measure bound.
    if (domain.measure(q) < p.f_min * wd * (1.0 - 1e-12)) {
      throw std::logic_error("CoverageGrid: region measure below f_min*(gamma r)^d");
    }
  }
  return grid;
}

std::vector<std::uint8_t> CoverageGrid::covered_regions(
    const PointSample& sample) const {
  const std::size_t d = dim();
  if (sample.dim() != d) {
    throw std::invalid_argument("covered_regions: sample dimension mismatch");
  }
  std::vector<std::uint8_t> covered(cell_count(), 0);

  // A point in cube c lies in region i exactly when |c - i|_inf <= 1, so
  // each point marks the interior cells of its 3^d neighborhood.
  std::vector<std::int64_t> lo(d), hi(d), cur(d);
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto pt = sample.point(i);
    bool empty = false;
    for (std::size_t k = 0; k < d; ++k) {
      const auto c = static_cast<std::int64_t>(
          std::floor((pt[k] - domain_.box().lower()[k]) / cube_width_));
      lo[k] = std::max<std::int64_t>(0, c - 1);
      hi[k] = std::min(cells_per_axis_[k] - 1, c + 1);
      if (lo[k] > hi[k]) empty = true;
    }
    if (empty) continue;

    cur = lo;
    for (;;) {
      std::size_t idx = 0;
      std::size_t stride = 1;
      for (std::size_t k = 0; k < d; ++k) {
        idx += static_cast<std::size_t>(cur[k]) * stride;
        stride *= static_cast<std::size_t>(cells_per_axis_[k]);
      }
      covered[idx] = 1;

      std::size_t axis = 0;
      while (axis < d && ++cur[axis] > hi[axis]) {
        cur[axis] = lo[axis];
        ++axis;
      }
      if (axis == d) break;
    }
  }
  return covered;
}

bool coverage_holds(const CoverageGrid& grid, const PointSample& a,
                    const PointSample& b) {
  for (std::uint8_t c : grid.covered_regions(a)) {
    if (!c) return false;
  }
  for (std::uint8_t c : grid.covered_regions(b)) {
    if (!c) return false;
  }
  return true;
}

double coverage_probability(const Domain& domain, std::uint64_t n,
                            const TheoryParams& p, double r, int trials,
                            std::uint64_t seed, int threads) {
  if (trials < 1) {
    throw std::invalid_argument("coverage_probability: trials must be >= 1");
  }
  const CoverageGrid grid = build_coverage_grid(domain, r, p);
  const double intensity_nodes = p.node_fraction * static_cast<double>(n);
  const double intensity_centers = (1.0 - p.node_fraction) * static_cast<double>(n);

  std::vector<std::uint8_t> hit(trials, 0);
  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
    const std::uint64_t ts = trial_seed(seed, n, t);
    const PointSample a = sample(domain, SampleMode::Poisson, intensity_nodes,
                                 role_seed(ts, StreamRole::Nodes));
    const PointSample b = sample(domain, SampleMode::Poisson, intensity_centers,
                                 role_seed(ts, StreamRole::Centers));
    hit[t] = coverage_holds(grid, a, b) ? 1 : 0;
  });

  std::size_t hits = 0;
  for (std::uint8_t h : hit) hits += h;
  return static_cast<double>(hits) / static_cast<double>(trials);
}

double coverage_probability(std::uint64_t n, const TheoryParams& p, double r,
                            int trials, std::uint64_t seed, int threads) {
  return coverage_probability(Domain::unit_cube(p.d), n, p, r, trials, seed,
                              threads);
}

}  // namespace rgh
