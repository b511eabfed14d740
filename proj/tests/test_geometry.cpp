#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "rgh/geometry.hpp"
#include "rgh/rng.hpp"

using namespace rgh;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("box validation and basics") {
  CHECK_THROWS_AS(Box({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(Box({0.0}, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(Box({1.0}, {0.0}), std::invalid_argument);

  const Box b({0.0, 1.0}, {2.0, 5.0});
  CHECK(b.volume() == doctest::Approx(8.0));
  CHECK(b.diameter() == doctest::Approx(std::sqrt(4.0 + 16.0)));
  const std::vector<double> inside{1.0, 3.0};
  const std::vector<double> edge{2.0, 5.0};
  const std::vector<double> outside{2.1, 3.0};
  CHECK(b.contains(inside));
  CHECK(b.contains(edge));
  CHECK_FALSE(b.contains(outside));
}

TEST_CASE("measure matches clipped volume fraction") {
  const Domain d = Domain::unit_cube(2);
  CHECK(d.measure(Box::unit_cube(2)) == doctest::Approx(1.0));
  CHECK(d.measure(Box({0.0, 0.0}, {0.5, 0.5})) == doctest::Approx(0.25));
  CHECK(d.measure(Box({0.9, 0.0}, {1.3, 1.0})) == doctest::Approx(0.1));
  // Disjoint region contributes nothing.
  CHECK(d.measure(Box({2.0, 2.0}, {3.0, 3.0})) == 0.0);
}

TEST_CASE("measure is additive over disjoint boxes and monotone") {
  const Domain d(Box({0.0, 0.0}, {2.0, 1.0}));
  const Box left({0.0, 0.0}, {1.0, 1.0});
  const Box right({1.0, 0.0}, {2.0, 1.0});
  const Box whole({0.0, 0.0}, {2.0, 1.0});
  CHECK(d.measure(left) + d.measure(right) == doctest::Approx(d.measure(whole)));

  SplitMix64 rng(99);
  for (int rep = 0; rep < 50; ++rep) {
    const double ax = rng.uniform(0.0, 1.5), bx = ax + rng.uniform(0.01, 0.5);
    const double ay = rng.uniform(0.0, 0.8), by = ay + rng.uniform(0.01, 0.2);
    const Box small({ax, ay}, {bx, by});
    const Box big({ax - 0.1, ay - 0.1}, {bx + 0.1, by + 0.1});
    CHECK(d.measure(small) <= d.measure(big));
  }
}

TEST_CASE("f_min is the uniform density level") {
  CHECK(Domain::unit_cube(3).f_min() == doctest::Approx(1.0));
  CHECK(Domain(Box({0.0, 0.0}, {2.0, 2.0})).f_min() == doctest::Approx(0.25));
}

TEST_CASE("sample contracts: counts, containment, validation") {
  const Domain d = Domain::unit_cube(2);

  const PointSample empty = sample(d, SampleMode::Poisson, 0.0, 42);
  CHECK(empty.size() == 0);

  const PointSample seven = sample(d, SampleMode::Fixed, 7, 42);
  CHECK(seven.size() == 7);
  for (std::size_t i = 0; i < seven.size(); ++i) {
    CHECK(d.box().contains(seven.point(i)));
  }

  CHECK_THROWS_AS(sample(d, SampleMode::Fixed, -1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(sample(d, SampleMode::Poisson, -0.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(sample(d, SampleMode::Fixed, 2.5, 0), std::invalid_argument);
  CHECK_THROWS_AS(Domain::unit_cube(0), std::invalid_argument);
}

TEST_CASE("sampling is deterministic in all arguments") {
  const Domain d(Box({-1.0, 2.0, 0.0}, {3.0, 5.0, 1.0}));
  const PointSample a = sample(d, SampleMode::Poisson, 200.0, 7);
  const PointSample b = sample(d, SampleMode::Poisson, 200.0, 7);
  REQUIRE(a.size() == b.size());
  const auto da = a.data();
  const auto db = b.data();
  CHECK(std::equal(da.begin(), da.end(), db.begin()));

  const PointSample c = sample(d, SampleMode::Poisson, 200.0, 8);
  CHECK(a.size() != c.size());  // different stream; equal counts would be a fluke
}

TEST_CASE("poisson count statistics: mean and variance/mean ratio") {
  // Oracle: counts are Poisson(n) with mean n and variance n, so the mean of
  // `reps` draws lies within 5*sqrt(n/reps) of n (5 sigma).
  const int reps = 10000;
  SplitMix64 rng(1234);

  double sum = 0.0;
  for (int i = 0; i < reps; ++i) sum += static_cast<double>(poisson_draw(rng, 1000.0));
  const double mean = sum / reps;
  CHECK(std::abs(mean - 1000.0) <= 5.0 * std::sqrt(1000.0 / reps));

  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < reps; ++i) {
    const double x = static_cast<double>(poisson_draw(rng, 100.0));
    s += x;
    s2 += x * x;
  }
  const double m = s / reps;
  const double var = s2 / reps - m * m;
  CHECK(var / m >= 0.9);
  CHECK(var / m <= 1.1);
}

TEST_CASE("per-coordinate uniformity passes a KS test at alpha 0.001") {
  // Critical value for the two-sided KS statistic: 1.9495 / sqrt(m).
  const Domain d(Box({-1.0, 2.0}, {3.0, 5.0}));
  const int m = 20000;
  const PointSample s = sample(d, SampleMode::Fixed, m, 2024);

  for (std::size_t axis = 0; axis < 2; ++axis) {
    std::vector<double> u(m);
    for (int i = 0; i < m; ++i) {
      const double lo = d.box().lower()[axis];
      u[i] = (s.point(i)[axis] - lo) / d.box().side(axis);
    }
    std::sort(u.begin(), u.end());
    double dist = 0.0;
    for (int i = 0; i < m; ++i) {
      dist = std::max(dist, std::abs(u[i] - static_cast<double>(i) / m));
      dist = std::max(dist, std::abs(static_cast<double>(i + 1) / m - u[i]));
    }
    CHECK(dist < 1.9495 / std::sqrt(static_cast<double>(m)));
  }
}

TEST_CASE("points csv has header and one row per point") {
  const Domain d = Domain::unit_cube(2);
  const PointSample s = sample(d, SampleMode::Fixed, 3, 5);
  std::ostringstream out;
  write_points_csv(s, out);
  const std::string text = out.str();
  CHECK(text.rfind("x0,x1\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("from_points validates containment and dimension") {
  const Domain d = Domain::unit_cube(2);
  CHECK_THROWS_AS(PointSample::from_points(d, {Point{{0.5, 1.5}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PointSample::from_points(d, {Point{{0.5}}}),
                  std::invalid_argument);
  const PointSample s = PointSample::from_points(d, {Point{{0.5, 0.25}}});
  CHECK(s.size() == 1);
  CHECK(s.point(0)[1] == 0.25);
}

TEST_SUITE_END();
