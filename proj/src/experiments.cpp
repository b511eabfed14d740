#include "rgh/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "rgh/format.hpp"
#include "rgh/hypergraph.hpp"
#include "rgh/parallel.hpp"
#include "rgh/theory.hpp"

namespace rgh {

std::vector<std::uint64_t> SweepConfig::default_n_values() {
  std::vector<std::uint64_t> values;
  for (int k = 0; k < 8; ++k) {
    const double exponent = 3.0 + static_cast<double>(k) / 7.0;
    values.push_back(static_cast<std::uint64_t>(std::llround(std::pow(10.0, exponent))));
  }
  return values;
}

void SweepConfig::validate() const {
  if (d < 1) throw std::invalid_argument("SweepConfig: d must be >= 1");
  if (trials < 1) throw std::invalid_argument("SweepConfig: trials must be >= 1");
  if (!(node_fraction > 0.0) || !(node_fraction < 1.0)) {
    throw std::invalid_argument("SweepConfig: split fractions must be positive and sum to 1");
  }
  if (n_values.size() < 1) {
    throw std::invalid_argument("SweepConfig: n_values must be nonempty");
  }
  std::uint64_t prev = 0;
  for (std::uint64_t n : n_values) {
    if (n < 10) throw std::invalid_argument("SweepConfig: every n must be >= 10");
    if (n <= prev) throw std::invalid_argument("SweepConfig: n_values must be strictly increasing");
    prev = n;
  }
  if (bisection_tol > 0.0 && !std::isfinite(bisection_tol)) {
    throw std::invalid_argument("SweepConfig: bisection_tol must be finite");
  }
}

namespace {

std::uint64_t node_count_for(std::uint64_t n, double node_fraction) {
  return static_cast<std::uint64_t>(std::llround(node_fraction * static_cast<double>(n)));
}

TrialRecord run_trial(const SweepConfig& config, const Domain& domain,
                      double tol, std::uint64_t n, int trial) {
  const auto t0 = std::chrono::steady_clock::now();

  TrialRecord rec;
  rec.n = n;
  rec.trial_index = trial;
  rec.seed = trial_seed(config.master_seed, n, static_cast<std::uint64_t>(trial));
  rec.n1 = node_count_for(n, config.node_fraction);
  rec.n2 = n - rec.n1;
  rec.method = config.method;

  const PointSample nodes =
      sample(domain, config.mode, static_cast<double>(rec.n1),
             role_seed(rec.seed, StreamRole::Nodes));
  const PointSample centers =
      sample(domain, config.mode, static_cast<double>(rec.n2),
             role_seed(rec.seed, StreamRole::Centers));

  CriticalRadiusResult res;
  if (nodes.size() == 0 || centers.size() == 0) {
    // Poisson mode can draw an empty side at small intensity; a bipartite
    // graph with one empty side has no finite critical radius.
    res.never_connects = true;
    res.r_star = std::numeric_limits<double>::quiet_NaN();
  } else if (config.method == ThresholdMethod::ExactBottleneck) {
    res = critical_radius_exact(nodes, centers);
  } else {
    res = critical_radius_bisection(nodes, centers, tol);
  }
  rec.r_star = res.r_star;
  rec.never_connects = res.never_connects;

  rec.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
  return rec;
}

}  // namespace

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  const Domain domain = Domain::unit_cube(static_cast<std::size_t>(config.d));
  const double tol = config.bisection_tol > 0.0
                         ? config.bisection_tol
                         : 1e-9 * domain.box().diameter();

  SweepResult result;
  result.config = config;

  const std::size_t per_level = static_cast<std::size_t>(config.trials);
  const std::size_t total = config.n_values.size() * per_level;
  result.trials.resize(total);

  parallel_for(total, config.threads, [&](std::size_t task) {
    const std::uint64_t n = config.n_values[task / per_level];
    const int trial = static_cast<int>(task % per_level);
    result.trials[task] = run_trial(config, domain, tol, n, trial);
  });

  // Aggregate sequentially in (n, trial) order.
  std::vector<std::pair<double, double>> mean_points, min_points, max_points;
  for (std::size_t level = 0; level < config.n_values.size(); ++level) {
    LevelAggregate agg;
    agg.n = config.n_values[level];
    double sum = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < per_level; ++t) {
      const TrialRecord& rec = result.trials[level * per_level + t];
      if (rec.never_connects) {
        ++agg.never_connects;
        continue;
      }
      ++agg.trials;
      sum += rec.r_star;
      lo = std::min(lo, rec.r_star);
      hi = std::max(hi, rec.r_star);
    }
    if (agg.trials > 0) {
      agg.mean_r = sum / agg.trials;
      agg.min_r = lo;
      agg.max_r = hi;
      const auto nd = static_cast<double>(agg.n);
      mean_points.emplace_back(nd, agg.mean_r);
      min_points.emplace_back(nd, agg.min_r);
      max_points.emplace_back(nd, agg.max_r);
    } else {
      agg.mean_r = agg.min_r = agg.max_r = std::numeric_limits<double>::quiet_NaN();
    }
    result.aggregates.push_back(agg);
  }

  if (mean_points.size() >= 2) {
    result.fit = fit_slope(mean_points);
    result.fit_min = fit_slope(min_points);
    result.fit_max = fit_slope(max_points);
  }
  return result;
}

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& n_and_mean) {
  if (n_and_mean.size() < 2) {
    throw std::invalid_argument("fit_slope: need at least two points");
  }
  std::vector<double> xs, ys;
  xs.reserve(n_and_mean.size());
  ys.reserve(n_and_mean.size());
  for (const auto& [n, mean] : n_and_mean) {
    if (!(n > 0.0) || !(mean > 0.0)) {
      throw std::invalid_argument("fit_slope: n and mean must be positive");
    }
    xs.push_back(std::log(n));
    ys.push_back(std::log(mean));
  }
  const std::size_t m = xs.size();
  double x_bar = 0.0, y_bar = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    x_bar += xs[i];
    y_bar += ys[i];
  }
  x_bar /= static_cast<double>(m);
  y_bar /= static_cast<double>(m);

  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - x_bar) * (xs[i] - x_bar);
    sxy += (xs[i] - x_bar) * (ys[i] - y_bar);
  }
  if (!(sxx > 0.0)) {
    throw std::invalid_argument("fit_slope: n values must be distinct");
  }

  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = y_bar - fit.slope * x_bar;
  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double resid = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += resid * resid;
  }
  fit.residual = std::sqrt(ss / static_cast<double>(m));
  return fit;
}

std::vector<ValidationRow> theorem_validation(
    const std::vector<std::uint64_t>& n_values, int d, int trials,
    std::uint64_t seed, int threads) {
  if (trials < 1) throw std::invalid_argument("theorem_validation: trials must be >= 1");
  std::uint64_t prev = 0;
  for (std::uint64_t n : n_values) {
    if (n <= prev) {
      throw std::invalid_argument("theorem_validation: n_values must be strictly increasing");
    }
    prev = n;
  }

  const TheoryParams params = TheoryParams::for_dimension(d);
  const Domain domain = Domain::unit_cube(static_cast<std::size_t>(d));

  std::vector<ValidationRow> rows;
  rows.reserve(n_values.size());
  for (std::uint64_t n : n_values) {
    const double r = radius_strong(n, params);
    const CoverageGrid grid = build_coverage_grid(domain, r, params);
    const double intensity_nodes = params.node_fraction * static_cast<double>(n);
    const double intensity_centers =
        (1.0 - params.node_fraction) * static_cast<double>(n);

    struct TrialOutcome {
      std::uint8_t covered = 0;
      std::uint8_t connected = 0;
    };
    std::vector<TrialOutcome> outcomes(trials);
    parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
      const std::uint64_t ts = trial_seed(seed, n, t);
      const PointSample a = sample(domain, SampleMode::Poisson, intensity_nodes,
                                   role_seed(ts, StreamRole::Nodes));
      const PointSample b = sample(domain, SampleMode::Poisson, intensity_centers,
                                   role_seed(ts, StreamRole::Centers));
      outcomes[t].covered = coverage_holds(grid, a, b) ? 1 : 0;
      outcomes[t].connected = bipartite_connected_at(a, b, 2.0 * r) ? 1 : 0;
    });

    ValidationRow row;
    row.n = n;
    row.r = r;
    row.trials = trials;
    int covered = 0, connected = 0;
    for (const TrialOutcome& o : outcomes) {
      covered += o.covered;
      connected += o.connected;
      if (o.covered && !o.connected) ++row.violations;
    }
    row.coverage_fraction = static_cast<double>(covered) / trials;
    row.connected_fraction = static_cast<double>(connected) / trials;
    rows.push_back(row);
  }
  return rows;
}

void write_trials_csv(const SweepResult& result, std::ostream& out) {
  out << "n,trial,seed,n1,n2,r_star,method,wall_time_ms\n";
  for (const TrialRecord& rec : result.trials) {
    out << rec.n << ',' << rec.trial_index << ',' << rec.seed << ',' << rec.n1
        << ',' << rec.n2 << ',' << format_double(rec.r_star) << ','
        << to_string(rec.method) << ",0\n";
  }
}

void write_aggregates_csv(const SweepResult& result, std::ostream& out) {
  out << "n,mean_r,min_r,max_r,trials\n";
  for (const LevelAggregate& agg : result.aggregates) {
    out << agg.n << ',' << format_double(agg.mean_r) << ','
        << format_double(agg.min_r) << ',' << format_double(agg.max_r) << ','
        << agg.trials << '\n';
  }
}

void write_validation_csv(const std::vector<ValidationRow>& rows,
                          std::ostream& out) {
  out << "n,r_strong,coverage_fraction,connected_fraction_2r,violations,trials\n";
  for (const ValidationRow& row : rows) {
    out << row.n << ',' << format_double(row.r) << ','
        << format_double(row.coverage_fraction) << ','
        << format_double(row.connected_fraction) << ',' << row.violations
        << ',' << row.trials << '\n';
  }
}

nlohmann::json sweep_config_to_json(const SweepConfig& config) {
  return nlohmann::json{
      {"d", config.d},
      {"n_values", config.n_values},
      {"trials", config.trials},
      {"node_fraction", config.node_fraction},
      {"center_fraction", 1.0 - config.node_fraction},
      {"mode", to_string(config.mode)},
      {"master_seed", config.master_seed},
      {"method", to_string(config.method)},
      {"bisection_tol", config.bisection_tol},
      {"threads", config.threads},
  };
}

SweepConfig sweep_config_from_json(const nlohmann::json& j) {
  SweepConfig config;
  if (j.contains("d")) config.d = j.at("d").get<int>();
  if (j.contains("n_values")) {
    config.n_values = j.at("n_values").get<std::vector<std::uint64_t>>();
  }
  if (j.contains("trials")) config.trials = j.at("trials").get<int>();
  if (j.contains("node_fraction")) {
    config.node_fraction = j.at("node_fraction").get<double>();
  }
  if (j.contains("mode")) {
    config.mode = sample_mode_from_string(j.at("mode").get<std::string>());
  }
  if (j.contains("master_seed")) {
    config.master_seed = j.at("master_seed").get<std::uint64_t>();
  }
  if (j.contains("method")) {
    config.method = threshold_method_from_string(j.at("method").get<std::string>());
  }
  if (j.contains("bisection_tol")) {
    config.bisection_tol = j.at("bisection_tol").get<double>();
  }
  if (j.contains("threads")) config.threads = j.at("threads").get<int>();
  return config;
}

namespace {

nlohmann::json slope_to_json(const SlopeFit& fit) {
  return nlohmann::json{{"slope", fit.slope},
                        {"intercept", fit.intercept},
                        {"residual", fit.residual}};
}

}  // namespace

nlohmann::json sweep_result_to_json(const SweepResult& result) {
  nlohmann::json aggregates = nlohmann::json::array();
  for (const LevelAggregate& agg : result.aggregates) {
    aggregates.push_back({{"n", agg.n},
                          {"mean_r", agg.mean_r},
                          {"min_r", agg.min_r},
                          {"max_r", agg.max_r},
                          {"trials", agg.trials},
                          {"never_connects", agg.never_connects}});
  }
  return nlohmann::json{{"config", sweep_config_to_json(result.config)},
                        {"aggregates", aggregates},
                        {"slope_fit", slope_to_json(result.fit)},
                        {"slope_fit_min", slope_to_json(result.fit_min)},
                        {"slope_fit_max", slope_to_json(result.fit_max)}};
}

}  // namespace rgh
