#ifndef RGH_EXPERIMENTS_HPP
#define RGH_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rgh/geometry.hpp"
#include "rgh/threshold.hpp"

namespace rgh {

// Monte Carlo sweep over n of the critical connectivity radius.
struct SweepConfig {
  int d = 2;
  std::vector<std::uint64_t> n_values = default_n_values();
  int trials = 50;
  double node_fraction = 0.8;  // center fraction is the complement
  SampleMode mode = SampleMode::Fixed;
  std::uint64_t master_seed = 0;
  ThresholdMethod method = ThresholdMethod::ExactBottleneck;
  double bisection_tol = 0.0;  // <= 0 selects 1e-9 * domain diameter
  int threads = 0;             // 0 selects the hardware count

  // 8 log-spaced integers in [10^3, 10^4].
  static std::vector<std::uint64_t> default_n_values();

  void validate() const;  // throws on invalid fields
};

struct TrialRecord {
  std::uint64_t n = 0;
  int trial_index = 0;
  std::uint64_t seed = 0;  // per-trial base seed; role streams derive from it
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  double r_star = 0.0;  // NaN when never_connects
  ThresholdMethod method = ThresholdMethod::ExactBottleneck;
  bool never_connects = false;
  double wall_time_ms = 0.0;  // measured; not part of the CSV artifact
};

struct LevelAggregate {
  std::uint64_t n = 0;
  double mean_r = 0.0;
  double min_r = 0.0;
  double max_r = 0.0;
  int trials = 0;           // successful trials aggregated
  int never_connects = 0;   // excluded trials
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS residual of the fit
};

struct SweepResult {
  SweepConfig config;
  std::vector<TrialRecord> trials;  // ordered by (n, trial_index)
  std::vector<LevelAggregate> aggregates;
  SlopeFit fit;      // through (log n, log mean r)
  SlopeFit fit_min;  // same through the per-n minima
  SlopeFit fit_max;  // and maxima
};

// Deterministic given the config (master seed included): identical output
// for any thread count. Never-connects trials are recorded, excluded from
// aggregates, and counted per level.
SweepResult run_sweep(const SweepConfig& config);

// Ordinary least squares through (log n, log mean_r). Needs >= 2 distinct
// n values and positive means.
SlopeFit fit_slope(const std::vector<std::pair<double, double>>& n_and_mean);

// Per-n validation of the coverage => connectivity implication at the
// doubled radius, with r from the strong bound and Poisson processes.
struct ValidationRow {
  std::uint64_t n = 0;
  double r = 0.0;  // radius_strong(n)
  double coverage_fraction = 0.0;
  double connected_fraction = 0.0;  // at radius 2r
  int violations = 0;  // coverage held but graph at 2r disconnected
  int trials = 0;
};

std::vector<ValidationRow> theorem_validation(
    const std::vector<std::uint64_t>& n_values, int d, int trials,
    std::uint64_t seed, int threads = 0);

// Artifact writers. Values are rendered with shortest round-trip formatting
// so equal configs produce byte-identical files; wall_time_ms is fixed at 0
// in the CSV to keep the artifact reproducible (timings go to the console).
void write_trials_csv(const SweepResult& result, std::ostream& out);
void write_aggregates_csv(const SweepResult& result, std::ostream& out);
void write_validation_csv(const std::vector<ValidationRow>& rows,
                          std::ostream& out);

nlohmann::json sweep_config_to_json(const SweepConfig& config);
SweepConfig sweep_config_from_json(const nlohmann::json& j);
nlohmann::json sweep_result_to_json(const SweepResult& result);

}  // namespace rgh

#endif
