#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rgh/experiments.hpp"
#include "rgh/format.hpp"
#include "rgh/geometry.hpp"
#include "rgh/hypergraph.hpp"
#include "rgh/plot.hpp"
#include "rgh/theory.hpp"
#include "rgh/threshold.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNeverConnects = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t pick_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void write_file(const std::string& path, const std::string& content,
                std::vector<std::string>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("short write to " + path);
  written.push_back(path);
}

void remove_partial(const std::vector<std::string>& written) {
  for (const std::string& path : written) {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return j;
}

nlohmann::json certificate_json(const rgh::CriticalRadiusResult& res) {
  if (!res.certificate) return nullptr;
  return nlohmann::json{{"node", res.certificate->node},
                        {"center", res.certificate->center},
                        {"distance", res.certificate->distance}};
}

// ---- generate ---------------------------------------------------------------

struct GenerateArgs {
  int d = 2;
  std::uint64_t n = 100;
  double split = 0.8;
  double radius = 0.0;
  std::optional<std::uint64_t> seed;
  std::string out = "rgh";
  bool ignore_empty_centers = false;
};

int cmd_generate(const GenerateArgs& args) {
  if (!(args.radius > 0.0)) {
    throw std::invalid_argument("generate: radius must be positive");
  }
  if (!(args.split > 0.0) || !(args.split < 1.0)) {
    throw std::invalid_argument("generate: split must be in (0, 1)");
  }
  const std::uint64_t seed = pick_seed(args.seed);
  const auto n1 = static_cast<std::uint64_t>(
      std::llround(args.split * static_cast<double>(args.n)));
  const std::uint64_t n2 = args.n - n1;

  const rgh::Domain domain = rgh::Domain::unit_cube(args.d);
  const rgh::PointSample nodes =
      rgh::sample(domain, rgh::SampleMode::Fixed, static_cast<double>(n1),
                  rgh::role_seed(seed, rgh::StreamRole::Nodes));
  const rgh::PointSample centers =
      rgh::sample(domain, rgh::SampleMode::Fixed, static_cast<double>(n2),
                  rgh::role_seed(seed, rgh::StreamRole::Centers));
  const rgh::BipartiteGeometricGraph graph =
      rgh::build_bipartite(nodes, centers, args.radius);
  const rgh::Hypergraph hyper = rgh::to_hypergraph(graph);

  const nlohmann::json meta{
      {"command", "generate"},
      {"d", args.d},
      {"n", args.n},
      {"n1", n1},
      {"n2", n2},
      {"split", args.split},
      {"radius", args.radius},
      {"seed", seed},
      {"edges", graph.edge_count()},
      {"ignore_empty_centers", args.ignore_empty_centers},
      {"connected", rgh::is_connected(graph, args.ignore_empty_centers)}};

  std::ostringstream nodes_csv, centers_csv, edges_csv;
  rgh::write_points_csv(nodes, nodes_csv);
  rgh::write_points_csv(centers, centers_csv);
  rgh::write_edges_csv(graph, edges_csv);

  std::vector<std::string> written;
  try {
    write_file(args.out + "_nodes.csv", nodes_csv.str(), written);
    write_file(args.out + "_centers.csv", centers_csv.str(), written);
    write_file(args.out + "_edges.csv", edges_csv.str(), written);
    write_file(args.out + "_hypergraph.txt", rgh::hypergraph_to_text(hyper),
               written);
    write_file(args.out + "_hypergraph.json",
               rgh::hypergraph_to_json(hyper).dump(2) + "\n", written);
    write_file(args.out + "_meta.json", meta.dump(2) + "\n", written);
  } catch (...) {
    remove_partial(written);
    throw;
  }

  std::cout << meta.dump(2) << std::endl;
  return kExitOk;
}

// ---- critical ---------------------------------------------------------------

struct CriticalArgs {
  int d = 2;
  std::uint64_t n = 100;
  double split = 0.8;
  std::optional<std::uint64_t> seed;
  std::string method = "exact_bottleneck";
  double tol = 0.0;  // <= 0 selects 1e-9 * diameter
  std::string points_file;
};

std::pair<rgh::PointSample, rgh::PointSample> load_points_file(
    const std::string& path) {
  const nlohmann::json j = load_json_file(path);
  const auto dim = j.at("dim").get<std::size_t>();

  rgh::Domain domain = rgh::Domain::unit_cube(dim);
  if (j.contains("lower") || j.contains("upper")) {
    domain = rgh::Domain(rgh::Box(j.at("lower").get<std::vector<double>>(),
                                  j.at("upper").get<std::vector<double>>()));
  }
  auto parse_side = [&](const char* key) {
    std::vector<rgh::Point> pts;
    for (const auto& row : j.at(key)) {
      pts.push_back(rgh::Point{row.get<std::vector<double>>()});
    }
    return rgh::PointSample::from_points(domain, pts);
  };
  return {parse_side("nodes"), parse_side("centers")};
}

int cmd_critical(const CriticalArgs& args) {
  const std::uint64_t seed = pick_seed(args.seed);
  const rgh::ThresholdMethod method =
      rgh::threshold_method_from_string(args.method);

  std::optional<std::pair<rgh::PointSample, rgh::PointSample>> instance;
  if (!args.points_file.empty()) {
    instance = load_points_file(args.points_file);
  } else {
    if (!(args.split > 0.0) || !(args.split < 1.0)) {
      throw std::invalid_argument("critical: split must be in (0, 1)");
    }
    const rgh::Domain domain = rgh::Domain::unit_cube(args.d);
    const auto n1 = static_cast<std::uint64_t>(
        std::llround(args.split * static_cast<double>(args.n)));
    const std::uint64_t n2 = args.n - n1;
    instance.emplace(
        rgh::sample(domain, rgh::SampleMode::Fixed, static_cast<double>(n1),
                    rgh::role_seed(seed, rgh::StreamRole::Nodes)),
        rgh::sample(domain, rgh::SampleMode::Fixed, static_cast<double>(n2),
                    rgh::role_seed(seed, rgh::StreamRole::Centers)));
  }
  const rgh::PointSample& nodes = instance->first;
  const rgh::PointSample& centers = instance->second;

  const double tol =
      args.tol > 0.0 ? args.tol : 1e-9 * nodes.domain().box().diameter();
  const rgh::CriticalRadiusResult res =
      method == rgh::ThresholdMethod::ExactBottleneck
          ? rgh::critical_radius_exact(nodes, centers)
          : rgh::critical_radius_bisection(nodes, centers, tol);

  const nlohmann::json out{{"command", "critical"},
                           {"d", nodes.dim()},
                           {"n1", nodes.size()},
                           {"n2", centers.size()},
                           {"seed", seed},
                           {"method", rgh::to_string(res.method)},
                           {"tol", tol},
                           {"r_star", res.r_star},
                           {"iterations", res.iterations},
                           {"certificate", certificate_json(res)},
                           {"never_connects", res.never_connects}};
  std::cout << out.dump(2) << std::endl;
  if (res.never_connects) {
    std::cerr << "never connects: one bipartite side is empty\n";
    return kExitNeverConnects;
  }
  return kExitOk;
}

// ---- sweep ------------------------------------------------------------------

struct SweepArgs {
  std::string config_file;
  std::string out = "sweep";
  CLI::App* app = nullptr;
  int d = 2;
  std::vector<std::uint64_t> n_values;
  int trials = 50;
  double split = 0.8;
  std::string mode = "fixed";
  std::optional<std::uint64_t> seed;
  std::string method = "exact_bottleneck";
  double tol = 0.0;
  int threads = 0;
};

int cmd_sweep(const SweepArgs& args) {
  rgh::SweepConfig config;
  bool seed_from_file = false;
  if (!args.config_file.empty()) {
    const nlohmann::json j = load_json_file(args.config_file);
    config = rgh::sweep_config_from_json(j);
    seed_from_file = j.contains("master_seed");
  }
  // Flags override file values only when present on the command line.
  const CLI::App* app = args.app;
  if (app->count("--d")) config.d = args.d;
  if (app->count("--n-values")) config.n_values = args.n_values;
  if (app->count("--trials")) config.trials = args.trials;
  if (app->count("--split")) config.node_fraction = args.split;
  if (app->count("--mode")) config.mode = rgh::sample_mode_from_string(args.mode);
  if (app->count("--method")) {
    config.method = rgh::threshold_method_from_string(args.method);
  }
  if (app->count("--tol")) config.bisection_tol = args.tol;
  if (app->count("--threads")) config.threads = args.threads;
  if (app->count("--seed")) {
    config.master_seed = *args.seed;
  } else if (!seed_from_file) {
    config.master_seed = pick_seed(std::nullopt);
    std::cerr << "no seed given; using master_seed=" << config.master_seed << "\n";
  }
  config.validate();

  const auto t0 = std::chrono::steady_clock::now();
  const rgh::SweepResult result = rgh::run_sweep(config);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  int skipped = 0;
  for (const rgh::LevelAggregate& agg : result.aggregates) {
    skipped += agg.never_connects;
  }
  if (skipped > 0) {
    std::cerr << "warning: " << skipped
              << " never-connects trial(s) excluded from aggregates\n";
  }

  std::ostringstream trials_csv, agg_csv, svg;
  rgh::write_trials_csv(result, trials_csv);
  rgh::write_aggregates_csv(result, agg_csv);
  bool have_plot = true;
  try {
    rgh::write_sweep_svg(result, svg);
  } catch (const std::invalid_argument&) {
    have_plot = false;
    std::cerr << "warning: too few aggregated levels to plot\n";
  }

  std::vector<std::string> written;
  try {
    write_file(args.out + "_trials.csv", trials_csv.str(), written);
    write_file(args.out + "_aggregate.csv", agg_csv.str(), written);
    write_file(args.out + "_result.json",
               rgh::sweep_result_to_json(result).dump(2) + "\n", written);
    if (have_plot) write_file(args.out + "_plot.svg", svg.str(), written);
  } catch (...) {
    remove_partial(written);
    throw;
  }

  std::cout << rgh::sweep_result_to_json(result).dump(2) << std::endl;
  std::cerr << "sweep finished in " << rgh::format_double(elapsed) << " s\n";
  return kExitOk;
}

// ---- theory -----------------------------------------------------------------

struct TheoryArgs {
  std::uint64_t n = 1000;
  int d = 2;
  double split = 0.8;
  double C = 0.0;
  double f_min = 1.0;
  double epsilon = 1.0;
  std::string w = "loglog";
  double w_value = 1.0;
};

int cmd_theory(const TheoryArgs& args) {
  rgh::TheoryParams p;
  p.d = args.d;
  p.node_fraction = args.split;
  p.C = args.C;
  p.f_min = args.f_min;
  p.epsilon = args.epsilon;
  p.w = rgh::GrowthFn{rgh::growth_kind_from_string(args.w), args.w_value};
  p.validate();

  const nlohmann::json out{{"command", "theory"},
                           {"n", args.n},
                           {"d", p.d},
                           {"node_fraction", p.node_fraction},
                           {"K", p.K()},
                           {"C", p.effective_C()},
                           {"gamma", p.gamma()},
                           {"f_min", p.f_min},
                           {"epsilon", p.epsilon},
                           {"w", rgh::to_string(p.w.kind)},
                           {"r_weak", rgh::radius_weak(args.n, p)},
                           {"r_strong", rgh::radius_strong(args.n, p)}};
  std::cout << out.dump(2) << std::endl;
  return kExitOk;
}

// ---- validate ---------------------------------------------------------------

struct ValidateArgs {
  std::vector<std::uint64_t> n_values{1000, 3000, 10000};
  int d = 2;
  int trials = 50;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  std::string out;
};

int cmd_validate(const ValidateArgs& args) {
  const std::uint64_t seed = pick_seed(args.seed);
  const auto rows = rgh::theorem_validation(args.n_values, args.d, args.trials,
                                            seed, args.threads);

  std::cout << "seed=" << seed << "\n";
  std::cout << "n\tr_strong\tcoverage\tconnected_2r\tviolations\n";
  for (const rgh::ValidationRow& row : rows) {
    std::cout << row.n << '\t' << rgh::format_double(row.r) << '\t'
              << rgh::format_double(row.coverage_fraction) << '\t'
              << rgh::format_double(row.connected_fraction) << '\t'
              << row.violations << "\n";
  }

  if (!args.out.empty()) {
    std::ostringstream csv;
    rgh::write_validation_csv(rows, csv);
    std::vector<std::string> written;
    try {
      write_file(args.out, csv.str(), written);
    } catch (...) {
      remove_partial(written);
      throw;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"random geometric hypergraphs: generation, connectivity "
               "thresholds, and radius-bound validation"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand(
      "generate", "sample a bipartite geometric graph and write its files");
  generate->add_option("--d", gen.d, "dimension")->capture_default_str();
  generate->add_option("--n", gen.n, "total points (nodes + centers)")
      ->capture_default_str();
  generate->add_option("--split", gen.split, "node fraction of n")
      ->capture_default_str();
  generate->add_option("--radius", gen.radius, "connection radius (strict)")
      ->required();
  generate->add_option("--seed", gen.seed, "master seed (random if omitted)");
  generate->add_option("--out", gen.out, "output file prefix")
      ->capture_default_str();
  generate->add_flag("--ignore-empty-centers", gen.ignore_empty_centers,
                     "report connectivity of the subgraph without degree-0 "
                     "centers");

  CriticalArgs crit;
  CLI::App* critical = app.add_subcommand(
      "critical", "critical connectivity radius of one instance");
  critical->add_option("--d", crit.d, "dimension")->capture_default_str();
  critical->add_option("--n", crit.n, "total points")->capture_default_str();
  critical->add_option("--split", crit.split, "node fraction")
      ->capture_default_str();
  critical->add_option("--seed", crit.seed, "master seed (random if omitted)");
  critical->add_option("--method", crit.method, "exact_bottleneck | bisection")
      ->capture_default_str();
  critical->add_option("--tol", crit.tol, "bisection tolerance (0: 1e-9*diameter)")
      ->capture_default_str();
  critical->add_option("--points-file", crit.points_file,
                       "JSON {dim, nodes, centers[, lower, upper]} instead of "
                       "sampling");

  SweepArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Monte Carlo sweep of the critical radius over n");
  sweep.app = sweep_cmd;
  sweep_cmd->add_option("--config", sweep.config_file, "JSON config file");
  sweep_cmd->add_option("--out", sweep.out, "output file prefix")
      ->capture_default_str();
  sweep_cmd->add_option("--d", sweep.d, "dimension")->capture_default_str();
  sweep_cmd
      ->add_option("--n-values", sweep.n_values,
                   "comma-separated n values (default: 8 log-spaced in [1e3,1e4])")
      ->delimiter(',');
  sweep_cmd->add_option("--trials", sweep.trials, "trials per n")
      ->capture_default_str();
  sweep_cmd->add_option("--split", sweep.split, "node fraction")
      ->capture_default_str();
  sweep_cmd->add_option("--mode", sweep.mode, "fixed | poisson")
      ->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed, "master seed (random if omitted)");
  sweep_cmd->add_option("--method", sweep.method, "exact_bottleneck | bisection")
      ->capture_default_str();
  sweep_cmd->add_option("--tol", sweep.tol, "bisection tolerance (0: 1e-9*diameter)")
      ->capture_default_str();
  sweep_cmd->add_option("--threads", sweep.threads, "worker cap (0: hardware)")
      ->capture_default_str();

  TheoryArgs theo;
  CLI::App* theory =
      app.add_subcommand("theory", "radius bounds from the coverage analysis");
  theory->add_option("--n", theo.n, "total intensity n")->capture_default_str();
  theory->add_option("--d", theo.d, "dimension")->capture_default_str();
  theory->add_option("--split", theo.split, "node fraction")
      ->capture_default_str();
  theory->add_option("--C", theo.C, "diameter constant (0: default for d)")
      ->capture_default_str();
  theory->add_option("--f-min", theo.f_min, "density minimum")
      ->capture_default_str();
  theory->add_option("--epsilon", theo.epsilon, "strong-bound epsilon")
      ->capture_default_str();
  theory->add_option("--w", theo.w, "weak-bound growth: constant | loglog | sqrtlog")
      ->capture_default_str();
  theory->add_option("--w-value", theo.w_value, "value for constant w")
      ->capture_default_str();

  ValidateArgs val;
  CLI::App* validate = app.add_subcommand(
      "validate", "coverage => connectivity-at-2r check over n");
  validate->add_option("--n-values", val.n_values, "comma-separated n values")
      ->delimiter(',')
      ->capture_default_str();
  validate->add_option("--d", val.d, "dimension")->capture_default_str();
  validate->add_option("--trials", val.trials, "trials per n")
      ->capture_default_str();
  validate->add_option("--seed", val.seed, "master seed (random if omitted)");
  validate->add_option("--threads", val.threads, "worker cap (0: hardware)")
      ->capture_default_str();
  validate->add_option("--out", val.out, "also write the table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (critical->parsed()) return cmd_critical(crit);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep);
    if (theory->parsed()) return cmd_theory(theo);
    if (validate->parsed()) return cmd_validate(val);
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitValidation;
}
