#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

// Runs the built CLI with stdout captured to a file; stderr is discarded to
// keep doctest output readable.
RunResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out_file = dir / "stdout.txt";
  const std::string cmd = std::string(RGH_CLI_PATH) + " " + args + " > " +
                          out_file.string() + " 2>/dev/null";
  const int raw = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(out_file);
  std::stringstream buf;
  buf << in.rdbuf();
  res.stdout_text = buf.str();
  return res;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("rgh_cli_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static inline int counter = 0;
};

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("help exits 0 and lists every subcommand") {
  TempDir dir;
  const RunResult res = run_cli("--help", dir.path);
  CHECK(res.exit_code == 0);
  for (const char* sub : {"generate", "critical", "sweep", "theory", "validate"}) {
    CHECK(res.stdout_text.find(sub) != std::string::npos);
  }
}

TEST_CASE("unknown flags and missing subcommand exit 2") {
  TempDir dir;
  CHECK(run_cli("", dir.path).exit_code == 2);
  CHECK(run_cli("generate --radius 0.3 --bogus 1", dir.path).exit_code == 2);
}

TEST_CASE("generate writes the artifact set with the requested split") {
  TempDir dir;
  const std::string prefix = (dir.path / "gen").string();
  const RunResult res = run_cli(
      "generate --d 2 --n 10 --split 0.8 --radius 0.3 --seed 1 --out " + prefix,
      dir.path);
  REQUIRE(res.exit_code == 0);

  const auto meta = nlohmann::json::parse(slurp(prefix + "_meta.json"));
  CHECK(meta.at("n1") == 8);
  CHECK(meta.at("n2") == 2);
  CHECK(meta.at("seed") == 1);

  // 8 node rows + header; hypergraph header says nodes=8 hyperedges=2.
  const std::string nodes_csv = slurp(prefix + "_nodes.csv");
  CHECK(std::count(nodes_csv.begin(), nodes_csv.end(), '\n') == 9);
  CHECK(slurp(prefix + "_hypergraph.txt").rfind("nodes=8 hyperedges=2\n", 0) == 0);
  CHECK(fs::exists(prefix + "_edges.csv"));
  CHECK(fs::exists(prefix + "_hypergraph.json"));

  // Same flags, same bytes.
  const std::string prefix2 = (dir.path / "gen2").string();
  run_cli("generate --d 2 --n 10 --split 0.8 --radius 0.3 --seed 1 --out " +
              prefix2,
          dir.path);
  CHECK(slurp(prefix2 + "_nodes.csv") == nodes_csv);
  CHECK(slurp(prefix2 + "_hypergraph.txt") == slurp(prefix + "_hypergraph.txt"));
}

TEST_CASE("generate reports connectivity, optionally without empty centers") {
  TempDir dir;
  // A huge radius connects everything.
  const RunResult big = run_cli("generate --d 2 --n 12 --radius 2.0 --seed 5 "
                                "--out " + (dir.path / "big").string(),
                                dir.path);
  REQUIRE(big.exit_code == 0);
  CHECK(nlohmann::json::parse(big.stdout_text).at("connected") == true);

  // A tiny radius leaves isolated centers; ignoring them can only help.
  const std::string small_flags =
      "generate --d 2 --n 12 --radius 0.001 --seed 5 --out ";
  const RunResult small = run_cli(small_flags + (dir.path / "sm").string(),
                                  dir.path);
  REQUIRE(small.exit_code == 0);
  CHECK(nlohmann::json::parse(small.stdout_text).at("connected") == false);
  const RunResult ignoring = run_cli(small_flags + (dir.path / "sm2").string() +
                                         " --ignore-empty-centers",
                                     dir.path);
  REQUIRE(ignoring.exit_code == 0);
  CHECK(nlohmann::json::parse(ignoring.stdout_text)
            .at("ignore_empty_centers") == true);
}

TEST_CASE("generate rejects a zero radius") {
  TempDir dir;
  const RunResult res = run_cli(
      "generate --radius 0 --out " + (dir.path / "x").string(), dir.path);
  CHECK(res.exit_code == 2);
  CHECK_FALSE(fs::exists(dir.path / "x_nodes.csv"));
}

TEST_CASE("critical agrees across methods and honors points files") {
  TempDir dir;
  const RunResult exact = run_cli(
      "critical --d 2 --n 60 --seed 9 --method exact_bottleneck", dir.path);
  const RunResult bis =
      run_cli("critical --d 2 --n 60 --seed 9 --method bisection", dir.path);
  REQUIRE(exact.exit_code == 0);
  REQUIRE(bis.exit_code == 0);
  const auto je = nlohmann::json::parse(exact.stdout_text);
  const auto jb = nlohmann::json::parse(bis.stdout_text);
  const double tol = jb.at("tol").get<double>();
  CHECK(std::abs(je.at("r_star").get<double>() - jb.at("r_star").get<double>()) <=
        tol);
  CHECK(je.at("certificate").at("distance") == je.at("r_star"));

  // One node and one center at hand-picked positions: r_star is their distance.
  const fs::path points = dir.path / "pair.json";
  std::ofstream(points) << R"({"dim":2,"nodes":[[0.0,0.0]],"centers":[[0.3,0.4]]})";
  const RunResult pair =
      run_cli("critical --points-file " + points.string(), dir.path);
  REQUIRE(pair.exit_code == 0);
  CHECK(nlohmann::json::parse(pair.stdout_text).at("r_star").get<double>() ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("critical reports never-connects with exit code 3") {
  TempDir dir;
  const fs::path points = dir.path / "lonely.json";
  std::ofstream(points) << R"({"dim":2,"nodes":[[0.1,0.1],[0.9,0.9]],"centers":[]})";
  const RunResult res =
      run_cli("critical --points-file " + points.string(), dir.path);
  CHECK(res.exit_code == 3);
  CHECK(nlohmann::json::parse(res.stdout_text).at("never_connects") == true);
}

TEST_CASE("sweep smoke run emits all artifacts deterministically") {
  TempDir dir;
  const std::string prefix = (dir.path / "sw").string();
  const std::string flags =
      "sweep --d 2 --n-values 100,200 --trials 3 --seed 4 --out ";
  REQUIRE(run_cli(flags + prefix, dir.path).exit_code == 0);
  for (const char* suffix :
       {"_trials.csv", "_aggregate.csv", "_result.json", "_plot.svg"}) {
    CHECK(fs::exists(prefix + suffix));
  }
  const std::string svg = slurp(prefix + "_plot.svg");
  std::size_t polylines = 0;
  for (std::size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos;
       ++pos) {
    ++polylines;
  }
  CHECK(polylines == 3);
  CHECK(svg.find("stroke-dasharray=\"7,4\"") != std::string::npos);

  const std::string prefix2 = (dir.path / "sw2").string();
  REQUIRE(run_cli(flags + prefix2, dir.path).exit_code == 0);
  CHECK(slurp(prefix + "_trials.csv") == slurp(prefix2 + "_trials.csv"));
  CHECK(slurp(prefix + "_aggregate.csv") == slurp(prefix2 + "_aggregate.csv"));
  CHECK(slurp(prefix + "_result.json") == slurp(prefix2 + "_result.json"));
}

TEST_CASE("sweep config file with flag overrides") {
  TempDir dir;
  const fs::path config = dir.path / "config.json";
  std::ofstream(config) << R"({"d":2,"n_values":[100,200],"trials":2,)"
                        << R"("master_seed":11,"mode":"fixed"})";
  const std::string prefix = (dir.path / "cfg").string();
  REQUIRE(run_cli("sweep --config " + config.string() + " --trials 4 --out " +
                      prefix,
                  dir.path)
              .exit_code == 0);
  const auto result = nlohmann::json::parse(slurp(prefix + "_result.json"));
  CHECK(result.at("config").at("trials") == 4);       // flag wins
  CHECK(result.at("config").at("master_seed") == 11);  // file value kept
  CHECK(result.at("config").at("n_values").size() == 2);

  // Echoed configuration includes every defaulted value.
  CHECK(result.at("config").contains("method"));
  CHECK(result.at("config").contains("bisection_tol"));
  CHECK(result.at("config").contains("node_fraction"));
}

TEST_CASE("sweep validation failures exit 2") {
  TempDir dir;
  CHECK(run_cli("sweep --n-values 200,100 --trials 2 --seed 1 --out " +
                    (dir.path / "bad").string(),
                dir.path)
            .exit_code == 2);
  CHECK(run_cli("sweep --split 1.5 --trials 2 --seed 1 --out " +
                    (dir.path / "bad2").string(),
                dir.path)
            .exit_code == 2);
}

TEST_CASE("theory prints both radii and the derived constants") {
  TempDir dir;
  const RunResult res = run_cli(
      "theory --n 10000 --d 2 --split 0.8 --C 4.242640687119285 --f-min 1 "
      "--epsilon 1 --w loglog",
      dir.path);
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.stdout_text);
  CHECK(j.at("K").get<double>() == doctest::Approx(5.0));
  CHECK(j.at("gamma").get<double>() ==
        doctest::Approx(1.0 / 4.242640687119285).epsilon(1e-14));
  // 3*sqrt(2) passed explicitly: the frozen oracle values apply.
  CHECK(j.at("r_weak").get<double>() ==
        doctest::Approx(0.28791155473128487).epsilon(1e-12));
  CHECK(j.at("r_strong").get<double>() ==
        doctest::Approx(0.43100935947248513).epsilon(1e-12));

  CHECK(run_cli("theory --n 2", dir.path).exit_code == 2);
  CHECK(run_cli("theory --w bogus", dir.path).exit_code == 2);
}

TEST_CASE("validate prints the table and writes CSV") {
  TempDir dir;
  const fs::path csv = dir.path / "validate.csv";
  const RunResult res = run_cli(
      "validate --n-values 200,500 --d 2 --trials 10 --seed 3 --out " +
          csv.string(),
      dir.path);
  REQUIRE(res.exit_code == 0);
  CHECK(res.stdout_text.find("violations") != std::string::npos);
  CHECK(res.stdout_text.find("seed=3") != std::string::npos);
  const std::string table = slurp(csv);
  CHECK(table.rfind("n,r_strong,", 0) == 0);
  CHECK(std::count(table.begin(), table.end(), '\n') == 3);
}

TEST_SUITE_END();
