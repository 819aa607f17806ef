#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wsn/cli.hpp"
#include "wsn/scenario.hpp"

namespace fs = std::filesystem;

namespace {

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "wsnsim");
  std::vector<char*> argv;
  argv.reserve(args.size());
  for (auto& a : args) argv.push_back(a.data());
  return wsn::run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::path("cli_test_out") / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("simulate writes the expected files and is reproducible") {
  auto d1 = fresh_dir("sim1");
  auto d2 = fresh_dir("sim2");
  const std::vector<std::string> base{"simulate", "--preset", "baseline",
                                      "--duration", "40", "--seed", "5"};
  auto run1 = base;
  run1.push_back("--out");
  run1.push_back(d1.string());
  auto run2 = base;
  run2.push_back("--out");
  run2.push_back(d2.string());

  CHECK(cli(run1) == 0);
  CHECK(fs::exists(d1 / "result.json"));
  CHECK(fs::exists(d1 / "lifetimes.csv"));
  CHECK(fs::exists(d1 / "manifest.json"));
  CHECK_FALSE(fs::exists(d1 / "events.log"));  // only with --events

  CHECK(cli(run2) == 0);
  // identical config + seed => byte-identical result and lifetime files
  CHECK(slurp(d1 / "result.json") == slurp(d2 / "result.json"));
  CHECK(slurp(d1 / "lifetimes.csv") == slurp(d2 / "lifetimes.csv"));

  // the result file embeds the full effective config, replayable as-is
  auto j = nlohmann::json::parse(slurp(d1 / "result.json"));
  REQUIRE(j.contains("config"));
  CHECK(j["config"]["node_count"] == 100);
  CHECK(j["config"]["duration_s"] == 40.0);
  CHECK(j["config"]["seed"] == 5);
  REQUIRE(j.contains("techniques"));
  CHECK(j["techniques"].size() == 2);  // the baseline preset runs both

  // manifests carry the wall clock and so may differ; but they must parse
  // and list the files they claim to have written
  auto m = nlohmann::json::parse(slurp(d1 / "manifest.json"));
  REQUIRE(m["command"].is_array());  // the verbatim argv
  CHECK(m["command"][1] == "simulate");
  for (const auto& f : m["outputs"]) {
    CHECK(fs::exists(d1 / f.get<std::string>()));
  }
}

TEST_CASE("simulate --events writes an event log") {
  auto dir = fresh_dir("events");
  CHECK(cli({"simulate", "--preset", "baseline", "--duration", "20",
             "--events", "--out", dir.string()}) == 0);
  CHECK(fs::exists(dir / "events.log"));
  CHECK(fs::file_size(dir / "events.log") > 0);
}

TEST_CASE("config file input and flag overrides") {
  auto dir = fresh_dir("cfgfile");
  wsn::ScenarioConfig cfg;
  cfg.node_count = 15;
  cfg.duration_s = 25.0;
  cfg.technique = wsn::TechniqueChoice::Improved;
  cfg.seed = 9;
  const fs::path cfg_path = dir / "scenario.json";
  {
    std::ofstream out(cfg_path);
    out << wsn::scenario_to_json(cfg).dump(2) << "\n";
  }
  CHECK(cli({"simulate", "--config", cfg_path.string(), "--seed", "77",
             "--out", dir.string()}) == 0);
  auto j = nlohmann::json::parse(slurp(dir / "result.json"));
  CHECK(j["config"]["node_count"] == 15);
  CHECK(j["config"]["seed"] == 77);  // the flag wins over the file
}

TEST_CASE("bad invocations exit with the config-error code") {
  auto dir = fresh_dir("bad");
  CHECK(cli({"simulate", "--preset", "baseline", "--nodes", "0", "--out",
             dir.string()}) == 1);
  CHECK(cli({"simulate", "--preset", "no-such-preset", "--out",
             dir.string()}) == 1);
  CHECK(cli({"simulate", "--config", (dir / "missing.json").string(), "--out",
             dir.string()}) == 1);
  // config file and preset are mutually exclusive
  wsn::ScenarioConfig cfg;
  const fs::path cfg_path = dir / "s.json";
  {
    std::ofstream out(cfg_path);
    out << wsn::scenario_to_json(cfg).dump() << "\n";
  }
  CHECK(cli({"simulate", "--config", cfg_path.string(), "--preset", "baseline",
             "--out", dir.string()}) == 1);
  CHECK(cli({"report", (dir / "missing.json").string()}) == 1);
}

TEST_CASE("the output directory honours the environment variable") {
  auto dir = fresh_dir("envout");
  setenv("WSNSIM_OUT", dir.string().c_str(), 1);
  CHECK(cli({"simulate", "--preset", "baseline", "--duration", "10"}) == 0);
  unsetenv("WSNSIM_OUT");
  CHECK(fs::exists(dir / "result.json"));
}

TEST_CASE("compare reports the exact install saving") {
  auto dir = fresh_dir("compare");
  wsn::ScenarioConfig cfg;
  cfg.node_count = 20;
  cfg.duration_s = 20.0;
  cfg.e_p_j = 0.5;
  cfg.seed = 6;
  const fs::path cfg_path = dir / "scenario.json";
  {
    std::ofstream out(cfg_path);
    out << wsn::scenario_to_json(cfg).dump() << "\n";
  }
  CHECK(cli({"compare", "--config", cfg_path.string(), "--out",
             dir.string()}) == 0);
  CHECK(fs::exists(dir / "compare.csv"));
  auto j = nlohmann::json::parse(slurp(dir / "compare_summary.json"));
  // 20 sensors: 4 layer-1 heads + 1 layer-2 head + 1 regional = 6 installs,
  // so the flat model pays for 14 more programs
  CHECK(j["installs_hierarchical"] == 6);
  CHECK(j["installs_flat"] == 20);
  CHECK(j["energy_saved_j"] == doctest::Approx(14 * 0.5));
  CHECK(j["total_delta_s"].get<double>() >= 0.0);
  CHECK(j.contains("argmax_node"));

  // header + one row per sensor + the totals row
  std::istringstream csv(slurp(dir / "compare.csv"));
  std::string line, last;
  int lines = 0;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    ++lines;
    last = line;
  }
  CHECK(lines == 22);
  CHECK(last.rfind("total,", 0) == 0);
}

TEST_CASE("radius sweep over a small scenario produces the full grid") {
  auto dir = fresh_dir("sweep");
  wsn::ScenarioConfig cfg;
  cfg.node_count = 30;
  cfg.duration_s = 30.0;
  cfg.attacker_fraction = 0.1;
  cfg.attack_rate = 0.8;
  cfg.e_p_j = 0.5;
  const fs::path cfg_path = dir / "scenario.json";
  {
    std::ofstream out(cfg_path);
    out << wsn::scenario_to_json(cfg).dump() << "\n";
  }
  CHECK(cli({"radius-sweep", "--config", cfg_path.string(), "--thresholds",
             "-60,-75", "--seeds", "1,2", "--workers", "1", "--out",
             dir.string()}) == 0);

  std::istringstream csv(slurp(dir / "radius_sweep.csv"));
  std::string header;
  REQUIRE(std::getline(csv, header));
  CHECK(header == "threshold_db,technique,mean_error_ratio");
  int rows = 0;
  std::string line;
  while (std::getline(csv, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 4);  // 2 thresholds x 2 techniques

  std::istringstream runs(slurp(dir / "radius_sweep_runs.csv"));
  REQUIRE(std::getline(runs, header));
  rows = 0;
  while (std::getline(runs, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 8);  // ... x 2 seeds
}

TEST_CASE("detection matrix subcommand succeeds and can save its table") {
  auto dir = fresh_dir("t3");
  CHECK(cli({"table3", "--write", "--out", dir.string()}) == 0);
  CHECK(fs::exists(dir / "table3.csv"));
  std::istringstream csv(slurp(dir / "table3.csv"));
  std::string line;
  int rows = 0;
  while (std::getline(csv, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 7);  // header + six situations
}

TEST_CASE("report summarizes and replays a result file") {
  auto dir = fresh_dir("report");
  REQUIRE(cli({"simulate", "--preset", "baseline", "--duration", "15", "--out",
               dir.string()}) == 0);
  CHECK(cli({"report", (dir / "result.json").string()}) == 0);
  CHECK(cli({"report", (dir / "result.json").string(), "--replay"}) == 0);
}

TEST_CASE("a result file can seed a new run via --config") {
  auto dir = fresh_dir("chain");
  REQUIRE(cli({"simulate", "--preset", "baseline", "--duration", "15", "--out",
               dir.string()}) == 0);
  auto d2 = fresh_dir("chain2");
  // feeding the result back in reuses its embedded config
  CHECK(cli({"simulate", "--config", (dir / "result.json").string(), "--out",
             d2.string()}) == 0);
  CHECK(slurp(dir / "result.json") == slurp(d2 / "result.json"));
}
