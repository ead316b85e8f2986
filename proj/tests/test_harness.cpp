#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oscatter/emit.hpp"
#include "oscatter/sweep.hpp"

using namespace oscatter;

namespace {

// A deliberately coarse, fast configuration: harness behavior (schemas,
// determinism, serialization) does not depend on numerical accuracy.
ExperimentConfig tiny_config() {
  ExperimentConfig c;
  c.slow_nodes = 201;
  c.max_mode = 4;
  c.y_coefficients = {Complex(1.0, 0.0), Complex(0.5, 0.0)};
  c.epsilons = {0.4, 0.35};
  c.points_per_period = 10;
  c.expansion_order = 2;
  c.jobs = 1;
  c.write_svg = true;
  c.out_dir = "harness_out";
  c.basename = "tiny";
  return c;
}

const SweepResult& tiny_sweep() {
  static const SweepResult res = run_sweep(tiny_config());
  return res;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

int count_occurrences(const std::string& hay, const std::string& needle) {
  int n = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("config serialization round-trips and hashes its content") {
  const ExperimentConfig c = tiny_config();
  const ExperimentConfig back = ExperimentConfig::from_json(c.to_json());
  CHECK(back.to_json() == c.to_json());
  CHECK(back.hash() == c.hash());

  ExperimentConfig changed = c;
  changed.energy = 2.0;
  CHECK(changed.hash() != c.hash());

  ExperimentConfig bad = c;
  bad.epsilons = {0.1, 0.2};
  CHECK_THROWS_AS(bad.validate(), ConfigInvalid);
  bad = c;
  bad.points_per_period = 9;
  CHECK_THROWS_AS(bad.validate(), ConfigInvalid);
  bad = c;
  bad.problem = "spectral";
  CHECK_THROWS_AS(bad.validate(), ConfigInvalid);
  bad = c;
  bad.norm_window = 4.5;
  CHECK_THROWS_AS(bad.validate(), ConfigInvalid);

  // a typo or a foreign block must not silently fall back to defaults
  Json misspelled = c.to_json();
  misspelled["epsilon"] = {0.4, 0.35};
  CHECK_THROWS_AS(ExperimentConfig::from_json(misspelled), ConfigInvalid);
  Json foreign = c.to_json();
  foreign["grid"]["ppw"] = 20;
  CHECK_THROWS_AS(ExperimentConfig::from_json(foreign), ConfigInvalid);
  CHECK_THROWS_AS(ExperimentConfig::from_json(Json::array()), ConfigInvalid);
}

TEST_CASE("source sweep fills the declared schema") {
  const SweepResult& res = tiny_sweep();
  CHECK(res.kind == "source_sweep");

  const std::vector<std::string> want = {
      "err_h0_p0", "err_h1_p0", "err_sup_p0", "err_h0_p1", "err_h1_p1",
      "err_sup_p1", "err_h0_p2", "err_h1_p2", "err_sup_p2", "disc_sup",
      "residual_direct"};
  CHECK(res.columns == want);
  CHECK(is_rate_column("err_h0_p0"));
  CHECK(is_rate_column("disc_sup"));
  CHECK(is_rate_column("amp_sup_p1"));
  CHECK(!is_rate_column("residual_direct"));
  CHECK(!is_rate_column("flux_kp"));

  REQUIRE(res.rows.size() == 2);
  CHECK(res.rows[0].eps == 0.4);
  CHECK(res.rows[1].eps == 0.35);
  CHECK(res.rows[0].fine_nodes == 201);
  CHECK(res.rows[1].fine_nodes == 230);
  for (const SweepRow& row : res.rows) {
    REQUIRE(row.values.size() == want.size());
    for (double v : row.values) CHECK(std::isfinite(v));
  }
  CHECK(!res.config_hash.empty());
  CHECK(res.config_echo.at("energy").get<double>() == 1.0);

  // two epsilons are too few for a slope, but the errors are far above the
  // floor, so this must read as "unfitted", never as an exact collapse
  CHECK(!res.exact_case);
  for (const auto& [name, cf] : res.fits) {
    (void)name;
    CHECK(!cf.fitted);
  }

  ExperimentConfig wrong = tiny_config();
  wrong.problem = "plane_wave";
  CHECK_THROWS_AS(run_sweep(wrong), WrongProblemKind);
}

TEST_CASE("csv is byte-stable and reproduces every double") {
  const SweepResult& res = tiny_sweep();
  const std::string csv = sweep_csv(res);
  const std::vector<std::string> lines = split(csv, '\n');
  REQUIRE(lines.size() == 3);  // header + one line per eps
  CHECK(lines[0] == "eps,fine_nodes,err_h0_p0,err_h1_p0,err_sup_p0,"
                    "err_h0_p1,err_h1_p1,err_sup_p1,"
                    "err_h0_p2,err_h1_p2,err_sup_p2,disc_sup,residual_direct");

  for (std::size_t r = 0; r < res.rows.size(); ++r) {
    const std::vector<std::string> cells = split(lines[r + 1], ',');
    REQUIRE(cells.size() == res.columns.size() + 2);
    CHECK(std::strtod(cells[0].c_str(), nullptr) == res.rows[r].eps);
    CHECK(std::stoi(cells[1]) == res.rows[r].fine_nodes);
    for (std::size_t j = 0; j < res.rows[r].values.size(); ++j)
      CHECK(std::strtod(cells[j + 2].c_str(), nullptr) == res.rows[r].values[j]);
  }

  // a second identical run must emit identical bytes
  const SweepResult again = run_sweep(tiny_config());
  CHECK(sweep_csv(again) == csv);
}

TEST_CASE("scheduling does not leak into the results") {
  ExperimentConfig threaded = tiny_config();
  threaded.jobs = 4;
  const SweepResult res = run_sweep(threaded);
  CHECK(sweep_csv(res) == sweep_csv(tiny_sweep()));
}

TEST_CASE("json record round-trips through the reader") {
  const SweepResult& res = tiny_sweep();
  const Json j = sweep_json(res);
  CHECK(j.at("schema_version").get<int>() == 1);
  CHECK(j.at("code_version").get<std::string>() == kCodeVersion);
  const SweepResult back = sweep_from_json(j);
  CHECK(sweep_json(back) == j);
  CHECK(sweep_csv(back) == sweep_csv(res));

  Json broken = j;
  broken["rows"][0]["values"] = {1.0};  // width no longer matches columns
  CHECK_THROWS_AS(sweep_from_json(broken), ConfigInvalid);
  CHECK_THROWS_AS(sweep_from_json(Json::object()), ConfigInvalid);
}

TEST_CASE("rate plot draws every error series") {
  const SweepResult& res = tiny_sweep();
  const std::string svg = rate_plot_svg(res);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.rfind("</svg>") != std::string::npos);

  int rate_columns = 0;
  for (const std::string& name : res.columns)
    if (is_rate_column(name)) ++rate_columns;
  CHECK(count_occurrences(svg, "class=\"data\"") == rate_columns);

  int fitted = 0;
  for (const auto& [name, cf] : res.fits)
    if (cf.fitted) ++fitted;
  CHECK(count_occurrences(svg, "class=\"fit\"") == fitted);
}

TEST_CASE("emitted files land where the config points") {
  namespace fs = std::filesystem;
  const ExperimentConfig cfg = tiny_config();
  fs::remove_all(cfg.out_dir);
  const std::vector<std::string> paths = emit_result(tiny_sweep(), cfg);
  REQUIRE(paths.size() == 3);
  for (const std::string& p : paths) CHECK(fs::exists(p));

  std::ifstream in(cfg.out_dir + "/tiny.csv");
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == sweep_csv(tiny_sweep()));
}

TEST_CASE("amplitude table fills its schema") {
  ExperimentConfig cfg = tiny_config();
  cfg.problem = "plane_wave";
  cfg.expansion_order = 1;
  cfg.epsilons = {0.4};
  const SweepResult res = run_amplitude_table(cfg);
  CHECK(res.kind == "amplitude_sweep");

  const std::vector<std::string> want = {
      "amp_sup_p0", "amp_err_kp_xp_p0", "amp_err_kp_xm_p0", "amp_err_km_xp_p0",
      "amp_err_km_xm_p0", "amp_sup_p1", "amp_err_kp_xp_p1", "amp_err_kp_xm_p1",
      "amp_err_km_xp_p1", "amp_err_km_xm_p1", "flux_kp", "flux_km",
      "residual_direct"};
  CHECK(res.columns == want);
  REQUIRE(res.rows.size() == 1);
  REQUIRE(res.rows[0].values.size() == want.size());
  for (double v : res.rows[0].values) CHECK(std::isfinite(v));

  // flux defects of real-potential solves sit at rounding level
  CHECK(res.rows[0].values[10] <= 1e-12);
  CHECK(res.rows[0].values[11] <= 1e-12);
}

TEST_CASE("index-addressed parallel loops are exact and fail loudly") {
  std::vector<int> slots(100, -1);
  parallel_for_index(100, 4, [&](int i) { slots[i] = i; });
  for (int i = 0; i < 100; ++i) CHECK(slots[i] == i);

  std::vector<int> few(3, -1);
  parallel_for_index(3, 8, [&](int i) { few[i] = 2 * i; });
  CHECK(few == std::vector<int>{0, 2, 4});

  std::atomic<int> visited{0};
  const auto boom = [&](int i) {
    ++visited;
    if (i == 5) throw OutOfDomain("expected failure");
  };
  CHECK_THROWS_AS(parallel_for_index(100, 4, boom), OutOfDomain);
  CHECK(visited.load() >= 1);

  parallel_for_index(0, 4, [](int) { throw OutOfDomain("never runs"); });
}
