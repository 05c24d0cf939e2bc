// Copyright 2026 The ILDCC Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "ildcc/config.hpp"
#include "ildcc/errors.hpp"
#include "ildcc/harness.hpp"

using namespace ildcc;

namespace {

ExperimentConfig quick_config() {
  ExperimentConfig cfg;
  cfg.network_sizes = {20};
  cfg.trials = 1;
  cfg.colony.colony_size = 20;
  cfg.population_per_node = 0;
  cfg.colony.generations = 60;
  cfg.colony.modification_rate = 0.2;
  cfg.traffic_levels = {30, 300};
  return cfg;
}

const Scenario& default_scenario() {
  static const Scenario sc = prepare_scenario(ExperimentConfig{});
  return sc;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TrialResult row(std::size_t n, double wiener, double t_r) {
  TrialResult r;
  r.method = std::string(kMethodIldcc);
  r.n = n;
  r.ok = true;
  r.wiener = wiener;
  r.t_r = t_r;
  return r;
}

}  // namespace

TEST_CASE("default scenario") {
  const Scenario& sc = default_scenario();
  CHECK(sc.instance.nodes.size() == 10);
  CHECK(sc.backbone.vertices.size() >= 10);
  CHECK(sc.instance.candidates.size() == 110);
  const std::set<VertexId> taken(sc.backbone.vertices.begin(), sc.backbone.vertices.end());
  for (VertexId c : sc.instance.candidates) CHECK_FALSE(taken.contains(c));
  const std::set<VertexId> distinct(sc.instance.candidates.begin(), sc.instance.candidates.end());
  CHECK(distinct.size() == sc.instance.candidates.size());
}

TEST_CASE("nearest candidates are ordered by distance to the backbone") {
  const Scenario& sc = default_scenario();
  const auto gap = [&](VertexId v) {
    double best = 1e300;
    for (VertexId b : sc.backbone.vertices) {
      best = std::min(best, euclidean_distance(sc.instance.spec, v, b));
    }
    return best;
  };
  const auto& c = sc.instance.candidates;
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(gap(c[i - 1]) <= gap(c[i]) + 1e-9);
  CHECK(nearest_candidates(sc.instance.spec, sc.backbone, 0).empty());
}

TEST_CASE("single trial run") {
  const ExperimentConfig cfg = quick_config();
  const auto results = run_ildcc(cfg, default_scenario());
  REQUIRE(results.size() == 1);
  const TrialResult& r = results[0];
  CHECK(r.method == kMethodIldcc);
  CHECK(r.n == 20);
  CHECK(r.budget == 20 - default_scenario().backbone.vertices.size());
  CHECK(r.sprn_count <= r.budget);
  CHECK(r.laplacian_params == 20 * 19 / 2);
  if (r.ok) {
    CHECK(r.nodes == default_scenario().backbone.vertices.size() + r.sprn_count);
    CHECK(r.lambda2 >= 0.4);
    CHECK(r.lambda2 <= 0.6);
    CHECK(r.lambda2 >= r.lambda2_backbone - 1e-9);
    CHECK(r.mu_w == doctest::Approx(r.mu + cfg.delta_mu));
    CHECK(r.t_r > 0.0);
    CHECK(r.e_extra == doctest::Approx(r.t_r - r.i_r));
    CHECK(r.placement.size() == r.sprn_count);
  } else {
    CHECK_FALSE(r.reason.empty());
    CHECK(std::isnan(r.mu_w));
  }
}

TEST_CASE("runs are reproducible") {
  ExperimentConfig cfg = quick_config();
  cfg.trials = 2;
  const auto a = run_ildcc(cfg, default_scenario());
  const auto b = run_ildcc(cfg, default_scenario());
  CHECK(results_csv(a) == results_csv(b));
  CHECK(a[0].seed != a[1].seed);
  const auto sa = run_baseline_sp3d(cfg, default_scenario());
  const auto sb = run_baseline_sp3d(cfg, default_scenario());
  CHECK(results_csv(sa) == results_csv(sb));
  cfg.master_seed += 1;
  CHECK(run_ildcc(cfg, default_scenario())[0].seed != a[0].seed);
}

TEST_CASE("baseline") {
  ExperimentConfig cfg = quick_config();
  cfg.network_sizes = {40};
  cfg.trials = 3;
  const auto results = run_baseline_sp3d(cfg, default_scenario());
  REQUIRE(results.size() == 3);
  for (const TrialResult& r : results) {
    CHECK(r.method == kMethodSp3d);
    REQUIRE(r.ok);
    CHECK(r.nodes == 40);
    CHECK(r.lambda2 >= cfg.baseline.lambda2_min);
  }

  // No budget: the backbone alone.
  const std::size_t nb = default_scenario().backbone.vertices.size();
  cfg.network_sizes = {nb};
  cfg.trials = 1;
  const auto bare = run_baseline_sp3d(cfg, default_scenario());
  REQUIRE(bare.size() == 1);
  if (bare[0].ok) {
    CHECK(bare[0].sprn_count == 0);
    const NetworkGraph& g = default_scenario().backbone.graph;
    CHECK(bare[0].wiener_hops == doctest::Approx(wiener_paths(g)));
    CHECK(bare[0].wiener == doctest::Approx(wiener_spectral(eigenvalues(laplacian(g)), nb)));
  }
}

TEST_CASE("network size below the backbone fails cleanly") {
  ExperimentConfig cfg = quick_config();
  cfg.network_sizes = {5};
  const auto results = run_ildcc(cfg, default_scenario());
  REQUIRE(results.size() == 1);
  CHECK_FALSE(results[0].ok);
  CHECK_FALSE(results[0].reason.empty());
}

TEST_CASE("summaries") {
  const std::vector<double> one{3.0};
  const Summary s1 = summarize(one);
  CHECK(s1.count == 1);
  CHECK(s1.mean == 3.0);
  CHECK(s1.stddev == 0.0);
  const std::vector<double> two{2.0, 4.0};
  const Summary s2 = summarize(two);
  CHECK(s2.mean == 3.0);
  CHECK(s2.stddev == doctest::Approx(std::sqrt(2.0)));
  CHECK(s2.min == 2.0);
  CHECK(s2.max == 4.0);
  CHECK(std::isnan(summarize({}).mean));
}

TEST_CASE("aggregate reproduces reference N=20 averages") {
  const std::vector<double> w{20.0070, 20.4224, 22.0462, 20.0433,
                              19.4899, 20.4215, 20.6681, 20.0145};
  const std::vector<double> tr{4.2745, 3.5761, 3.5297, 3.0659,
                               3.0648, 2.7814, 1.4180, 3.5665};
  std::vector<TrialResult> rows;
  for (std::size_t i = 0; i < w.size(); ++i) rows.push_back(row(20, w[i], tr[i]));
  TrialResult bad = row(20, 1e9, 1e9);
  bad.ok = false;
  rows.push_back(bad);
  const auto agg = aggregate(rows);
  REQUIRE(agg.size() == 1);
  CHECK(agg[0].trials == 9);
  CHECK(agg[0].failed == 1);
  CHECK(std::abs(agg[0].metric("wiener").mean - 20.3891) <= 0.01);
  CHECK(std::abs(agg[0].metric("t_r").mean - 3.1596) <= 0.01);
  CHECK(agg[0].metric("wiener").count == 8);
}

TEST_CASE("aggregate groups by method and size in first-seen order") {
  std::vector<TrialResult> rows{row(30, 1, 1), row(20, 2, 2), row(30, 3, 3)};
  rows.push_back(row(20, 5, 5));
  rows.back().method = std::string(kMethodSp3d);
  const auto agg = aggregate(rows);
  REQUIRE(agg.size() == 3);
  CHECK(agg[0].n == 30);
  CHECK(agg[0].metric("wiener").mean == 2.0);
  CHECK(agg[1].n == 20);
  CHECK(agg[2].method == kMethodSp3d);
}

TEST_CASE("results csv round trip") {
  std::vector<TrialResult> rows{row(20, 12.5, 0.25), row(30, 1.0 / 3.0, 7.0)};
  rows[0].placement = {3, 1, 4};
  rows[0].seed = 18446744073709551615ULL;
  rows[1].ok = false;
  rows[1].reason = "bad, very\nbad";
  rows[1].mu_w = std::nan("");
  const std::string text = results_csv(rows);
  const auto back = parse_results_csv(text);
  REQUIRE(back.size() == 2);
  CHECK(back[0].wiener == 12.5);
  CHECK(back[0].placement == rows[0].placement);
  CHECK(back[0].seed == rows[0].seed);
  CHECK(back[1].wiener == 1.0 / 3.0);
  CHECK_FALSE(back[1].ok);
  CHECK(back[1].reason.find(',') == std::string::npos);
  CHECK(std::isnan(back[1].mu_w));
  CHECK(results_csv(back) == text);
}

TEST_CASE("empty outputs are headers only") {
  const std::vector<TrialResult> none;
  const std::string r = results_csv(none);
  CHECK(std::count(r.begin(), r.end(), '\n') == 1);
  CHECK(r.rfind("method,n,trial,seed,status", 0) == 0);
  const std::string a = aggregate_csv({});
  CHECK(std::count(a.begin(), a.end(), '\n') == 1);
  CHECK(a.find("mu_w_mean,mu_w_sd") != std::string::npos);
  const std::string c = convergence_csv({});
  CHECK(c == "generation,best_fitness,lambda2,feasible_count\n");
  const std::string t = traffic_csv({});
  CHECK(t == "n,traffic,trials,t_r,e_p\n");
}

TEST_CASE("emit outputs") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "ildcc_emit_test";
  fs::remove_all(dir);
  const ExperimentConfig cfg = quick_config();
  const auto results = run_ildcc(cfg, default_scenario());
  const auto traffic = traffic_sweep(cfg, results);
  emit_outputs(results, traffic, dir.string());
  for (const char* f : {"results.csv", "timings.csv", "aggregate.csv", "plotdata_mu_w_vs_n.csv",
                        "plotdata_tr_vs_n.csv", "plotdata_lambda2_vs_n.csv",
                        "plotdata_tr_vs_load.csv"}) {
    CHECK(fs::exists(dir / f));
  }
  CHECK(slurp(dir / "results.csv") == results_csv(results));
  CHECK(fs::exists(dir / "convergence_20_0.csv"));
  fs::remove_all(dir);

  // A regular file where the directory should go.
  const fs::path blocker = fs::temp_directory_path() / "ildcc_emit_blocker";
  { std::ofstream(blocker) << "x"; }
  CHECK_THROWS_AS(emit_outputs(results, traffic, (blocker / "sub").string()), IoError);
  fs::remove(blocker);
}

TEST_CASE("lifetime falls as traffic grows") {
  ExperimentConfig cfg = quick_config();
  cfg.traffic_levels = {30, 100, 200, 300, 400, 500, 600};
  std::vector<TrialResult> rows{row(20, 20, 1)};
  rows[0].nodes = 20;
  rows[0].sprn_count = 8;
  rows[0].mu_w_m = 150.0;
  rows[0].mu_w_backbone_m = 200.0;
  const auto sweep = traffic_sweep(cfg, rows);
  REQUIRE(sweep.size() == 7);
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    CHECK(sweep[i].trials == 1);
    CHECK(sweep[i].t_r < sweep[i - 1].t_r);
    CHECK(sweep[i].e_p > sweep[i - 1].e_p);
  }
  cfg.network_sizes = {40};
  for (const TrafficRow& r : traffic_sweep(cfg, rows)) {
    CHECK(r.trials == 0);
    CHECK(std::isnan(r.t_r));
  }
}

TEST_CASE("config json round trip and validation") {
  ExperimentConfig cfg;
  cfg.colony.generations = 123;
  cfg.colony.modification_rate = 0.3;
  cfg.network_sizes = {25, 35};
  cfg.master_seed = 99;
  const ExperimentConfig back = config_from_json(config_to_json(cfg));
  CHECK(back.colony.generations == 123);
  CHECK(back.colony.modification_rate == 0.3);
  CHECK(back.colony.budget_mode == BudgetMode::Grown);
  CHECK(back.network_sizes == cfg.network_sizes);
  CHECK(back.master_seed == 99);
  CHECK(config_to_json(back) == config_to_json(cfg));

  CHECK_THROWS_AS(config_from_json("{"), IoError);
  CHECK_THROWS_AS(config_from_json(R"({"trials": 0})"), DomainError);
  CHECK_THROWS_AS(config_from_json(R"({"colony": {"colony_size": 7}})"), DomainError);
  CHECK_THROWS_AS(config_from_json(R"({"network_sizes": []})"), DomainError);
  CHECK_THROWS_AS(load_config("/nonexistent/ildcc.json"), IoError);
  CHECK(config_from_json("{}").trials == 8);
}
