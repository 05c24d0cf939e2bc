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

// ildcc run | sweep-traffic | validate
//
// Exit codes: 0 ok, 1 usage, 2 domain, 3 infeasible, 4 numeric, 5 I/O.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ildcc/config.hpp"
#include "ildcc/errors.hpp"
#include "ildcc/harness.hpp"

namespace {

using namespace ildcc;

int cmd_validate(const std::string& path) {
  const ExperimentConfig cfg = load_config(path);
  const Scenario sc = prepare_scenario(cfg);
  const std::size_t nb = sc.backbone.graph.node_count();
  std::cout << "config ok: backbone " << nb << " nodes (" << fprn_count(sc.backbone)
            << " first-phase relays), " << sc.instance.candidates.size() << " candidates\n";
  for (std::size_t n : cfg.network_sizes) {
    if (n < nb || n - nb > sc.instance.candidates.size()) {
      std::cout << "warning: N=" << n << " not reachable with this backbone\n";
    }
  }
  return 0;
}

int cmd_run(const std::string& path, const std::string& out, std::optional<std::uint64_t> seed,
            bool baseline, std::optional<std::size_t> trials) {
  ExperimentConfig cfg = load_config(path);
  if (seed) cfg.master_seed = *seed;
  if (trials) cfg.trials = *trials;
  cfg.output_dir = out;
  cfg.validate();
  const Scenario sc = prepare_scenario(cfg);
  std::vector<TrialResult> results = run_ildcc(cfg, sc);
  if (baseline || cfg.baseline_enabled) {
    std::vector<TrialResult> base = run_baseline_sp3d(cfg, sc);
    results.insert(results.end(), base.begin(), base.end());
  }
  const std::vector<TrafficRow> traffic = traffic_sweep(cfg, results);
  emit_outputs(results, traffic, cfg.output_dir);
  std::size_t failed = 0;
  for (const TrialResult& r : results) failed += r.ok ? 0 : 1;
  std::cout << aggregate_csv(aggregate(results));
  std::cout << results.size() << " trials, " << failed << " failed; outputs in "
            << cfg.output_dir << "\n";
  return 0;
}

int cmd_sweep(const std::string& path) {
  const ExperimentConfig cfg = load_config(path);
  std::cout << traffic_csv(traffic_sweep(cfg));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-phase relay deployment on 3-D grids"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  bool baseline = false;

  CLI::App* run = app.add_subcommand("run", "Run all trials and write CSV outputs");
  run->add_option("--config", config, "Experiment config (JSON)")->required();
  run->add_option("--out", out, "Output directory")->required();
  CLI::Option* seed_opt = run->add_option("--seed", seed, "Master seed override");
  run->add_flag("--baseline", baseline, "Also run the random-densification baseline");
  CLI::Option* trials_opt =
      run->add_option("--trials", trials, "Trials per network size")->check(CLI::PositiveNumber);

  CLI::App* sweep = app.add_subcommand("sweep-traffic", "Lifetime against traffic load");
  sweep->add_option("--config", config, "Experiment config (JSON)")->required();

  CLI::App* validate = app.add_subcommand("validate", "Check config and scenario only");
  validate->add_option("--config", config, "Experiment config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      return cmd_run(config, out,
                     seed_opt->count() ? std::optional<std::uint64_t>(seed) : std::nullopt,
                     baseline,
                     trials_opt->count() ? std::optional<std::size_t>(trials) : std::nullopt);
    }
    if (sweep->parsed()) return cmd_sweep(config);
    if (validate->parsed()) return cmd_validate(config);
  } catch (const DomainError& e) {
    std::cerr << "ildcc: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const InfeasibleError& e) {
    std::cerr << "ildcc: infeasible: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "ildcc: numeric failure: " << e.what() << "\n";
    return 4;
  } catch (const IoError& e) {
    std::cerr << "ildcc: I/O error: " << e.what() << "\n";
    return 5;
  }
  return 1;
}
