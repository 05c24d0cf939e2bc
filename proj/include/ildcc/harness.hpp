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

#ifndef ILDCC_HARNESS_HPP_
#define ILDCC_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ildcc/abc.hpp"
#include "ildcc/backbone.hpp"
#include "ildcc/config.hpp"
#include "ildcc/topology.hpp"

namespace ildcc {

inline constexpr std::string_view kMethodIldcc = "ILDCC";
inline constexpr std::string_view kMethodSp3d = "SP3D";

// Instance with BS/CH layout, its backbone, and the candidate set.
struct Scenario {
  GridInstance instance;  // BS and CHs only, candidates filled in
  Backbone backbone;
};

// Free vertices ordered by squared distance to the nearest backbone vertex,
// then vertex id; the first `count` are returned.
std::vector<VertexId> nearest_candidates(const GridSpec& spec, const Backbone& backbone,
                                         std::size_t count);

Scenario prepare_scenario(const ExperimentConfig& cfg);

struct TrialResult {
  std::string method;
  std::size_t n = 0;  // requested network size
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string reason;  // failure reason, empty when ok
  std::size_t nodes = 0;
  std::size_t fprn_count = 0;
  std::size_t sprn_count = 0;
  std::size_t budget = 0;
  // Upper-triangle entry count of an N x N Laplacian, for comparison with
  // the free-Laplacian formulation.
  std::size_t laplacian_params = 0;
  double wiener = 0.0;      // spectral
  double wiener_hops = 0.0;  // BFS hop form
  double mu = 0.0;
  double mu_w = 0.0;        // normalized (grid cells)
  double mu_w_m = 0.0;      // meters, fed to the energy model
  double mu_w_backbone_m = 0.0;
  double e_p = 0.0;
  double i_r = 0.0;
  double t_r = 0.0;
  double e_extra = 0.0;
  double lambda2 = 0.0;
  double lambda2_backbone = 0.0;
  std::vector<std::size_t> placement;  // activated candidate indices

  // Not written to results.csv.
  double wallclock = 0.0;
  std::size_t evaluations = 0;
  std::vector<GenerationRecord> history;
};

// Phase 1 + ABC for every (N, trial). Per-trial seeds derive from
// (master_seed, N, trial). Infeasible trials are returned with ok = false.
std::vector<TrialResult> run_ildcc(const ExperimentConfig& cfg);
std::vector<TrialResult> run_ildcc(const ExperimentConfig& cfg, const Scenario& scenario);

// Phase 1 + random densification: relays are dropped one at a time on a
// uniformly chosen candidate within range of the current network until the
// budget is spent; the first placement reaching baseline.lambda2_min wins.
std::vector<TrialResult> run_baseline_sp3d(const ExperimentConfig& cfg);
std::vector<TrialResult> run_baseline_sp3d(const ExperimentConfig& cfg,
                                           const Scenario& scenario);

std::optional<PlacementVector> random_densification(const PlacementProblem& problem,
                                                    std::size_t count,
                                                    double lambda2_min,
                                                    std::size_t max_attempts, Rng& rng);

struct TrafficRow {
  std::size_t n = 0;
  double traffic = 0.0;
  std::size_t trials = 0;
  double t_r = 0.0;  // mean over successful trials
  double e_p = 0.0;
};

// Lifetime at each traffic level (packets/round transmitted) for the
// optimized deployments. Placement does not depend on traffic, so the
// overload reuses existing ILDCC results.
std::vector<TrafficRow> traffic_sweep(const ExperimentConfig& cfg);
std::vector<TrafficRow> traffic_sweep(const ExperimentConfig& cfg,
                                      std::span<const TrialResult> results);

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for a single value
  double min = 0.0;
  double max = 0.0;
};

Summary summarize(std::span<const double> values);

struct AggregateRow {
  std::string method;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::size_t failed = 0;
  std::vector<std::pair<std::string, Summary>> metrics;

  const Summary& metric(std::string_view name) const;
};

// Grouped by (method, N) in first-seen order; failed trials are counted but
// excluded from the statistics.
std::vector<AggregateRow> aggregate(std::span<const TrialResult> results);

// CSV output. Column orders are fixed; see docs/FORMATS.md.
std::string results_csv(std::span<const TrialResult> results);
std::vector<TrialResult> parse_results_csv(std::string_view text);
std::string aggregate_csv(std::span<const AggregateRow> rows);
std::string convergence_csv(std::span<const GenerationRecord> history);
std::string traffic_csv(std::span<const TrafficRow> rows);

// Writes results.csv, timings.csv, aggregate.csv, convergence_<N>_<trial>.csv
// and plotdata_*.csv into dir (created if missing). Throws IoError.
void emit_outputs(std::span<const TrialResult> results, std::span<const TrafficRow> traffic,
                  const std::string& dir);

}  // namespace ildcc

#endif  // ILDCC_HARNESS_HPP_
