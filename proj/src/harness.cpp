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

#include "ildcc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <tuple>

#include "ildcc/energy.hpp"
#include "ildcc/errors.hpp"
#include "ildcc/random.hpp"
#include "ildcc/spectral.hpp"

namespace ildcc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Clock = std::chrono::steady_clock;

double squared_distance(const GridSpec& spec, VertexId a, VertexId b) {
  const Coord ca = spec.coord_of(a);
  const Coord cb = spec.coord_of(b);
  const double di = ca.i - cb.i;
  const double dj = ca.j - cb.j;
  const double dk = ca.k - cb.k;
  return di * di + dj * dj + dk * dk;
}

double meters_per_unit(const ExperimentConfig& cfg, const GridSpec& spec) {
  return cfg.distance_scale > 0.0 ? cfg.distance_scale : spec.cell_edge;
}

TrialResult blank(std::string_view method, std::size_t n, std::size_t trial,
                  std::uint64_t seed) {
  TrialResult r;
  r.method = std::string(method);
  r.n = n;
  r.trial = trial;
  r.seed = seed;
  r.laplacian_params = n * (n - 1) / 2;
  for (double* f : {&r.wiener, &r.wiener_hops, &r.mu, &r.mu_w, &r.mu_w_m, &r.mu_w_backbone_m,
                    &r.e_p, &r.i_r, &r.t_r, &r.e_extra, &r.lambda2, &r.lambda2_backbone}) {
    *f = kNaN;
  }
  return r;
}

TrialResult failed(TrialResult r, std::string reason) {
  r.ok = false;
  r.reason = std::move(reason);
  return r;
}

struct BackboneMetrics {
  double lambda2 = 0.0;
  double mu_w_m = 0.0;
};

BackboneMetrics backbone_metrics(const ExperimentConfig& cfg, const Scenario& sc) {
  const Spectrum s = eigenvalues(laplacian(sc.backbone.graph));
  const std::size_t n = sc.backbone.graph.node_count();
  BackboneMetrics m;
  m.lambda2 = s.lambda2();
  const DistanceMetrics d = average_distance(wiener_spectral(s, n), n, cfg.delta_mu);
  m.mu_w_m = d.mu_w * meters_per_unit(cfg, sc.instance.spec);
  return m;
}

// Fills every metric of a successful placement.
void measure(TrialResult& r, const ExperimentConfig& cfg, const Scenario& sc,
             const BackboneMetrics& bb, const PlacementProblem& problem,
             const PlacementVector& alpha) {
  const Evaluation ev = problem.evaluate(alpha);
  const NetworkGraph g = problem.graph_for(alpha);
  const double scale = meters_per_unit(cfg, sc.instance.spec);
  r.nodes = g.node_count();
  r.fprn_count = fprn_count(sc.backbone);
  r.sprn_count = alpha.count();
  r.placement = alpha.active();
  r.wiener = ev.wiener;
  r.wiener_hops = wiener_paths(g);
  const DistanceMetrics d = average_distance(ev.wiener, r.nodes, cfg.delta_mu);
  r.mu = d.mu;
  r.mu_w = d.mu_w;
  r.mu_w_m = d.mu_w * scale;
  r.mu_w_backbone_m = bb.mu_w_m;
  r.e_p = node_energy_per_round(cfg.energy, r.mu_w_m);
  const LifetimeReport life = lifetime_report(cfg.energy, problem.backbone_size(), bb.mu_w_m,
                                              r.sprn_count, r.mu_w_m);
  r.i_r = life.i_r;
  r.t_r = life.t_r;
  r.e_extra = life.e_extra;
  r.lambda2 = ev.lambda2;
  r.lambda2_backbone = bb.lambda2;
  r.ok = true;
}

// Relay budget for network size n, or a failure reason.
std::optional<std::string> budget_problem(std::size_t n, std::size_t backbone,
                                          std::size_t dims) {
  if (n < backbone) {
    return "network size " + std::to_string(n) + " below backbone size " +
           std::to_string(backbone);
  }
  if (n - backbone > dims) {
    return "relay budget " + std::to_string(n - backbone) + " exceeds " +
           std::to_string(dims) + " candidates";
  }
  return std::nullopt;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::vector<VertexId> nearest_candidates(const GridSpec& spec, const Backbone& backbone,
                                         std::size_t count) {
  const std::set<VertexId> taken(backbone.vertices.begin(), backbone.vertices.end());
  std::vector<std::pair<double, VertexId>> ranked;
  for (VertexId v = 0; v < spec.vertex_count(); ++v) {
    if (taken.contains(v)) continue;
    double best = std::numeric_limits<double>::infinity();
    for (VertexId b : backbone.vertices) best = std::min(best, squared_distance(spec, v, b));
    ranked.emplace_back(best, v);
  }
  std::sort(ranked.begin(), ranked.end());
  ranked.resize(std::min(count, ranked.size()));
  std::vector<VertexId> out;
  out.reserve(ranked.size());
  for (const auto& [d, v] : ranked) out.push_back(v);
  return out;
}

Scenario prepare_scenario(const ExperimentConfig& cfg) {
  GridInstance inst;
  if (cfg.instance_file) {
    inst = load_instance(*cfg.instance_file);
  } else {
    const ScenarioConfig& s = cfg.scenario;
    inst.spec = GridSpec{s.dims, s.cell_edge};
    inst.range_r = s.range_r;
    const auto vertex = [&](const std::array<int, 3>& c) {
      const Coord coord{c[0], c[1], c[2]};
      if (!inst.spec.contains(coord)) throw DomainError("scenario vertex outside the grid");
      return inst.spec.id_of(coord);
    };
    inst.nodes.push_back({vertex(s.base_station), NodeRole::BaseStation});
    for (const auto& ch : s.cluster_heads) {
      inst.nodes.push_back({vertex(ch), NodeRole::ClusterHead});
    }
    inst.validate();
  }
  std::vector<VertexId> given = inst.candidates;
  inst.candidates.clear();
  Scenario sc{inst, build_backbone(inst)};
  if (given.empty()) {
    sc.instance.candidates =
        nearest_candidates(inst.spec, sc.backbone, cfg.scenario.n_candidates);
  } else {
    const std::set<VertexId> taken(sc.backbone.vertices.begin(), sc.backbone.vertices.end());
    std::erase_if(given, [&](VertexId v) { return taken.contains(v); });
    sc.instance.candidates = std::move(given);
  }
  return sc;
}

std::vector<TrialResult> run_ildcc(const ExperimentConfig& cfg) {
  return run_ildcc(cfg, prepare_scenario(cfg));
}

std::vector<TrialResult> run_ildcc(const ExperimentConfig& cfg, const Scenario& sc) {
  cfg.validate();
  const BackboneMetrics bb = backbone_metrics(cfg, sc);
  const std::size_t nb = sc.backbone.graph.node_count();
  const std::size_t dims = sc.instance.candidates.size();
  std::vector<TrialResult> out;
  for (std::size_t n : cfg.network_sizes) {
    const auto bad = budget_problem(n, nb, dims);
    const std::size_t budget = bad ? 0 : n - nb;
    std::optional<PlacementProblem> problem;
    ColonyConfig colony = cfg.colony_for(n);
    if (!bad) {
      problem.emplace(sc.backbone, sc.instance, colony.lambda2_min, colony.lambda2_max, budget);
    }
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const std::uint64_t seed = derive_seed(cfg.master_seed, {n, t, 1});
      TrialResult r = blank(kMethodIldcc, n, t, seed);
      r.budget = budget;
      if (bad) {
        out.push_back(failed(std::move(r), *bad));
        continue;
      }
      colony.budget = budget;
      colony.seed = seed;
      const auto t0 = Clock::now();
      try {
        const AbcResult res = optimize(*problem, colony);
        r.evaluations = res.evaluations;
        r.history = res.history;
        if (!res.feasible) {
          r = failed(std::move(r), "no placement reached the connectivity window");
        } else {
          measure(r, cfg, sc, bb, *problem, res.best_alpha);
        }
      } catch (const InfeasibleError& e) {
        r = failed(std::move(r), e.what());
      } catch (const NumericError& e) {
        r = failed(std::move(r), e.what());
      }
      r.wallclock = seconds_since(t0);
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::optional<PlacementVector> random_densification(const PlacementProblem& problem,
                                                    std::size_t count, double lambda2_min,
                                                    std::size_t max_attempts, Rng& rng) {
  const std::size_t d = problem.dims();
  if (count > d) throw DomainError("relay count exceeds candidate count");
  if (count == 0) return PlacementVector(d);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    PlacementVector alpha(d);
    // reach[c]: candidate c has a link into the current network.
    std::vector<std::uint8_t> reach(d, 0);
    for (std::size_t c = 0; c < d; ++c) reach[c] = !problem.backbone_neighbors(c).empty();
    bool stuck = false;
    for (std::size_t placed = 0; placed < count; ++placed) {
      std::vector<std::size_t> frontier;
      for (std::size_t c = 0; c < d; ++c) {
        if (reach[c] && !alpha.alpha[c]) frontier.push_back(c);
      }
      if (frontier.empty()) {
        stuck = true;
        break;
      }
      const std::size_t c = frontier[rng.index(frontier.size())];
      alpha.alpha[c] = 1;
      for (std::size_t o : problem.candidate_neighbors(c)) reach[o] = 1;
    }
    if (stuck) continue;
    const Evaluation ev = problem.evaluate(alpha);
    if (ev.components == 1 && ev.lambda2 >= lambda2_min) return alpha;
  }
  return std::nullopt;
}

std::vector<TrialResult> run_baseline_sp3d(const ExperimentConfig& cfg) {
  return run_baseline_sp3d(cfg, prepare_scenario(cfg));
}

std::vector<TrialResult> run_baseline_sp3d(const ExperimentConfig& cfg, const Scenario& sc) {
  cfg.validate();
  const BackboneMetrics bb = backbone_metrics(cfg, sc);
  const std::size_t nb = sc.backbone.graph.node_count();
  const std::size_t dims = sc.instance.candidates.size();
  std::vector<TrialResult> out;
  for (std::size_t n : cfg.network_sizes) {
    const auto bad = budget_problem(n, nb, dims);
    const std::size_t budget = bad ? 0 : n - nb;
    std::optional<PlacementProblem> problem;
    if (!bad) {
      problem.emplace(sc.backbone, sc.instance, cfg.colony.lambda2_min, cfg.colony.lambda2_max,
                      budget);
    }
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const std::uint64_t seed = derive_seed(cfg.master_seed, {n, t, 2});
      TrialResult r = blank(kMethodSp3d, n, t, seed);
      r.budget = budget;
      if (bad) {
        out.push_back(failed(std::move(r), *bad));
        continue;
      }
      const auto t0 = Clock::now();
      Rng rng(seed);
      try {
        const auto alpha = random_densification(*problem, budget, cfg.baseline.lambda2_min,
                                                cfg.baseline.max_attempts, rng);
        if (!alpha) {
          r = failed(std::move(r), "random densification missed the connectivity target");
        } else {
          measure(r, cfg, sc, bb, *problem, *alpha);
        }
      } catch (const InfeasibleError& e) {
        r = failed(std::move(r), e.what());
      } catch (const NumericError& e) {
        r = failed(std::move(r), e.what());
      }
      r.wallclock = seconds_since(t0);
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<TrafficRow> traffic_sweep(const ExperimentConfig& cfg) {
  const std::vector<TrialResult> results = run_ildcc(cfg);
  return traffic_sweep(cfg, results);
}

std::vector<TrafficRow> traffic_sweep(const ExperimentConfig& cfg,
                                      std::span<const TrialResult> results) {
  std::vector<TrafficRow> rows;
  for (std::size_t n : cfg.network_sizes) {
    for (double traffic : cfg.traffic_levels) {
      EnergyParams p = cfg.energy;
      p.t_rate = traffic;
      TrafficRow row;
      row.n = n;
      row.traffic = traffic;
      double t_sum = 0.0;
      double e_sum = 0.0;
      for (const TrialResult& r : results) {
        if (!r.ok || r.n != n || r.method != kMethodIldcc) continue;
        const std::size_t backbone = r.nodes - r.sprn_count;
        const LifetimeReport life =
            lifetime_report(p, backbone, r.mu_w_backbone_m, r.sprn_count, r.mu_w_m);
        t_sum += life.t_r;
        e_sum += node_energy_per_round(p, r.mu_w_m);
        ++row.trials;
      }
      row.t_r = row.trials ? t_sum / static_cast<double>(row.trials) : kNaN;
      row.e_p = row.trials ? e_sum / static_cast<double>(row.trials) : kNaN;
      rows.push_back(row);
    }
  }
  return rows;
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) {
    s.mean = s.stddev = s.min = s.max = kNaN;
    return s;
  }
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.count);
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  s.min = *lo;
  s.max = *hi;
  if (s.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(s.count - 1));
  }
  return s;
}

const Summary& AggregateRow::metric(std::string_view name) const {
  for (const auto& [key, summary] : metrics) {
    if (key == name) return summary;
  }
  throw DomainError("unknown metric " + std::string(name));
}

std::vector<AggregateRow> aggregate(std::span<const TrialResult> results) {
  using Field = double TrialResult::*;
  static const std::vector<std::pair<std::string, Field>> fields{
      {"wiener", &TrialResult::wiener},   {"wiener_hops", &TrialResult::wiener_hops},
      {"mu", &TrialResult::mu},           {"mu_w", &TrialResult::mu_w},
      {"mu_w_m", &TrialResult::mu_w_m},   {"e_p", &TrialResult::e_p},
      {"i_r", &TrialResult::i_r},         {"t_r", &TrialResult::t_r},
      {"e_extra", &TrialResult::e_extra}, {"lambda2", &TrialResult::lambda2},
      {"lambda2_backbone", &TrialResult::lambda2_backbone}};

  std::vector<std::pair<std::string, std::size_t>> keys;
  for (const TrialResult& r : results) {
    const std::pair<std::string, std::size_t> key{r.method, r.n};
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  std::vector<AggregateRow> rows;
  for (const auto& [method, n] : keys) {
    AggregateRow row;
    row.method = method;
    row.n = n;
    std::vector<const TrialResult*> ok;
    for (const TrialResult& r : results) {
      if (r.method != method || r.n != n) continue;
      ++row.trials;
      if (r.ok) {
        ok.push_back(&r);
      } else {
        ++row.failed;
      }
    }
    for (const auto& [name, field] : fields) {
      std::vector<double> v;
      for (const TrialResult* r : ok) v.push_back(r->*field);
      row.metrics.emplace_back(name, summarize(v));
    }
    std::vector<double> sprn;
    std::vector<double> nodes;
    for (const TrialResult* r : ok) {
      sprn.push_back(static_cast<double>(r->sprn_count));
      nodes.push_back(static_cast<double>(r->nodes));
    }
    row.metrics.emplace_back("sprn_count", summarize(sprn));
    row.metrics.emplace_back("nodes", summarize(nodes));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ildcc
