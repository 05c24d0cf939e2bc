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

#include "ildcc/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ildcc/errors.hpp"
#include "json.hpp"

namespace ildcc {

namespace {

using nlohmann::json;

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

URange u_range_from(const std::string& s) {
  if (s == "symmetric") return URange::Symmetric;
  if (s == "unit") return URange::Unit;
  throw DomainError("colony.u_range must be 'symmetric' or 'unit'");
}

BudgetMode budget_mode_from(const std::string& s) {
  if (s == "at_most") return BudgetMode::AtMost;
  if (s == "exact") return BudgetMode::Exact;
  if (s == "grown") return BudgetMode::Grown;
  throw DomainError("colony.budget_mode must be 'at_most', 'exact' or 'grown'");
}

const char* budget_mode_name(BudgetMode m) {
  switch (m) {
    case BudgetMode::AtMost: return "at_most";
    case BudgetMode::Exact: return "exact";
    case BudgetMode::Grown: return "grown";
  }
  return "at_most";
}

}  // namespace

void ExperimentConfig::validate() const {
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (network_sizes.empty()) throw DomainError("network_sizes must not be empty");
  for (std::size_t n : network_sizes) {
    if (n < 2) throw DomainError("network sizes must be >= 2");
  }
  if (delta_mu < 0.0) throw DomainError("delta_mu must be >= 0");
  if (distance_scale < 0.0) throw DomainError("distance_scale must be >= 0");
  for (double t : traffic_levels) {
    if (!(t > 0.0)) throw DomainError("traffic levels must be > 0");
  }
  if (!(baseline.lambda2_min > 0.0)) throw DomainError("baseline.lambda2_min must be > 0");
  if (baseline.max_attempts < 1) throw DomainError("baseline.max_attempts must be >= 1");
  energy.validate();
  ColonyConfig c = colony;
  c.budget = 0;
  c.dims = 0;
  c.validate();
  if (!instance_file) {
    GridSpec spec{scenario.dims, scenario.cell_edge};
    spec.validate();
    if (!(scenario.range_r > 0.0)) throw DomainError("scenario.range_r must be > 0");
    if (scenario.cluster_heads.empty()) throw DomainError("scenario needs cluster heads");
  }
}

ColonyConfig ExperimentConfig::colony_for(std::size_t network_size) const {
  ColonyConfig c = colony;
  if (population_per_node > 0) {
    std::size_t size = population_per_node * network_size;
    c.colony_size = size + (size % 2);
  }
  return c;
}

ExperimentConfig config_from_json(std::string_view text) {
  ExperimentConfig cfg;
  try {
    const json doc = json::parse(text);
    if (doc.contains("scenario")) {
      const json& s = doc.at("scenario");
      read_opt(s, "dims", cfg.scenario.dims);
      read_opt(s, "cell_edge", cfg.scenario.cell_edge);
      read_opt(s, "range_r", cfg.scenario.range_r);
      read_opt(s, "base_station", cfg.scenario.base_station);
      read_opt(s, "cluster_heads", cfg.scenario.cluster_heads);
      read_opt(s, "n_candidates", cfg.scenario.n_candidates);
    }
    if (doc.contains("instance_file") && !doc.at("instance_file").is_null()) {
      cfg.instance_file = doc.at("instance_file").get<std::string>();
    }
    if (doc.contains("energy")) {
      const json& e = doc.at("energy");
      EnergyParams& p = cfg.energy;
      read_opt(e, "beta", p.beta);
      read_opt(e, "eps1", p.eps1);
      read_opt(e, "eps2", p.eps2);
      read_opt(e, "gamma", p.gamma);
      read_opt(e, "packet_len", p.packet_len);
      read_opt(e, "t_rate", p.t_rate);
      read_opt(e, "r_rate", p.r_rate);
      read_opt(e, "a_rate", p.a_rate);
      read_opt(e, "j_agg", p.j_agg);
      read_opt(e, "e_init", p.e_init);
      read_opt(e, "k_traffic", p.k_traffic);
    }
    if (doc.contains("colony")) {
      const json& c = doc.at("colony");
      ColonyConfig& k = cfg.colony;
      read_opt(c, "colony_size", k.colony_size);
      read_opt(c, "generations", k.generations);
      read_opt(c, "abandonment_limit", k.abandonment_limit);
      read_opt(c, "lambda2_min", k.lambda2_min);
      read_opt(c, "lambda2_max", k.lambda2_max);
      read_opt(c, "modification_rate", k.modification_rate);
      if (c.contains("u_range")) k.u_range = u_range_from(c.at("u_range").get<std::string>());
      if (c.contains("budget_mode")) {
        k.budget_mode = budget_mode_from(c.at("budget_mode").get<std::string>());
      }
      read_opt(c, "population_per_node", cfg.population_per_node);
    }
    read_opt(doc, "network_sizes", cfg.network_sizes);
    read_opt(doc, "trials", cfg.trials);
    read_opt(doc, "delta_mu", cfg.delta_mu);
    read_opt(doc, "distance_scale", cfg.distance_scale);
    read_opt(doc, "traffic_levels", cfg.traffic_levels);
    read_opt(doc, "baseline_enabled", cfg.baseline_enabled);
    if (doc.contains("baseline")) {
      read_opt(doc.at("baseline"), "lambda2_min", cfg.baseline.lambda2_min);
      read_opt(doc.at("baseline"), "max_attempts", cfg.baseline.max_attempts);
    }
    read_opt(doc, "output_dir", cfg.output_dir);
    read_opt(doc, "master_seed", cfg.master_seed);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed config document: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json doc;
  doc["scenario"] = {{"dims", cfg.scenario.dims},
                     {"cell_edge", cfg.scenario.cell_edge},
                     {"range_r", cfg.scenario.range_r},
                     {"base_station", cfg.scenario.base_station},
                     {"cluster_heads", cfg.scenario.cluster_heads},
                     {"n_candidates", cfg.scenario.n_candidates}};
  doc["instance_file"] = cfg.instance_file ? json(*cfg.instance_file) : json(nullptr);
  const EnergyParams& p = cfg.energy;
  doc["energy"] = {{"beta", p.beta},     {"eps1", p.eps1},
                   {"eps2", p.eps2},     {"gamma", p.gamma},
                   {"packet_len", p.packet_len}, {"t_rate", p.t_rate},
                   {"r_rate", p.r_rate}, {"a_rate", p.a_rate},
                   {"j_agg", p.j_agg},   {"e_init", p.e_init},
                   {"k_traffic", p.k_traffic}};
  const ColonyConfig& k = cfg.colony;
  doc["colony"] = {
      {"colony_size", k.colony_size},
      {"generations", k.generations},
      {"abandonment_limit", k.abandonment_limit},
      {"lambda2_min", k.lambda2_min},
      {"lambda2_max", k.lambda2_max},
      {"modification_rate", k.modification_rate},
      {"u_range", k.u_range == URange::Symmetric ? "symmetric" : "unit"},
      {"budget_mode", budget_mode_name(k.budget_mode)},
      {"population_per_node", cfg.population_per_node}};
  doc["network_sizes"] = cfg.network_sizes;
  doc["trials"] = cfg.trials;
  doc["delta_mu"] = cfg.delta_mu;
  doc["distance_scale"] = cfg.distance_scale;
  doc["traffic_levels"] = cfg.traffic_levels;
  doc["baseline_enabled"] = cfg.baseline_enabled;
  doc["baseline"] = {{"lambda2_min", cfg.baseline.lambda2_min},
                     {"max_attempts", cfg.baseline.max_attempts}};
  doc["output_dir"] = cfg.output_dir;
  doc["master_seed"] = cfg.master_seed;
  return doc.dump(2) + "\n";
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  ExperimentConfig cfg = config_from_json(buf.str());
  // Relative instance paths resolve against the config's directory.
  if (cfg.instance_file && std::filesystem::path(*cfg.instance_file).is_relative()) {
    cfg.instance_file =
        (std::filesystem::path(path).parent_path() / *cfg.instance_file).string();
  }
  return cfg;
}

}  // namespace ildcc
