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

#include "ildcc/energy.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ildcc/errors.hpp"

namespace ildcc {

void EnergyParams::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"beta", beta},         {"eps1", eps1},         {"eps2", eps2},
      {"gamma", gamma},       {"packet_len", packet_len}, {"t_rate", t_rate},
      {"r_rate", r_rate},     {"a_rate", a_rate},     {"j_agg", j_agg},
      {"e_init", e_init},     {"k_traffic", k_traffic}};
  for (const auto& [name, value] : fields) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw DomainError(std::string("energy parameter ") + name + " must be > 0");
    }
  }
  if (gamma < 2.0) throw DomainError("energy parameter gamma must be >= 2");
}

double rx_energy(const EnergyParams& p) { return p.packet_len * p.beta; }

double tx_energy(const EnergyParams& p, double d) {
  if (d < 0.0) throw DomainError("tx_energy: negative distance");
  return p.packet_len * (p.eps1 + p.eps2 * std::pow(d, p.gamma));
}

double node_energy_per_round(const EnergyParams& p, double distance) {
  if (distance < 0.0) throw DomainError("node_energy_per_round: negative distance");
  return p.t_rate * tx_energy(p, distance) + p.k_traffic * p.r_rate * rx_energy(p) +
         p.a_rate * p.j_agg;
}

double remaining_energy(const EnergyParams& p, double distance, std::int64_t rounds) {
  if (rounds < 0) throw DomainError("remaining_energy: negative round count");
  const double burn = node_energy_per_round(p, distance) * static_cast<double>(rounds);
  return std::max(0.0, p.e_init - burn);
}

EnergyReport energy_report(const EnergyParams& p, double distance, std::int64_t rounds) {
  return EnergyReport{rx_energy(p), tx_energy(p, distance),
                      node_energy_per_round(p, distance),
                      remaining_energy(p, distance, rounds)};
}

double lifetime_rounds(double b_total, std::span<const double> per_node) {
  if (per_node.empty()) throw DomainError("lifetime_rounds: no nodes");
  double total = 0.0;
  for (double e : per_node) {
    if (!(e > 0.0)) throw DomainError("lifetime_rounds: per-node burn must be > 0");
    total += e;
  }
  if (!(total > 0.0)) throw DomainError("lifetime_rounds: zero total burn");
  return b_total / total;
}

LifetimeReport lifetime_report(const EnergyParams& p, std::size_t backbone_nodes,
                               double backbone_distance, std::size_t sprn_count,
                               double network_distance) {
  LifetimeReport r;
  r.b1 = static_cast<double>(backbone_nodes) * p.e_init;
  r.b2 = static_cast<double>(sprn_count) * p.e_init;
  const std::vector<double> before(backbone_nodes,
                                   node_energy_per_round(p, backbone_distance));
  const std::vector<double> after(backbone_nodes + sprn_count,
                                  node_energy_per_round(p, network_distance));
  r.i_r = lifetime_rounds(r.b1, before);
  r.t_r = lifetime_rounds(r.b1 + r.b2, after);
  r.e_extra = r.t_r - r.i_r;
  return r;
}

}  // namespace ildcc
