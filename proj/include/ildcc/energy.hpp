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

#ifndef ILDCC_ENERGY_HPP_
#define ILDCC_ENERGY_HPP_

#include <cstddef>
#include <cstdint>
#include <span>

namespace ildcc {

// First-order radio model constants. Defaults are the reference simulation
// values.
struct EnergyParams {
  double beta = 50e-9;        // J/bit, receiver electronics
  double eps1 = 50e-9;        // J/bit, transmitter electronics
  double eps2 = 10e-12;       // J/bit/m^gamma, amplifier
  double gamma = 4.8;         // path-loss exponent
  double packet_len = 512.0;  // bits
  double t_rate = 100.0;      // transmitted packets/round
  double r_rate = 100.0;      // received packets/round
  double a_rate = 10.0;       // aggregated packets/round
  double j_agg = 50e-7;       // J/packet
  double e_init = 15.4;       // J, initial energy per node
  double k_traffic = 1.0;     // relay load multiplier

  // Throws DomainError unless every field is > 0 and gamma >= 2.
  void validate() const;

  bool operator==(const EnergyParams&) const = default;
};

struct EnergyReport {
  double j_rx = 0.0;
  double j_tx = 0.0;
  double e_p = 0.0;
  double e_r = 0.0;
};

struct LifetimeReport {
  double i_r = 0.0;      // rounds with first-phase relays only
  double t_r = 0.0;      // rounds with both relay phases
  double b1 = 0.0;       // J held by backbone devices
  double b2 = 0.0;       // J added by second-phase relays
  double e_extra = 0.0;  // t_r - i_r; negative when added relays cost more than they save
};

double rx_energy(const EnergyParams& p);
double tx_energy(const EnergyParams& p, double d);

// Per-node burn per round at average link length `distance` (meters):
// T L (eps1 + eps2 distance^gamma) + k R L beta + A J_a.
double node_energy_per_round(const EnergyParams& p, double distance);

// e_init minus `rounds` rounds of node_energy_per_round, floored at 0.
double remaining_energy(const EnergyParams& p, double distance, std::int64_t rounds);

EnergyReport energy_report(const EnergyParams& p, double distance, std::int64_t rounds);

// b_total / sum(per_node). Throws DomainError on empty input, non-positive
// entries or zero total burn.
double lifetime_rounds(double b_total, std::span<const double> per_node);

// I_R over the backbone alone and T_R after adding `sprn_count` relays, with
// every node holding e_init and burning at the network's average distance.
LifetimeReport lifetime_report(const EnergyParams& p, std::size_t backbone_nodes,
                               double backbone_distance, std::size_t sprn_count,
                               double network_distance);

}  // namespace ildcc

#endif  // ILDCC_ENERGY_HPP_
