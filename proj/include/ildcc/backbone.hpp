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

#ifndef ILDCC_BACKBONE_HPP_
#define ILDCC_BACKBONE_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "ildcc/spectral.hpp"
#include "ildcc/topology.hpp"

namespace ildcc {

// Connected upper layer: base station, cluster heads and first-phase relays.
struct Backbone {
  NetworkGraph graph;
  // Graph node index -> grid vertex. Instance nodes come first in instance
  // order, then relays in placement order.
  std::vector<VertexId> vertices;
  std::vector<NodeRole> roles;
  std::vector<VertexId> fprn_positions;
};

// Graph over `vertices` (node i <-> vertices[i]) with every link within range.
NetworkGraph link_graph(const GridSpec& spec, double range,
                        std::span<const VertexId> vertices);

// Greedy Steiner-style construction. Seeds the connected set with the closest
// pair of cluster heads / base station plus the relays joining them, then
// repeatedly attaches the outside node whose cheapest relay path into the
// connected set is shortest. Ties: relay count, then path length in meters,
// then node vertex id, then relay sequence.
//
// The instance may only contain BaseStation and ClusterHead nodes (at least
// one of the latter). Throws InfeasibleError naming the node that cannot be
// reached.
Backbone build_backbone(const GridInstance& inst);

inline std::size_t fprn_count(const Backbone& b) { return b.fprn_positions.size(); }

// The instance with first-phase relays added as nodes; candidates that the
// relays now occupy are dropped.
GridInstance with_backbone(const GridInstance& inst, const Backbone& b);

}  // namespace ildcc

#endif  // ILDCC_BACKBONE_HPP_
