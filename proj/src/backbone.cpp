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

#include "ildcc/backbone.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>

#include "ildcc/errors.hpp"

namespace ildcc {

namespace {

struct Attachment {
  std::size_t relays = 0;
  double length = 0.0;
  VertexId node = 0;
  std::vector<VertexId> path;

  bool operator<(const Attachment& o) const {
    return std::tie(relays, length, node, path) <
           std::tie(o.relays, o.length, o.node, o.path);
  }
};

std::string describe(const GridSpec& spec, VertexId v) {
  const Coord c = spec.coord_of(v);
  return "(" + std::to_string(c.i) + "," + std::to_string(c.j) + "," +
         std::to_string(c.k) + ")";
}

}  // namespace

NetworkGraph link_graph(const GridSpec& spec, double range,
                        std::span<const VertexId> vertices) {
  NetworkGraph g(vertices.size());
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices.size(); ++b) {
      if (within_range(spec, range, vertices[a], vertices[b])) g.add_edge(a, b);
    }
  }
  return g;
}

Backbone build_backbone(const GridInstance& inst) {
  inst.validate();
  std::vector<VertexId> initial;
  std::size_t heads = 0;
  for (const Node& n : inst.nodes) {
    if (n.role != NodeRole::BaseStation && n.role != NodeRole::ClusterHead) {
      throw DomainError("build_backbone: instance already holds relay nodes");
    }
    if (n.role == NodeRole::ClusterHead) ++heads;
    initial.push_back(n.vertex);
  }
  if (heads == 0) throw DomainError("build_backbone: no cluster heads");

  const GridSpec& spec = inst.spec;
  std::vector<bool> blocked(spec.vertex_count(), false);
  for (VertexId v : initial) blocked[v] = true;

  // Closest pair, ties by (smaller id, larger id).
  std::optional<std::tuple<double, VertexId, VertexId>> seed;
  for (std::size_t a = 0; a < initial.size(); ++a) {
    for (std::size_t b = a + 1; b < initial.size(); ++b) {
      const VertexId u = std::min(initial[a], initial[b]);
      const VertexId v = std::max(initial[a], initial[b]);
      const std::tuple<double, VertexId, VertexId> key{euclidean_distance(spec, u, v), u, v};
      if (!seed || key < *seed) seed = key;
    }
  }
  const auto [seed_dist, first, second] = *seed;

  std::vector<VertexId> connected{first, second};
  std::vector<VertexId> relays;
  try {
    relays = grid_path_relays(first, second, spec, inst.range_r, blocked);
  } catch (const InfeasibleError&) {
    throw InfeasibleError("build_backbone: node " + describe(spec, second) +
                          " cannot be reached from " + describe(spec, first));
  }
  for (VertexId r : relays) {
    blocked[r] = true;
    connected.push_back(r);
  }

  std::vector<VertexId> remaining;
  for (VertexId v : initial) {
    if (v != first && v != second) remaining.push_back(v);
  }
  std::sort(remaining.begin(), remaining.end());

  while (!remaining.empty()) {
    std::optional<Attachment> best;
    // A node walled in by unattached nodes may become reachable later.
    for (VertexId n : remaining) {
      for (VertexId c : connected) {
        std::vector<VertexId> path;
        try {
          path = grid_path_relays(n, c, spec, inst.range_r, blocked);
        } catch (const InfeasibleError&) {
          continue;
        }
        Attachment cand{path.size(), path_length(spec, n, path, c), n, std::move(path)};
        if (!best || cand < *best) best = std::move(cand);
      }
    }
    if (!best) {
      throw InfeasibleError("build_backbone: node " + describe(spec, remaining.front()) +
                            " cannot be connected to the backbone");
    }
    for (VertexId r : best->path) {
      blocked[r] = true;
      connected.push_back(r);
      relays.push_back(r);
    }
    connected.push_back(best->node);
    remaining.erase(std::find(remaining.begin(), remaining.end(), best->node));
  }

  Backbone b;
  b.fprn_positions = relays;
  for (const Node& n : inst.nodes) {
    b.vertices.push_back(n.vertex);
    b.roles.push_back(n.role);
  }
  for (VertexId r : relays) {
    b.vertices.push_back(r);
    b.roles.push_back(NodeRole::FirstPhaseRelay);
  }
  b.graph = link_graph(spec, inst.range_r, b.vertices);
  return b;
}

GridInstance with_backbone(const GridInstance& inst, const Backbone& b) {
  GridInstance out = inst;
  for (VertexId r : b.fprn_positions) {
    out.nodes.push_back(Node{r, NodeRole::FirstPhaseRelay});
  }
  std::erase_if(out.candidates, [&](VertexId c) {
    return std::find(b.fprn_positions.begin(), b.fprn_positions.end(), c) !=
           b.fprn_positions.end();
  });
  return out;
}

}  // namespace ildcc
