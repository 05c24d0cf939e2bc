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

#include "ildcc/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

#include "ildcc/errors.hpp"

namespace ildcc {

namespace {

constexpr double kRangeSlack = 1e-9;
constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

std::string coord_str(const Coord& c) {
  return "(" + std::to_string(c.i) + "," + std::to_string(c.j) + "," +
         std::to_string(c.k) + ")";
}

}  // namespace

std::size_t GridSpec::vertex_count() const {
  return static_cast<std::size_t>(dims[0]) * static_cast<std::size_t>(dims[1]) *
         static_cast<std::size_t>(dims[2]);
}

bool GridSpec::contains(const Coord& c) const {
  return c.i >= 0 && c.i < dims[0] && c.j >= 0 && c.j < dims[1] && c.k >= 0 &&
         c.k < dims[2];
}

VertexId GridSpec::id_of(const Coord& c) const {
  if (!contains(c)) throw DomainError("vertex " + coord_str(c) + " outside grid");
  return (static_cast<VertexId>(c.i) * dims[1] + c.j) * dims[2] + c.k;
}

Coord GridSpec::coord_of(VertexId v) const {
  if (!contains(v)) {
    throw DomainError("vertex id " + std::to_string(v) + " outside grid");
  }
  const auto nz = static_cast<VertexId>(dims[2]);
  const auto ny = static_cast<VertexId>(dims[1]);
  return Coord{static_cast<int>(v / (ny * nz)), static_cast<int>((v / nz) % ny),
               static_cast<int>(v % nz)};
}

void GridSpec::validate() const {
  for (int d : dims) {
    if (d < 1) throw DomainError("grid dimensions must be >= 1");
  }
  if (!(cell_edge > 0.0) || !std::isfinite(cell_edge)) {
    throw DomainError("cell_edge must be positive");
  }
}

std::string_view to_string(NodeRole role) {
  switch (role) {
    case NodeRole::BaseStation:
      return "BaseStation";
    case NodeRole::ClusterHead:
      return "ClusterHead";
    case NodeRole::FirstPhaseRelay:
      return "FirstPhaseRelay";
    case NodeRole::SecondPhaseRelay:
      return "SecondPhaseRelay";
  }
  return "?";
}

NodeRole role_from_string(std::string_view name) {
  for (NodeRole r : {NodeRole::BaseStation, NodeRole::ClusterHead,
                     NodeRole::FirstPhaseRelay, NodeRole::SecondPhaseRelay}) {
    if (to_string(r) == name) return r;
  }
  throw DomainError("unknown node role '" + std::string(name) + "'");
}

void GridInstance::validate() const {
  spec.validate();
  if (!(range_r > 0.0) || !std::isfinite(range_r)) {
    throw DomainError("range_r must be positive");
  }
  std::set<VertexId> seen;
  int stations = 0;
  for (const Node& n : nodes) {
    if (!spec.contains(n.vertex)) {
      throw DomainError("node vertex " + std::to_string(n.vertex) + " outside grid");
    }
    if (!seen.insert(n.vertex).second) {
      throw DomainError("two nodes share vertex " +
                        coord_str(spec.coord_of(n.vertex)));
    }
    if (n.role == NodeRole::BaseStation) ++stations;
  }
  if (stations != 1) {
    throw DomainError("instance must have exactly one base station, found " +
                      std::to_string(stations));
  }
  std::set<VertexId> cands;
  for (VertexId c : candidates) {
    if (!spec.contains(c)) {
      throw DomainError("candidate " + std::to_string(c) + " outside grid");
    }
    if (seen.contains(c)) {
      throw DomainError("candidate " + coord_str(spec.coord_of(c)) +
                        " is occupied by a node");
    }
    if (!cands.insert(c).second) {
      throw DomainError("duplicate candidate " + coord_str(spec.coord_of(c)));
    }
  }
}

std::vector<VertexId> GridInstance::occupied() const {
  std::vector<VertexId> out;
  out.reserve(nodes.size());
  for (const Node& n : nodes) out.push_back(n.vertex);
  return out;
}

std::vector<VertexId> GridInstance::all_vertices() const {
  std::vector<VertexId> out = occupied();
  out.insert(out.end(), candidates.begin(), candidates.end());
  return out;
}

VertexId GridInstance::base_station() const {
  for (const Node& n : nodes) {
    if (n.role == NodeRole::BaseStation) return n.vertex;
  }
  throw DomainError("instance has no base station");
}

double euclidean_distance(const GridSpec& spec, VertexId a, VertexId b) {
  const Coord ca = spec.coord_of(a);
  const Coord cb = spec.coord_of(b);
  const double di = ca.i - cb.i;
  const double dj = ca.j - cb.j;
  const double dk = ca.k - cb.k;
  return spec.cell_edge * std::sqrt(di * di + dj * dj + dk * dk);
}

bool within_range(const GridSpec& spec, double range, VertexId a, VertexId b) {
  return euclidean_distance(spec, a, b) <= range * (1.0 + kRangeSlack);
}

std::vector<Link> feasible_links(const GridSpec& spec, double range,
                                 std::span<const VertexId> vertices) {
  std::vector<Link> links;
  for (std::size_t x = 0; x < vertices.size(); ++x) {
    for (std::size_t y = x + 1; y < vertices.size(); ++y) {
      VertexId u = vertices[x];
      VertexId v = vertices[y];
      if (u == v) continue;
      if (within_range(spec, range, u, v)) links.emplace_back(std::min(u, v), std::max(u, v));
    }
  }
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
  return links;
}

std::vector<Link> feasible_links(const GridInstance& inst) {
  const std::vector<VertexId> all = inst.all_vertices();
  return feasible_links(inst.spec, inst.range_r, all);
}

std::vector<std::array<int, 3>> hop_offsets(const GridSpec& spec, double range) {
  const int reach = static_cast<int>(std::floor(range / spec.cell_edge + 1e-9));
  const double limit = range * (1.0 + kRangeSlack);
  std::vector<std::array<int, 3>> out;
  for (int di = -reach; di <= reach; ++di) {
    for (int dj = -reach; dj <= reach; ++dj) {
      for (int dk = -reach; dk <= reach; ++dk) {
        if (di == 0 && dj == 0 && dk == 0) continue;
        const double len =
            spec.cell_edge * std::sqrt(static_cast<double>(di * di + dj * dj + dk * dk));
        if (len <= limit) out.push_back({di, dj, dk});
      }
    }
  }
  return out;
}

std::vector<VertexId> grid_path_relays(VertexId a, VertexId b,
                                       const GridSpec& spec, double range,
                                       const std::vector<bool>& blocked) {
  if (a == b) throw DomainError("grid_path_relays needs distinct endpoints");
  const Coord ca = spec.coord_of(a);
  spec.coord_of(b);
  if (within_range(spec, range, a, b)) return {};

  const auto offsets = hop_offsets(spec, range);
  const std::size_t nv = spec.vertex_count();
  auto passable = [&](VertexId v) {
    return v == a || v == b || v >= blocked.size() || !blocked[v];
  };
  auto for_neighbors = [&](VertexId v, auto&& fn) {
    const Coord c = spec.coord_of(v);
    for (const auto& o : offsets) {
      const Coord w{c.i + o[0], c.j + o[1], c.k + o[2]};
      if (spec.contains(w)) fn(spec.id_of(w));
    }
  };

  // Hop distance to b over passable vertices; the forward walk then picks the
  // smallest-id successor on a shortest path, giving the lexicographically
  // smallest sequence.
  std::vector<std::size_t> dist(nv, kUnreached);
  std::deque<VertexId> queue{b};
  dist[b] = 0;
  while (!queue.empty() && dist[a] == kUnreached) {
    const VertexId v = queue.front();
    queue.pop_front();
    for_neighbors(v, [&](VertexId w) {
      if (dist[w] == kUnreached && passable(w)) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    });
  }
  if (dist[a] == kUnreached) {
    throw InfeasibleError("no grid path from " + coord_str(ca) + " to " +
                          coord_str(spec.coord_of(b)) + " within range");
  }

  std::vector<VertexId> relays;
  VertexId cur = a;
  while (dist[cur] > 1) {
    VertexId next = kUnreached;
    for_neighbors(cur, [&](VertexId w) {
      if (dist[w] == dist[cur] - 1 && w < next) next = w;
    });
    relays.push_back(next);
    cur = next;
  }
  return relays;
}

std::vector<VertexId> grid_path_relays(VertexId a, VertexId b,
                                       const GridInstance& inst) {
  std::vector<bool> blocked(inst.spec.vertex_count(), false);
  for (const Node& n : inst.nodes) blocked[n.vertex] = true;
  return grid_path_relays(a, b, inst.spec, inst.range_r, blocked);
}

double path_length(const GridSpec& spec, VertexId a,
                   std::span<const VertexId> relays, VertexId b) {
  double total = 0.0;
  VertexId prev = a;
  for (VertexId r : relays) {
    total += euclidean_distance(spec, prev, r);
    prev = r;
  }
  return total + euclidean_distance(spec, prev, b);
}

}  // namespace ildcc
