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

#ifndef ILDCC_TOPOLOGY_HPP_
#define ILDCC_TOPOLOGY_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ildcc {

// Vertex ids enumerate the grid in lexicographic (i, j, k) order, so comparing
// ids compares coordinates lexicographically.
using VertexId = std::size_t;

struct Coord {
  int i = 0;
  int j = 0;
  int k = 0;
  auto operator<=>(const Coord&) const = default;
};

// Cubic 3-D grid: dims[a] vertices along each axis, cell_edge meters apart.
struct GridSpec {
  std::array<int, 3> dims{1, 1, 1};
  double cell_edge = 100.0;

  std::size_t vertex_count() const;
  bool contains(const Coord& c) const;
  bool contains(VertexId v) const { return v < vertex_count(); }
  // Both throw DomainError when out of range.
  VertexId id_of(const Coord& c) const;
  Coord coord_of(VertexId v) const;
  void validate() const;

  bool operator==(const GridSpec&) const = default;
};

enum class NodeRole { BaseStation, ClusterHead, FirstPhaseRelay, SecondPhaseRelay };

std::string_view to_string(NodeRole role);
NodeRole role_from_string(std::string_view name);

struct Node {
  VertexId vertex = 0;
  NodeRole role = NodeRole::ClusterHead;
  bool operator==(const Node&) const = default;
};

struct GridInstance {
  GridSpec spec;
  std::vector<Node> nodes;
  double range_r = 100.0;
  // Free vertices eligible for second-phase relays.
  std::vector<VertexId> candidates;

  // Throws DomainError on any broken invariant: exactly one base station,
  // distinct node vertices, candidates valid, unique and unoccupied.
  void validate() const;

  // Vertices holding a node, in node order.
  std::vector<VertexId> occupied() const;
  // Node vertices followed by candidates.
  std::vector<VertexId> all_vertices() const;
  VertexId base_station() const;

  bool operator==(const GridInstance&) const = default;
};

// Unordered vertex pair, stored with first < second.
using Link = std::pair<VertexId, VertexId>;

double euclidean_distance(const GridSpec& spec, VertexId a, VertexId b);

// Link feasibility is inclusive at exactly `range` (1e-9 relative slack
// absorbs rounding in the square root).
bool within_range(const GridSpec& spec, double range, VertexId a, VertexId b);

// All pairs of occupied/candidate vertices within range_r, sorted.
std::vector<Link> feasible_links(const GridInstance& inst);
std::vector<Link> feasible_links(const GridSpec& spec, double range,
                                 std::span<const VertexId> vertices);

// Lattice offsets (di, dj, dk) != 0 whose length is within range.
std::vector<std::array<int, 3>> hop_offsets(const GridSpec& spec, double range);

// Minimum number of intermediate vertices joining a and b with hops of length
// <= range. Vertices marked in `blocked` (indexed by VertexId) cannot host a
// relay; a and b themselves are always allowed. Among minimum paths the
// lexicographically smallest vertex-id sequence is returned. Throws
// InfeasibleError when no path exists, DomainError when a == b.
std::vector<VertexId> grid_path_relays(VertexId a, VertexId b,
                                       const GridSpec& spec, double range,
                                       const std::vector<bool>& blocked);

// Same, blocking every vertex occupied by a node of the instance.
std::vector<VertexId> grid_path_relays(VertexId a, VertexId b,
                                       const GridInstance& inst);

// Sum of hop lengths along a -> relays... -> b, in meters.
double path_length(const GridSpec& spec, VertexId a,
                   std::span<const VertexId> relays, VertexId b);

// Plain-text instance document (JSON). Schema in docs/FORMATS.md.
std::string instance_to_json(const GridInstance& inst);
GridInstance instance_from_json(std::string_view text);
void save_instance(const GridInstance& inst, const std::string& path);
GridInstance load_instance(const std::string& path);

}  // namespace ildcc

#endif  // ILDCC_TOPOLOGY_HPP_
