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

// Small seeded placement instances shared by the unit and acceptance tests.

#ifndef ILDCC_TESTS_TOYS_HPP_
#define ILDCC_TESTS_TOYS_HPP_

#include <algorithm>
#include <optional>
#include <random>

#include "ildcc/abc.hpp"
#include "ildcc/backbone.hpp"
#include "ildcc/errors.hpp"
#include "oracles.hpp"

namespace toys {

struct ToyInstance {
  ildcc::GridInstance instance;
  ildcc::Backbone backbone;
  oracle::Toy toy;
  oracle::ToyOptimum optimum;
};

// Random BS + CHs on a 3x3x3 grid with axis-only links, `n_c` random free
// candidates and the given budget and window. Returns nothing when the
// backbone cannot be built or no placement is feasible.
inline std::optional<ToyInstance> make_toy(std::uint64_t seed, std::size_t heads,
                                           std::size_t n_c, std::size_t budget,
                                           double lambda2_min, double lambda2_max,
                                           bool exact = false) {
  std::mt19937_64 gen(seed);
  ildcc::GridInstance inst;
  inst.spec.dims = {3, 3, 3};
  inst.spec.cell_edge = 100.0;
  inst.range_r = 100.0;
  std::vector<ildcc::VertexId> all(inst.spec.vertex_count());
  for (ildcc::VertexId v = 0; v < all.size(); ++v) all[v] = v;
  std::shuffle(all.begin(), all.end(), gen);
  inst.nodes.push_back({all[0], ildcc::NodeRole::BaseStation});
  for (std::size_t c = 1; c <= heads; ++c) {
    inst.nodes.push_back({all[c], ildcc::NodeRole::ClusterHead});
  }
  ToyInstance t;
  try {
    t.backbone = ildcc::build_backbone(inst);
  } catch (const ildcc::InfeasibleError&) {
    return std::nullopt;
  }
  std::vector<ildcc::VertexId> free;
  for (ildcc::VertexId v : all) {
    if (std::find(t.backbone.vertices.begin(), t.backbone.vertices.end(), v) ==
        t.backbone.vertices.end()) {
      free.push_back(v);
    }
  }
  if (free.size() < n_c) return std::nullopt;
  free.resize(n_c);
  inst.candidates = free;
  t.instance = inst;
  t.toy.dims = inst.spec.dims;
  t.toy.range = 1.0;
  t.toy.backbone = t.backbone.vertices;
  t.toy.candidates = free;
  t.toy.lambda2_min = lambda2_min;
  t.toy.lambda2_max = lambda2_max;
  t.toy.budget = budget;
  t.optimum = oracle::brute_force_placement(t.toy, exact);
  if (t.optimum.fitness < 0.0) return std::nullopt;
  return t;
}

// The first `count` feasible toys drawn from consecutive seeds.
inline std::vector<ToyInstance> toy_suite(std::size_t count, std::uint64_t first_seed) {
  std::vector<ToyInstance> out;
  for (std::uint64_t seed = first_seed; out.size() < count && seed < first_seed + 10000; ++seed) {
    const std::size_t heads = 2 + seed % 3;
    const std::size_t n_c = 8 + seed % 5;
    const std::size_t budget = 1 + seed % 3;
    if (auto t = make_toy(seed, heads, n_c, budget, 0.4, 0.6)) out.push_back(std::move(*t));
  }
  return out;
}

}  // namespace toys

#endif  // ILDCC_TESTS_TOYS_HPP_
