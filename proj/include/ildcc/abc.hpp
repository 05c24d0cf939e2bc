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

// Artificial Bee Colony search over second-phase relay placements.
//
// Each food source is a point in [0,1]^D, one coordinate per candidate
// vertex. `decode` turns it into a binary placement; the placement extends
// the backbone Laplacian with the links of every activated relay and its
// fitness is n * sum_{i>=2} 1/lambda_i of the result. Placements whose
// algebraic connectivity leaves [lambda2_min, lambda2_max], drops below the
// backbone's, or that exceed the budget are rejected: their fitness is
// +infinity and they can never become the reported best. Greedy selection
// between two rejected sources prefers the smaller constraint violation so
// the colony can climb back into the feasible region.

#ifndef ILDCC_ABC_HPP_
#define ILDCC_ABC_HPP_

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ildcc/backbone.hpp"
#include "ildcc/random.hpp"
#include "ildcc/spectral.hpp"
#include "ildcc/topology.hpp"

namespace ildcc {

inline constexpr double kRejected = std::numeric_limits<double>::infinity();

struct PlacementVector {
  std::vector<std::uint8_t> alpha;

  PlacementVector() = default;
  explicit PlacementVector(std::size_t n) : alpha(n, 0) {}

  std::size_t size() const { return alpha.size(); }
  std::size_t count() const;
  std::vector<std::size_t> active() const;

  static PlacementVector from_indices(std::size_t n, std::span<const std::size_t> on);

  bool operator==(const PlacementVector&) const = default;
};

// Step scale u of the neighbor move: [-1, 1] (canonical) or [0, 1].
enum class URange { Symmetric, Unit };
// AtMost: activate up to `budget` candidates whose value exceeds 0.5.
// Exact: always activate the `budget` highest-valued candidates.
// Grown: activate `budget` candidates one at a time, each the highest-valued
// candidate within range of the network built so far (falls back to the
// highest-valued remaining one when none is in range).
enum class BudgetMode { AtMost, Exact, Grown };

struct ColonyConfig {
  std::size_t colony_size = 40;  // employed + onlooker bees; food sources = half
  std::size_t dims = 0;          // 0: take the candidate count of the problem
  std::size_t generations = 200;
  std::size_t abandonment_limit = 0;  // 0: colony_size * dims / 2
  std::size_t budget = 0;
  double lambda2_min = 0.4;
  double lambda2_max = 0.6;
  std::uint64_t seed = 1;
  URange u_range = URange::Symmetric;
  BudgetMode budget_mode = BudgetMode::AtMost;
  // Probability that each further coordinate is moved along with the drawn
  // one. 0 moves a single coordinate per bee.
  double modification_rate = 0.0;

  std::size_t food_sources() const { return colony_size / 2; }
  std::size_t limit_for(std::size_t d) const {
    return abandonment_limit > 0 ? abandonment_limit : colony_size * d / 2;
  }
  // Throws DomainError: odd or < 2 colony, empty window, budget > dims.
  void validate() const;
};

struct Evaluation {
  double fitness = kRejected;  // kRejected unless feasible
  double wiener = kRejected;   // spectral index; finite whenever connected
  double lambda2 = 0.0;
  double violation = 0.0;
  std::size_t nodes = 0;
  std::size_t components = 0;
  bool feasible = false;
};

// Feasible beats rejected; feasible pairs compare fitness, rejected pairs
// compare violation. Strict: equal sources are not better.
bool better(const Evaluation& a, const Evaluation& b);

// Backbone plus candidate geometry, shared read-only by all evaluations.
class PlacementProblem {
 public:
  PlacementProblem(const Backbone& backbone, const GridInstance& inst,
                   double lambda2_min, double lambda2_max, std::size_t budget);

  std::size_t dims() const { return candidates_.size(); }
  std::size_t backbone_size() const { return backbone_size_; }
  const std::vector<VertexId>& candidates() const { return candidates_; }
  double backbone_lambda2() const { return backbone_lambda2_; }
  // Neighbors in range of candidate c: backbone node indices / candidate indices.
  const std::vector<std::size_t>& backbone_neighbors(std::size_t c) const {
    return to_backbone_.at(c);
  }
  const std::vector<std::size_t>& candidate_neighbors(std::size_t c) const {
    return to_candidate_.at(c);
  }
  double lambda2_min() const { return lambda2_min_; }
  double lambda2_max() const { return lambda2_max_; }
  std::size_t budget() const { return budget_; }

  Evaluation evaluate(const PlacementVector& alpha) const;

  // Backbone nodes followed by the activated candidates in index order.
  NetworkGraph graph_for(const PlacementVector& alpha) const;
  std::vector<VertexId> vertices_for(const PlacementVector& alpha) const;

  // Initial Laplacian, zero-padded, plus a a^T for the incidence vector a of
  // every link an activated relay brings.
  LaplacianMatrix updated_laplacian(const PlacementVector& alpha) const;

 private:
  void check(const PlacementVector& alpha) const;

  std::size_t backbone_size_ = 0;
  std::vector<VertexId> backbone_vertices_;
  Eigen::MatrixXi backbone_laplacian_;
  std::vector<VertexId> candidates_;
  // Per candidate: backbone node indices and other candidate indices in range.
  std::vector<std::vector<std::size_t>> to_backbone_;
  std::vector<std::vector<std::size_t>> to_candidate_;
  double backbone_lambda2_ = 0.0;
  double lambda2_min_ = 0.0;
  double lambda2_max_ = 0.0;
  std::size_t budget_ = 0;
};

PlacementVector decode(std::span<const double> position, std::size_t budget,
                       BudgetMode mode = BudgetMode::AtMost);

PlacementVector decode_grown(std::span<const double> position, const PlacementProblem& problem);

// Fitness of a placement: kRejected outside the connectivity window.
double fitness(const PlacementVector& alpha, const Backbone& backbone,
               const GridInstance& inst, const ColonyConfig& cfg = {});

// Decodes positions and memoizes evaluations by activated set.
class PlacementEvaluator {
 public:
  PlacementEvaluator(const PlacementProblem& problem, BudgetMode mode)
      : problem_(problem), mode_(mode) {}

  const PlacementProblem& problem() const { return problem_; }
  PlacementVector decode(std::span<const double> position) const;
  Evaluation evaluate(const PlacementVector& alpha);

  std::size_t evaluations() const { return evaluations_; }
  std::size_t cache_hits() const { return cache_hits_; }

 private:
  const PlacementProblem& problem_;
  BudgetMode mode_;
  std::unordered_map<std::string, Evaluation> cache_;
  std::size_t evaluations_ = 0;
  std::size_t cache_hits_ = 0;
};

struct FoodSource {
  std::vector<double> position;
  std::size_t trial_counter = 0;
  PlacementVector placement;
  Evaluation eval;
};

struct Colony {
  std::vector<FoodSource> sources;
  bool has_best = false;
  FoodSource best;  // best feasible source seen so far

  std::size_t feasible_count() const;
};

// x with coordinate j moved to clamp(x_j + u (x_j - partner_j), 0, 1).
std::vector<double> neighbor_position(std::span<const double> x, std::size_t j,
                                      std::span<const double> partner, double u);

// Replaces the source when the candidate position is strictly better,
// resetting its trial counter; otherwise increments the counter.
bool try_improve(FoodSource& source, std::vector<double> candidate,
                 PlacementEvaluator& evaluator);

// Onlooker weights: 1/(1 + fitness) for feasible sources, a small epsilon for
// rejected ones, uniform when every source is rejected.
std::vector<double> selection_weights(const Colony& colony);
std::size_t roulette(std::span<const double> weights, Rng& rng);

Colony initialize_colony(PlacementEvaluator& evaluator, const ColonyConfig& cfg, Rng& rng);
void employed_phase(Colony& colony, PlacementEvaluator& evaluator,
                    const ColonyConfig& cfg, Rng& rng);
void onlooker_phase(Colony& colony, PlacementEvaluator& evaluator,
                    const ColonyConfig& cfg, Rng& rng);
// Resets at most one exhausted source (largest trial counter, lowest index
// on ties). Returns its index, or -1 when none exceeded the limit.
long scout_phase(Colony& colony, PlacementEvaluator& evaluator,
                 const ColonyConfig& cfg, Rng& rng);
// Updates colony.best from the current sources.
void memorize_best(Colony& colony);

struct GenerationRecord {
  std::size_t generation = 0;
  double best_fitness = kRejected;
  double lambda2 = 0.0;
  std::size_t feasible_count = 0;
};

struct AbcResult {
  PlacementVector best_alpha;
  double best_fitness = kRejected;
  double best_lambda2 = 0.0;
  // False when no placement met the constraints; best_alpha is then empty
  // and best_fitness describes the backbone alone.
  bool feasible = false;
  std::vector<GenerationRecord> history;
  LaplacianMatrix updated_laplacian;
  std::size_t evaluations = 0;
  std::size_t cache_hits = 0;
};

AbcResult optimize(const Backbone& backbone, const GridInstance& inst,
                   const ColonyConfig& cfg);
AbcResult optimize(const PlacementProblem& problem, const ColonyConfig& cfg);

}  // namespace ildcc

#endif  // ILDCC_ABC_HPP_
