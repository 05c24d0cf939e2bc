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

#include "ildcc/abc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ildcc/errors.hpp"

namespace ildcc {

namespace {

// Slack on the "no worse than the backbone" connectivity floor.
constexpr double kFloorSlack = 1e-9;
constexpr double kRejectedWeight = 1e-9;

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::size_t PlacementVector::count() const {
  return static_cast<std::size_t>(std::count(alpha.begin(), alpha.end(), 1));
}

std::vector<std::size_t> PlacementVector::active() const {
  std::vector<std::size_t> on;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i]) on.push_back(i);
  }
  return on;
}

PlacementVector PlacementVector::from_indices(std::size_t n,
                                              std::span<const std::size_t> on) {
  PlacementVector p(n);
  for (std::size_t i : on) {
    if (i >= n) throw DomainError("placement index out of range");
    p.alpha[i] = 1;
  }
  return p;
}

void ColonyConfig::validate() const {
  if (colony_size < 2 || colony_size % 2 != 0) {
    throw DomainError("colony_size must be an even integer >= 2");
  }
  if (!(lambda2_min > 0.0) || !(lambda2_min < lambda2_max)) {
    throw DomainError("connectivity window needs 0 < lambda2_min < lambda2_max");
  }
  if (dims != 0 && budget > dims) throw DomainError("budget exceeds dims");
  if (!(modification_rate >= 0.0 && modification_rate <= 1.0)) {
    throw DomainError("modification_rate must lie in [0, 1]");
  }
}

bool better(const Evaluation& a, const Evaluation& b) {
  if (a.feasible != b.feasible) return a.feasible;
  if (a.feasible) return a.fitness < b.fitness;
  return a.violation < b.violation;
}

PlacementProblem::PlacementProblem(const Backbone& backbone, const GridInstance& inst,
                                   double lambda2_min, double lambda2_max,
                                   std::size_t budget)
    : backbone_size_(backbone.vertices.size()),
      backbone_vertices_(backbone.vertices),
      backbone_laplacian_(laplacian(backbone.graph).entries()),
      lambda2_min_(lambda2_min),
      lambda2_max_(lambda2_max),
      budget_(budget) {
  if (backbone.graph.node_count() != backbone_size_) {
    throw DomainError("backbone graph and vertex list disagree");
  }
  for (VertexId c : inst.candidates) {
    if (std::find(backbone_vertices_.begin(), backbone_vertices_.end(), c) ==
        backbone_vertices_.end()) {
      candidates_.push_back(c);
    }
  }
  const std::size_t d = candidates_.size();
  to_backbone_.resize(d);
  to_candidate_.resize(d);
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t b = 0; b < backbone_size_; ++b) {
      if (within_range(inst.spec, inst.range_r, candidates_[c], backbone_vertices_[b])) {
        to_backbone_[c].push_back(b);
      }
    }
    for (std::size_t o = 0; o < d; ++o) {
      if (o != c && within_range(inst.spec, inst.range_r, candidates_[c], candidates_[o])) {
        to_candidate_[c].push_back(o);
      }
    }
  }
  backbone_lambda2_ = backbone_size_ >= 2 ? fiedler_value(backbone.graph) : 0.0;
}

void PlacementProblem::check(const PlacementVector& alpha) const {
  if (alpha.size() != dims()) {
    throw DomainError("placement has " + std::to_string(alpha.size()) +
                      " entries, problem has " + std::to_string(dims()) + " candidates");
  }
}

Evaluation PlacementProblem::evaluate(const PlacementVector& alpha) const {
  check(alpha);
  const std::vector<std::size_t> on = alpha.active();
  const std::size_t n = backbone_size_ + on.size();
  std::vector<std::size_t> slot(dims(), 0);
  for (std::size_t t = 0; t < on.size(); ++t) slot[on[t]] = backbone_size_ + t;

  Evaluation ev;
  ev.nodes = n;

  DisjointSets sets(n);
  std::size_t components = n;
  for (std::size_t a = 0; a < backbone_size_; ++a) {
    for (std::size_t b = a + 1; b < backbone_size_; ++b) {
      if (backbone_laplacian_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) != 0 &&
          sets.unite(a, b)) {
        --components;
      }
    }
  }
  for (std::size_t c : on) {
    for (std::size_t b : to_backbone_[c]) {
      if (sets.unite(slot[c], b)) --components;
    }
    for (std::size_t o : to_candidate_[c]) {
      if (alpha.alpha[o] && sets.unite(slot[c], slot[o])) --components;
    }
  }
  ev.components = components;

  double violation = 0.0;
  if (on.size() > budget_) violation += static_cast<double>(on.size() - budget_);

  if (components == 1 && n >= 2) {
    const auto nb = static_cast<Eigen::Index>(backbone_size_);
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    l.topLeftCorner(nb, nb) = backbone_laplacian_.cast<double>();
    auto link = [&l](std::size_t p, std::size_t q) {
      const auto a = static_cast<Eigen::Index>(p);
      const auto b = static_cast<Eigen::Index>(q);
      l(a, b) -= 1.0;
      l(b, a) -= 1.0;
      l(a, a) += 1.0;
      l(b, b) += 1.0;
    };
    for (std::size_t c : on) {
      for (std::size_t b : to_backbone_[c]) link(slot[c], b);
      for (std::size_t o : to_candidate_[c]) {
        if (o > c && alpha.alpha[o]) link(slot[c], slot[o]);
      }
    }
    const Spectrum s = eigenvalues(l);
    ev.lambda2 = s.lambda2();
    if (s.connected()) ev.wiener = wiener_spectral(s, n);
  } else {
    ev.lambda2 = 0.0;
    violation += static_cast<double>(components - 1);
  }

  violation += std::max(0.0, lambda2_min_ - ev.lambda2);
  violation += std::max(0.0, ev.lambda2 - lambda2_max_);
  violation += std::max(0.0, backbone_lambda2_ - ev.lambda2 - kFloorSlack);
  ev.violation = violation;
  ev.feasible = violation == 0.0 && std::isfinite(ev.wiener);
  ev.fitness = ev.feasible ? ev.wiener : kRejected;
  return ev;
}

std::vector<VertexId> PlacementProblem::vertices_for(const PlacementVector& alpha) const {
  check(alpha);
  std::vector<VertexId> out = backbone_vertices_;
  for (std::size_t c : alpha.active()) out.push_back(candidates_[c]);
  return out;
}

NetworkGraph PlacementProblem::graph_for(const PlacementVector& alpha) const {
  check(alpha);
  const std::vector<std::size_t> on = alpha.active();
  NetworkGraph g(backbone_size_);
  for (std::size_t a = 0; a < backbone_size_; ++a) {
    for (std::size_t b = a + 1; b < backbone_size_; ++b) {
      if (backbone_laplacian_(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) != 0) {
        g.add_edge(a, b);
      }
    }
  }
  std::vector<std::size_t> slot(dims(), 0);
  for (std::size_t c : on) slot[c] = g.add_node();
  for (std::size_t c : on) {
    for (std::size_t b : to_backbone_[c]) g.add_edge(slot[c], b);
    for (std::size_t o : to_candidate_[c]) {
      if (o > c && alpha.alpha[o]) g.add_edge(slot[c], slot[o]);
    }
  }
  return g;
}

LaplacianMatrix PlacementProblem::updated_laplacian(const PlacementVector& alpha) const {
  check(alpha);
  const std::vector<std::size_t> on = alpha.active();
  const auto n = static_cast<Eigen::Index>(backbone_size_ + on.size());
  const auto nb = static_cast<Eigen::Index>(backbone_size_);
  Eigen::MatrixXi l = Eigen::MatrixXi::Zero(n, n);
  l.topLeftCorner(nb, nb) = backbone_laplacian_;
  std::vector<Eigen::Index> slot(dims(), 0);
  for (std::size_t t = 0; t < on.size(); ++t) slot[on[t]] = nb + static_cast<Eigen::Index>(t);
  auto add_incidence = [&](Eigen::Index p, Eigen::Index q) {
    Eigen::VectorXi a = Eigen::VectorXi::Zero(n);
    a(p) = 1;
    a(q) = -1;
    l += a * a.transpose();
  };
  for (std::size_t c : on) {
    for (std::size_t b : to_backbone_[c]) add_incidence(slot[c], static_cast<Eigen::Index>(b));
    for (std::size_t o : to_candidate_[c]) {
      if (o > c && alpha.alpha[o]) add_incidence(slot[c], slot[o]);
    }
  }
  return LaplacianMatrix(std::move(l));
}

PlacementVector decode(std::span<const double> position, std::size_t budget,
                       BudgetMode mode) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < position.size(); ++i) {
    if (mode == BudgetMode::Exact || position[i] > 0.5) order.push_back(i);
  }
  const std::size_t take = std::min(budget, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take),
                    order.end(), [&](std::size_t a, std::size_t b) {
                      if (position[a] != position[b]) return position[a] > position[b];
                      return a < b;
                    });
  order.resize(take);
  return PlacementVector::from_indices(position.size(), order);
}

PlacementVector decode_grown(std::span<const double> position,
                             const PlacementProblem& problem) {
  const std::size_t d = problem.dims();
  if (position.size() != d) throw DomainError("position size differs from candidate count");
  PlacementVector alpha(d);
  std::vector<std::uint8_t> reach(d, 0);
  for (std::size_t c = 0; c < d; ++c) reach[c] = !problem.backbone_neighbors(c).empty();
  const auto higher = [&](std::size_t a, std::size_t b) {
    return position[a] > position[b] || (position[a] == position[b] && a < b);
  };
  const std::size_t take = std::min(problem.budget(), d);
  for (std::size_t placed = 0; placed < take; ++placed) {
    std::size_t pick = d;
    std::size_t fallback = d;
    for (std::size_t c = 0; c < d; ++c) {
      if (alpha.alpha[c]) continue;
      if (fallback == d || higher(c, fallback)) fallback = c;
      if (reach[c] && (pick == d || higher(c, pick))) pick = c;
    }
    if (pick == d) pick = fallback;
    alpha.alpha[pick] = 1;
    for (std::size_t o : problem.candidate_neighbors(pick)) reach[o] = 1;
  }
  return alpha;
}

double fitness(const PlacementVector& alpha, const Backbone& backbone,
               const GridInstance& inst, const ColonyConfig& cfg) {
  const PlacementProblem problem(backbone, inst, cfg.lambda2_min, cfg.lambda2_max,
                                 alpha.size());
  return problem.evaluate(alpha).fitness;
}

PlacementVector PlacementEvaluator::decode(std::span<const double> position) const {
  if (mode_ == BudgetMode::Grown) return decode_grown(position, problem_);
  return ildcc::decode(position, problem_.budget(), mode_);
}

Evaluation PlacementEvaluator::evaluate(const PlacementVector& alpha) {
  std::string key;
  for (std::size_t i : alpha.active()) {
    key.push_back(static_cast<char>(i & 0xff));
    key.push_back(static_cast<char>((i >> 8) & 0xff));
  }
  if (auto it = cache_.find(key); it != cache_.end()) {
    ++cache_hits_;
    return it->second;
  }
  ++evaluations_;
  Evaluation ev = problem_.evaluate(alpha);
  cache_.emplace(std::move(key), ev);
  return ev;
}

std::size_t Colony::feasible_count() const {
  return static_cast<std::size_t>(std::count_if(
      sources.begin(), sources.end(), [](const FoodSource& s) { return s.eval.feasible; }));
}

std::vector<double> neighbor_position(std::span<const double> x, std::size_t j,
                                      std::span<const double> partner, double u) {
  std::vector<double> out(x.begin(), x.end());
  out.at(j) = std::clamp(x[j] + u * (x[j] - partner[j]), 0.0, 1.0);
  return out;
}

bool try_improve(FoodSource& source, std::vector<double> candidate,
                 PlacementEvaluator& evaluator) {
  PlacementVector placement = evaluator.decode(candidate);
  const Evaluation ev = evaluator.evaluate(placement);
  if (better(ev, source.eval)) {
    source.position = std::move(candidate);
    source.placement = std::move(placement);
    source.eval = ev;
    source.trial_counter = 0;
    return true;
  }
  ++source.trial_counter;
  return false;
}

std::vector<double> selection_weights(const Colony& colony) {
  std::vector<double> w(colony.sources.size(), 1.0);
  if (colony.feasible_count() == 0) return w;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Evaluation& ev = colony.sources[i].eval;
    w[i] = ev.feasible ? 1.0 / (1.0 + ev.fitness) : kRejectedWeight;
  }
  return w;
}

std::size_t roulette(std::span<const double> weights, Rng& rng) {
  if (weights.empty()) throw DomainError("roulette over no weights");
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double r = rng.uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (r < acc) return i;
  }
  return weights.size() - 1;
}

namespace {

std::vector<double> random_position(std::size_t d, Rng& rng) {
  std::vector<double> x(d);
  for (double& v : x) v = rng.uniform();
  return x;
}

FoodSource fresh_source(PlacementEvaluator& evaluator, Rng& rng) {
  FoodSource s;
  s.position = random_position(evaluator.problem().dims(), rng);
  s.placement = evaluator.decode(s.position);
  s.eval = evaluator.evaluate(s.placement);
  return s;
}

double draw_u(const ColonyConfig& cfg, Rng& rng) {
  return cfg.u_range == URange::Symmetric ? rng.uniform(-1.0, 1.0) : rng.uniform();
}

void move_bee(Colony& colony, std::size_t i, PlacementEvaluator& evaluator,
              const ColonyConfig& cfg, Rng& rng) {
  const std::size_t sn = colony.sources.size();
  const std::size_t d = evaluator.problem().dims();
  const std::size_t j = rng.index(d);
  std::size_t k = i;
  if (sn > 1) {
    k = rng.index(sn - 1);
    if (k >= i) ++k;
  }
  const double u = draw_u(cfg, rng);
  FoodSource& src = colony.sources[i];
  const std::vector<double>& partner = colony.sources[k].position;
  std::vector<double> candidate = neighbor_position(src.position, j, partner, u);
  if (cfg.modification_rate > 0.0) {
    for (std::size_t m = 0; m < d; ++m) {
      if (m == j || rng.uniform() >= cfg.modification_rate) continue;
      const double um = draw_u(cfg, rng);
      candidate[m] = std::clamp(src.position[m] + um * (src.position[m] - partner[m]), 0.0, 1.0);
    }
  }
  try_improve(src, std::move(candidate), evaluator);
}

}  // namespace

Colony initialize_colony(PlacementEvaluator& evaluator, const ColonyConfig& cfg, Rng& rng) {
  Colony colony;
  colony.sources.reserve(cfg.food_sources());
  for (std::size_t i = 0; i < cfg.food_sources(); ++i) {
    colony.sources.push_back(fresh_source(evaluator, rng));
  }
  memorize_best(colony);
  return colony;
}

void employed_phase(Colony& colony, PlacementEvaluator& evaluator,
                    const ColonyConfig& cfg, Rng& rng) {
  if (evaluator.problem().dims() == 0) return;
  for (std::size_t i = 0; i < colony.sources.size(); ++i) {
    move_bee(colony, i, evaluator, cfg, rng);
  }
}

void onlooker_phase(Colony& colony, PlacementEvaluator& evaluator,
                    const ColonyConfig& cfg, Rng& rng) {
  if (evaluator.problem().dims() == 0 || colony.sources.empty()) return;
  const std::vector<double> weights = selection_weights(colony);
  for (std::size_t t = 0; t < colony.sources.size(); ++t) {
    move_bee(colony, roulette(weights, rng), evaluator, cfg, rng);
  }
}

long scout_phase(Colony& colony, PlacementEvaluator& evaluator,
                 const ColonyConfig& cfg, Rng& rng) {
  const std::size_t limit = cfg.limit_for(evaluator.problem().dims());
  long chosen = -1;
  for (std::size_t i = 0; i < colony.sources.size(); ++i) {
    const std::size_t t = colony.sources[i].trial_counter;
    if (t > limit && (chosen < 0 || t > colony.sources[static_cast<std::size_t>(chosen)].trial_counter)) {
      chosen = static_cast<long>(i);
    }
  }
  if (chosen >= 0) {
    colony.sources[static_cast<std::size_t>(chosen)] = fresh_source(evaluator, rng);
  }
  return chosen;
}

void memorize_best(Colony& colony) {
  for (const FoodSource& s : colony.sources) {
    if (s.eval.feasible && (!colony.has_best || s.eval.fitness < colony.best.eval.fitness)) {
      colony.best = s;
      colony.has_best = true;
    }
  }
}

AbcResult optimize(const Backbone& backbone, const GridInstance& inst,
                   const ColonyConfig& cfg) {
  const PlacementProblem problem(backbone, inst, cfg.lambda2_min, cfg.lambda2_max,
                                 cfg.budget);
  return optimize(problem, cfg);
}

AbcResult optimize(const PlacementProblem& problem, const ColonyConfig& cfg) {
  cfg.validate();
  const std::size_t d = problem.dims();
  if (cfg.dims != 0 && cfg.dims != d) {
    throw DomainError("colony dims " + std::to_string(cfg.dims) + " != candidate count " +
                      std::to_string(d));
  }
  if (cfg.budget > d) throw DomainError("budget exceeds candidate count");
  if (cfg.budget != problem.budget()) throw DomainError("budget differs from problem budget");

  PlacementEvaluator evaluator(problem, cfg.budget_mode);
  AbcResult result;
  auto finish = [&](const PlacementVector& alpha, const Evaluation& ev, bool feasible) {
    result.best_alpha = alpha;
    result.feasible = feasible;
    result.best_fitness = feasible ? ev.fitness : ev.wiener;
    result.best_lambda2 = ev.lambda2;
    result.updated_laplacian = problem.updated_laplacian(alpha);
    result.evaluations = evaluator.evaluations();
    result.cache_hits = evaluator.cache_hits();
  };

  const PlacementVector empty(d);
  if (cfg.budget == 0) {
    const Evaluation ev = evaluator.evaluate(empty);
    finish(empty, ev, ev.feasible);
    return result;
  }

  Rng rng(cfg.seed);
  Colony colony = initialize_colony(evaluator, cfg, rng);
  result.history.reserve(cfg.generations);
  for (std::size_t g = 0; g < cfg.generations; ++g) {
    employed_phase(colony, evaluator, cfg, rng);
    memorize_best(colony);
    onlooker_phase(colony, evaluator, cfg, rng);
    memorize_best(colony);
    scout_phase(colony, evaluator, cfg, rng);
    memorize_best(colony);
    GenerationRecord rec;
    rec.generation = g + 1;
    rec.feasible_count = colony.feasible_count();
    if (colony.has_best) {
      rec.best_fitness = colony.best.eval.fitness;
      rec.lambda2 = colony.best.eval.lambda2;
    }
    result.history.push_back(rec);
  }

  if (colony.has_best) {
    finish(colony.best.placement, colony.best.eval, true);
  } else {
    // In exact mode the empty placement does not reach the requested size.
    const Evaluation ev = evaluator.evaluate(empty);
    finish(empty, ev, ev.feasible && cfg.budget_mode == BudgetMode::AtMost);
  }
  return result;
}

}  // namespace ildcc
