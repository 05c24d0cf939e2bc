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

#include "ildcc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "ildcc/errors.hpp"

namespace ildcc {

NetworkGraph::NetworkGraph(std::size_t n, std::span<const Edge> edges)
    : adjacency_(n) {
  for (const auto& [u, v] : edges) add_edge(u, v);
}

std::size_t NetworkGraph::add_node() {
  adjacency_.emplace_back();
  return adjacency_.size() - 1;
}

void NetworkGraph::add_edge(std::size_t u, std::size_t v) {
  const std::size_t n = node_count();
  if (u >= n || v >= n) {
    throw DomainError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                      ") outside [0," + std::to_string(n) + ")");
  }
  if (u == v) throw DomainError("self-loop at node " + std::to_string(u));
  if (has_edge(u, v)) {
    throw DomainError("duplicate edge (" + std::to_string(u) + "," +
                      std::to_string(v) + ")");
  }
  auto insert_sorted = [](std::vector<std::size_t>& list, std::size_t x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
  };
  insert_sorted(adjacency_[u], v);
  insert_sorted(adjacency_[v], u);
  edges_.emplace_back(std::min(u, v), std::max(u, v));
}

bool NetworkGraph::has_edge(std::size_t u, std::size_t v) const {
  if (u >= node_count() || v >= node_count()) return false;
  const auto& list = adjacency_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

std::size_t component_count(const NetworkGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<bool> seen(n, false);
  std::size_t components = 0;
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t w : g.neighbors(u)) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return components;
}

void LaplacianMatrix::dump(std::ostream& out) const {
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
      if (j > 0) out << ' ';
      out << entries_(i, j);
    }
    out << '\n';
  }
}

LaplacianMatrix laplacian(const NetworkGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXi m = Eigen::MatrixXi::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    const auto a = static_cast<Eigen::Index>(u);
    const auto b = static_cast<Eigen::Index>(v);
    m(a, b) = -1;
    m(b, a) = -1;
    ++m(a, a);
    ++m(b, b);
  }
  return LaplacianMatrix(std::move(m));
}

double Spectrum::lambda2() const {
  if (values.size() < 2) throw DomainError("lambda2 needs at least two eigenvalues");
  return values[1];
}

Spectrum eigenvalues(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) throw DomainError("eigenvalues: matrix is not square");
  if (!(tol > 0.0)) throw DomainError("eigenvalues: tolerance must be positive");
  const Eigen::Index n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(m(i, j)), std::abs(m(j, i))});
      if (std::abs(m(i, j) - m(j, i)) > tol * scale) {
        throw DomainError("eigenvalues: matrix is not symmetric at (" +
                          std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  Spectrum s;
  if (n == 0) return s;

  // Backward-stable tridiagonal QR; absolute error is bounded by a small
  // multiple of n * eps * ||m||_F.
  const double bound = static_cast<double>(n) *
                       std::numeric_limits<double>::epsilon() * m.norm();
  if (bound > tol) {
    throw NumericError("eigenvalues: tolerance " + std::to_string(tol) +
                       " below attainable precision " + std::to_string(bound));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigenvalues: symmetric QR iteration did not converge");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  s.values.assign(ev.data(), ev.data() + ev.size());
  std::sort(s.values.begin(), s.values.end());
  return s;
}

Spectrum eigenvalues(const LaplacianMatrix& l, double tol) {
  return eigenvalues(l.to_real(), tol);
}

double fiedler_value(const NetworkGraph& g) {
  if (g.node_count() < 2) throw DomainError("fiedler_value needs n >= 2");
  return eigenvalues(laplacian(g)).lambda2();
}

double wiener_spectral(const Spectrum& s, std::size_t n) {
  if (n < 2) throw DomainError("wiener_spectral needs n >= 2");
  if (s.size() != n) throw DomainError("wiener_spectral: spectrum size != n");
  if (!(s.lambda2() > kConnectedTolerance)) {
    throw InfeasibleError("wiener_spectral: graph is disconnected (lambda2 = " +
                          std::to_string(s.lambda2()) + ")");
  }
  double sum = 0.0;
  for (std::size_t i = 1; i < n; ++i) sum += 1.0 / s.values[i];
  return static_cast<double>(n) * sum;
}

double wiener_paths(const NetworkGraph& g) {
  const std::size_t n = g.node_count();
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(n);
  std::deque<std::size_t> queue;
  std::uint64_t total = 0;
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    dist[s] = 0;
    queue.assign(1, s);
    std::size_t reached = 1;
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t w : g.neighbors(u)) {
        if (dist[w] == kUnseen) {
          dist[w] = dist[u] + 1;
          total += dist[w];
          ++reached;
          queue.push_back(w);
        }
      }
    }
    if (reached != n) throw InfeasibleError("wiener_paths: graph is disconnected");
  }
  return static_cast<double>(total) / 2.0;
}

DistanceMetrics average_distance(double wiener, std::size_t n, double delta_mu) {
  if (n < 2) throw DomainError("average_distance needs n >= 2");
  if (delta_mu < 0.0) throw DomainError("delta_mu must be >= 0");
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  DistanceMetrics m;
  m.wiener = wiener;
  m.mu = wiener / pairs;
  m.delta_mu = delta_mu;
  m.mu_w = m.mu + delta_mu;
  return m;
}

double link_probability(double d, double gamma, double mu_shadow, double k_const) {
  if (d < 0.0) throw DomainError("link_probability: negative distance");
  if (!(k_const > 0.0)) throw DomainError("link_probability: K must be positive");
  const double p = k_const * std::exp(-mu_shadow * std::pow(d, gamma));
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace ildcc
