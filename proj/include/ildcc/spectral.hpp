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

#ifndef ILDCC_SPECTRAL_HPP_
#define ILDCC_SPECTRAL_HPP_

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace ildcc {

// lambda2 above this declares a graph connected.
inline constexpr double kConnectedTolerance = 1e-9;
inline constexpr double kDefaultEigenTolerance = 1e-9;

using Edge = std::pair<std::size_t, std::size_t>;

// Simple undirected graph over nodes 0..n-1.
class NetworkGraph {
 public:
  explicit NetworkGraph(std::size_t n = 0) : adjacency_(n) {}
  NetworkGraph(std::size_t n, std::span<const Edge> edges);

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  // Edges as (u, v) with u < v, in insertion order.
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t u) const { return adjacency_.at(u); }

  std::size_t add_node();
  // Throws DomainError on self-loops, duplicates and out-of-range indices.
  void add_edge(std::size_t u, std::size_t v);
  bool has_edge(std::size_t u, std::size_t v) const;

 private:
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<Edge> edges_;
};

std::size_t component_count(const NetworkGraph& g);

// Degree matrix minus adjacency matrix.
class LaplacianMatrix {
 public:
  LaplacianMatrix() = default;
  explicit LaplacianMatrix(Eigen::MatrixXi entries) : entries_(std::move(entries)) {}

  std::size_t size() const { return static_cast<std::size_t>(entries_.rows()); }
  int operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXi& entries() const { return entries_; }
  Eigen::MatrixXd to_real() const { return entries_.cast<double>(); }

  // Whitespace-delimited rows, one per line.
  void dump(std::ostream& out) const;

  bool operator==(const LaplacianMatrix& o) const { return entries_ == o.entries_; }

 private:
  Eigen::MatrixXi entries_;
};

LaplacianMatrix laplacian(const NetworkGraph& g);

struct Spectrum {
  std::vector<double> values;  // ascending

  std::size_t size() const { return values.size(); }
  double lambda2() const;
  bool connected() const { return values.size() >= 2 && lambda2() > kConnectedTolerance; }
};

// Full spectrum of a symmetric matrix. Throws DomainError when the input is
// not symmetric (within tol), NumericError when the solver fails or cannot
// guarantee tol for a matrix of this norm.
Spectrum eigenvalues(const Eigen::MatrixXd& m, double tol = kDefaultEigenTolerance);
Spectrum eigenvalues(const LaplacianMatrix& l, double tol = kDefaultEigenTolerance);

// Algebraic connectivity; zero (within tolerance) iff g is disconnected.
double fiedler_value(const NetworkGraph& g);

// n * sum_{i>=2} 1/lambda_i. Exact Wiener index on trees; for graphs with
// cycles this is the Kirchhoff index, which is what the fitness minimizes.
// Throws InfeasibleError when lambda2 <= kConnectedTolerance.
double wiener_spectral(const Spectrum& s, std::size_t n);

// Half the sum of BFS hop distances over ordered pairs.
double wiener_paths(const NetworkGraph& g);

struct DistanceMetrics {
  double wiener = 0.0;
  double mu = 0.0;
  double mu_w = 0.0;
  double delta_mu = 0.0;
};

DistanceMetrics average_distance(double wiener, std::size_t n, double delta_mu);

// K exp(-mu_shadow d^gamma), clamped to [0, 1]. Reporting utility only.
double link_probability(double d, double gamma, double mu_shadow, double k_const);

}  // namespace ildcc

#endif  // ILDCC_SPECTRAL_HPP_
