// Copyright 2026 The cvdl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CVDL_GRAPH_H_
#define CVDL_GRAPH_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace cvdl {

/// Undirected simple graph. Edges are stored as (i, j) with i < j, sorted.
class Graph {
 public:
  using Edge = std::pair<int, int>;

  Graph() = default;
  /// Throws std::invalid_argument on self-loops, duplicates or bad indices.
  Graph(int n, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(int i, int j) const;
  std::vector<int> neighbors(int i) const;

  /// Symmetric 0/1 adjacency matrix with zero diagonal.
  template <typename Scalar = double>
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> adjacency() const {
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n_, n_);
    for (const auto& [i, j] : edges_) {
      a(i, j) = Scalar(1);
      a(j, i) = Scalar(1);
    }
    return a;
  }

  bool operator==(const Graph&) const = default;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

enum class GraphKind { kPath, kCycle, kGrid2d, kComplete, kStar, kCustom };

GraphKind ParseGraphKind(std::string_view name);
std::string_view GraphKindName(GraphKind kind);

/// Named graph families. For kGrid2d pass rows and cols; other families use n.
Graph MakePath(int n);
Graph MakeCycle(int n);
Graph MakeGrid2d(int rows, int cols);
Graph MakeComplete(int n);
/// Star with center 0.
Graph MakeStar(int n);
Graph MakeCustom(int n, const std::vector<Graph::Edge>& edges);

/// Erdos-Renyi G(n, p) draw using an explicit 64-bit seed.
Graph MakeRandom(int n, double edge_probability, unsigned long long seed);

int MaxDegree(const Graph& g);

/// A^2 = O diag(D) O^T with D sorted descending.
struct SquaredAdjacencySpectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix, deterministic row-
/// major sweep order. Eigenvalues are returned unsorted, in diagonal order.
/// Throws std::runtime_error if the off-diagonal norm fails to vanish.
void JacobiEigen(const Eigen::MatrixXd& symmetric, Eigen::VectorXd* values,
                 Eigen::MatrixXd* vectors, int max_sweeps = 100);

SquaredAdjacencySpectrum ASquaredSpectrum(const Graph& g);

/// Correction phases phi = sqrt(pi) A q.
Eigen::VectorXd NeighborPhase(const Graph& g, const Eigen::VectorXd& q);

}  // namespace cvdl

#endif  // CVDL_GRAPH_H_
