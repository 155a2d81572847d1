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

#include "cvdl/graph.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace cvdl {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
  if (n < 1) {
    throw std::invalid_argument("graph needs at least one vertex, got n=" +
                                std::to_string(n));
  }
  std::set<Edge> seen;
  for (auto [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n) {
      throw std::invalid_argument("edge (" + std::to_string(i) + "," +
                                  std::to_string(j) +
                                  ") has a vertex outside [0," +
                                  std::to_string(n) + ")");
    }
    if (i == j) {
      throw std::invalid_argument("self-loop at vertex " + std::to_string(i));
    }
    Edge e = std::minmax(i, j);
    if (!seen.insert(e).second) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(e.first) +
                                  "," + std::to_string(e.second) + ")");
    }
  }
  edges_.assign(seen.begin(), seen.end());
}

bool Graph::has_edge(int i, int j) const {
  Edge e = std::minmax(i, j);
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<int> Graph::neighbors(int i) const {
  std::vector<int> out;
  for (const auto& [a, b] : edges_) {
    if (a == i) out.push_back(b);
    if (b == i) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

GraphKind ParseGraphKind(std::string_view name) {
  if (name == "path") return GraphKind::kPath;
  if (name == "cycle") return GraphKind::kCycle;
  if (name == "grid2d") return GraphKind::kGrid2d;
  if (name == "complete") return GraphKind::kComplete;
  if (name == "star") return GraphKind::kStar;
  if (name == "custom") return GraphKind::kCustom;
  throw std::invalid_argument("unknown graph kind '" + std::string(name) + "'");
}

std::string_view GraphKindName(GraphKind kind) {
  switch (kind) {
    case GraphKind::kPath: return "path";
    case GraphKind::kCycle: return "cycle";
    case GraphKind::kGrid2d: return "grid2d";
    case GraphKind::kComplete: return "complete";
    case GraphKind::kStar: return "star";
    case GraphKind::kCustom: return "custom";
  }
  return "unknown";
}

Graph MakePath(int n) {
  std::vector<Graph::Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, std::move(e));
}

Graph MakeCycle(int n) {
  if (n < 3) {
    // Below three vertices a cycle would need a duplicate edge or a loop.
    return MakePath(n);
  }
  std::vector<Graph::Edge> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(e));
}

Graph MakeGrid2d(int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("grid2d needs rows, cols >= 1");
  }
  std::vector<Graph::Edge> e;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return Graph(rows * cols, std::move(e));
}

Graph MakeComplete(int n) {
  std::vector<Graph::Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, std::move(e));
}

Graph MakeStar(int n) {
  std::vector<Graph::Edge> e;
  for (int i = 1; i < n; ++i) e.emplace_back(0, i);
  return Graph(n, std::move(e));
}

Graph MakeCustom(int n, const std::vector<Graph::Edge>& edges) {
  return Graph(n, edges);
}

Graph MakeRandom(int n, double edge_probability, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Graph::Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (u(rng) < edge_probability) e.emplace_back(i, j);
  return Graph(n, std::move(e));
}

int MaxDegree(const Graph& g) {
  std::vector<int> deg(g.num_vertices(), 0);
  for (const auto& [i, j] : g.edges()) {
    ++deg[i];
    ++deg[j];
  }
  return *std::max_element(deg.begin(), deg.end());
}

void JacobiEigen(const Eigen::MatrixXd& symmetric, Eigen::VectorXd* values,
                 Eigen::MatrixXd* vectors, int max_sweeps) {
  const Eigen::Index n = symmetric.rows();
  Eigen::MatrixXd a = symmetric;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());

  auto off_norm = [&a, n]() {
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; sweep < max_sweeps && off_norm() > 1e-15 * scale; ++sweep) {
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (off_norm() > 1e-12 * scale) {
    throw std::runtime_error("Jacobi eigensolver did not converge after " +
                             std::to_string(sweep) + " sweeps");
  }
  *values = a.diagonal();
  *vectors = v;
}

SquaredAdjacencySpectrum ASquaredSpectrum(const Graph& g) {
  const Eigen::MatrixXd adj = g.adjacency();
  const Eigen::MatrixXd a2 = adj * adj;
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  JacobiEigen(a2, &values, &vectors);

  const Eigen::Index n = values.size();
  std::vector<Eigen::Index> dominant(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index idx = 0;
    vectors.col(k).cwiseAbs().maxCoeff(&idx);
    dominant[k] = idx;
    // Fix the sign so the dominant component is positive.
    if (vectors(idx, k) < 0) vectors.col(k) *= -1.0;
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  constexpr double kTie = 1e-9;
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    if (std::abs(values[x] - values[y]) > kTie) return values[x] > values[y];
    return dominant[x] < dominant[y];
  });

  SquaredAdjacencySpectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    // A^2 is positive semidefinite; round-off negatives are clamped.
    out.eigenvalues[k] = std::max(0.0, values[order[k]]);
    out.eigenvectors.col(k) = vectors.col(order[k]);
  }
  return out;
}

Eigen::VectorXd NeighborPhase(const Graph& g, const Eigen::VectorXd& q) {
  if (q.size() != g.num_vertices()) {
    throw std::invalid_argument("q has length " + std::to_string(q.size()) +
                                " but graph has " +
                                std::to_string(g.num_vertices()) + " vertices");
  }
  return std::sqrt(std::numbers::pi) * (g.adjacency() * q);
}

}  // namespace cvdl
