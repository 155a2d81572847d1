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

#ifndef CVDL_PLANNER_H_
#define CVDL_PLANNER_H_

// State-preparation recipe that turns channel loss and amplified inefficient
// detection into an uncorrelated thermal CV cluster state.
//
// Pipeline (forward): per-mode squeezed thermal inputs V3 -> passive network
// O -> CPHASE(g') -> loss(eps1) -> detector noise(eps2) == thermal CVCS(r, nbar).

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cvdl/gaussian.h"
#include "cvdl/graph.h"

namespace cvdl {

struct NoiseParams {
  double eps1 = 0.0;     ///< channel loss probability
  double eps2 = 0.0;     ///< detector inefficiency
  double r_prime = 0.0;  ///< largest squeezing the source can produce
};

void ValidateNoise(const NoiseParams& noise);

/// Two-mode rotation [[c, -s], [s, c]] acting on modes (i, j).
struct GivensRotation {
  int i = 0;
  int j = 0;
  double angle = 0.0;
};

/// O = R(rotations[0]) * R(rotations[1]) * ... * diag(signs).
struct GivensNetwork {
  int modes = 0;
  std::vector<GivensRotation> rotations;
  Eigen::VectorXd signs;
};

/// Nearest-neighbor Givens elimination, column by column from the bottom row
/// up. Throws std::invalid_argument for non-orthogonal input.
GivensNetwork GivensDecompose(const Eigen::MatrixXd& o);
Eigen::MatrixXd ComposeNetwork(const GivensNetwork& net);

struct PhysicalityReport {
  bool physical = true;
  /// Empty when physical, otherwise names the first violated condition.
  std::string violated;
  double q_variance_margin = 0.0;      ///< B1 - C1
  double p_variance_margin = 0.0;      ///< B2 - C2 - B1 C1 D / (B1 - C1)
  double uncertainty_product = 0.0;    ///< (q * p) / (1 - eps1)^2, needs >= 1/4
};

/// Physicality of the prepared mode with A^2 eigenvalue `d` (the principal
/// mode when d = D_max) for arbitrary B1, B2.
PhysicalityReport CheckPhysicality(double b1, double b2, double c1, double c2,
                                   double eps1, double d);

struct DecorrelationPlan {
  double c1 = 0.0;
  double c2 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double g_prime = 1.0;
  Eigen::MatrixXd o;               ///< A^2 = O diag(D) O^T
  Eigen::VectorXd d;               ///< eigenvalues of A^2, descending
  double d_max = 0.0;
  int max_degree = 0;
  Eigen::VectorXd r_mode;          ///< prepared squeezing per eigenmode
  Eigen::VectorXd nbar_mode;       ///< prepared thermal occupation per eigenmode
  SqueezedThermalParams effective; ///< thermal CVCS seen by the qubits
  bool physical = true;
  std::string violated_condition;
  GivensNetwork network;
};

DecorrelationPlan Plan(const Graph& g, const NoiseParams& noise);

/// Diagonal covariance of the per-mode inputs.
GaussianState PreparedInputs(const DecorrelationPlan& plan);

/// Runs the forward pipeline and returns the max-entry deviation from the
/// unit-strength thermal CVCS with the plan's effective (r, nbar). Throws
/// std::invalid_argument for unphysical plans.
double VerifyPlan(const DecorrelationPlan& plan, const Graph& g,
                  const NoiseParams& noise);

enum class LinearizationForm {
  kSpectral,  ///< uses D_max = lambda_max(A^2)
  kDegree,    ///< uses d^2 with d the maximum degree
};

struct LinearizedPlan {
  double e2r = 0.0;
  double nbar = 0.0;
  double g_prime = 1.0;
};

LinearizedPlan Linearize(const Graph& g, const NoiseParams& noise,
                         LinearizationForm form = LinearizationForm::kSpectral);

}  // namespace cvdl

#endif  // CVDL_PLANNER_H_
