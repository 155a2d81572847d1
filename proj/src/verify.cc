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

#include "cvdl/verify.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "cvdl/error_model.h"
#include "cvdl/gaussian.h"
#include "cvdl/grid_oracle.h"
#include "cvdl/planner.h"
#include "cvdl/protocol.h"
#include "cvdl/qubit_state.h"

namespace cvdl {
namespace {

Graph RandomGraph(int max_n, Rng& rng) {
  std::uniform_int_distribution<int> size(1, max_n);
  const int n = size(rng);
  return MakeRandom(n, 0.5, rng());
}

CheckResult Finish(std::string name, double residual, double tol,
                   std::string detail = {}) {
  return CheckResult{std::move(name), residual < tol, residual, tol,
                     std::move(detail)};
}

CheckResult EquivalentCircuit(const VerifyConfig& cfg) {
  Rng rng = StreamRng(cfg.seed, 1);
  std::uniform_real_distribution<double> r(0.0, 2.0), nbar(0.0, 2.0);
  double worst = 0.0;
  for (int k = 0; k < cfg.cases; ++k) {
    ProtocolParams p{RandomGraph(4, rng), {r(rng), nbar(rng)}, 1.0, cfg.seed};
    const Eigen::VectorXd q = SampleOutcomes(p, rng);
    worst = std::max(worst, TraceDistance(DownloadedStateDirect(p, q),
                                          DownloadedStateEquivalent(p, q)));
  }
  return Finish("equivalent_circuit", worst, 1e-10, "max trace distance");
}

CheckResult ErasureExactness(const VerifyConfig& cfg) {
  Rng rng = StreamRng(cfg.seed, 2);
  std::uniform_real_distribution<double> r(0.2, 2.0);
  double worst = 0.0;
  for (int k = 0; k < cfg.cases; ++k) {
    ProtocolParams p{RandomGraph(4, rng), {r(rng), 0.0}, 1.0, cfg.seed};
    const Eigen::VectorXd q = SampleOutcomes(p, rng);
    QubitDensityMatrix rho = DownloadedStateDirect(p, q);
    const double r0 = MixtureParams(p.source).r0;
    for (int i = 0; i < p.graph.num_vertices(); ++i) {
      rho = ApplyBalancingPovm(rho, i, AmplitudeImbalance(q[i], r0),
                               PovmOutcome::kKeep)
                .state;
    }
    worst = std::max(worst, 1.0 - Fidelity(rho, ClusterState(p.graph)));
  }
  return Finish("all_keep_fidelity", worst, 1e-10, "max 1 - F(rho, |G>)");
}

CheckResult GridOracle(const VerifyConfig& cfg) {
  Rng rng = StreamRng(cfg.seed, 3);
  constexpr double kR0 = 1.0;
  double worst_one = 0.0;
  {
    HybridGridState s = InitGrid(kR0, 1);
    ApplyCdGrid(s, 0, 0);
    for (const GridMeasurement& m : MeasureQGridShots(s, cfg.grid_shots_one_mode, rng)) {
      worst_one = std::max(
          worst_one, 1.0 - Fidelity(m.qubits, QubitGivenOutcome(m.q[0], kR0)));
    }
  }
  double worst_two = 0.0;
  {
    const Graph edge = MakePath(2);
    HybridGridState s = InitGrid(kR0, 2);
    ApplyCphaseGrid(s, 0, 1);
    ApplyCdGrid(s, 0, 0);
    ApplyCdGrid(s, 1, 1);
    const ProtocolParams p{edge, {kR0, 0.0}, 1.0, cfg.seed};
    for (const GridMeasurement& m : MeasureQGridShots(s, cfg.grid_shots_two_mode, rng)) {
      QubitPureState psi = m.qubits;
      const Eigen::VectorXd phi = NeighborPhase(edge, m.q);
      for (int i = 0; i < 2; ++i) ApplyRZ(psi, i, phi[i]);
      worst_two = std::max(worst_two, TraceDistance(QubitDensityMatrix(psi),
                                                    DownloadedStateDirect(p, m.q)));
    }
  }
  const bool ok = worst_one < 1e-6 && worst_two < 1e-4;
  return CheckResult{"grid_oracle", ok, std::max(worst_one, worst_two), 1e-4,
                     "one-mode 1-F=" + std::to_string(worst_one) +
                         ", two-mode trace distance=" + std::to_string(worst_two)};
}

CheckResult PlannerForward(const VerifyConfig& cfg) {
  Rng rng = StreamRng(cfg.seed, 4);
  std::uniform_real_distribution<double> eps(0.0, 0.05), rp(0.3, 1.5);
  double worst = 0.0;
  for (int k = 0; k < cfg.cases; ++k) {
    const Graph g = RandomGraph(6, rng);
    const NoiseParams noise{eps(rng), eps(rng), rp(rng)};
    DecorrelationPlan plan = Plan(g, noise);
    plan.g_prime *= 1.0 + cfg.planner_fault;
    worst = std::max(worst, VerifyPlan(plan, g, noise));
  }
  return Finish("planner_forward", worst, 1e-9, "max covariance deviation");
}

CheckResult PovmCompleteness(const VerifyConfig& cfg) {
  Rng rng = StreamRng(cfg.seed, 5);
  std::uniform_real_distribution<double> log_gamma(-5.0, 5.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto [m0, m1] = BalancingPovm(std::exp(log_gamma(rng)));
    const Matrix2c sum = m0.adjoint() * m0 + m1.adjoint() * m1;
    worst = std::max(worst, (sum - Matrix2c::Identity()).cwiseAbs().maxCoeff());
  }
  return Finish("povm_completeness", worst, 1e-12);
}

CheckResult Postprocessing(const VerifyConfig& cfg) {
  Rng rng = StreamRng(cfg.seed, 6);
  std::uniform_real_distribution<double> mu(-kSqrtPi / 2.0, kSqrtPi / 2.0);
  std::bernoulli_distribution bit(0.5);
  double worst = 0.0;
  for (int k = 0; k < cfg.cases; ++k) {
    const Graph g = RandomGraph(6, rng);
    std::vector<int> l(g.num_vertices());
    Eigen::VectorXd m(g.num_vertices());
    for (int i = 0; i < g.num_vertices(); ++i) {
      l[i] = bit(rng);
      m[i] = mu(rng);
    }
    worst = std::max(worst, PostprocessingDeviation(g, l, m));
  }
  return Finish("postprocessing_equivalence", worst, 1e-10);
}

CheckResult Stabilizers(const VerifyConfig& cfg) {
  Rng rng = StreamRng(cfg.seed, 7);
  double worst = 0.0;
  for (int k = 0; k < cfg.cases; ++k) {
    const Graph g = RandomGraph(8, rng);
    const QubitPureState psi = ClusterState(g);
    for (int i = 0; i < g.num_vertices(); ++i)
      worst = std::max(worst, StabilizerResidual(psi, g, i));
  }
  return Finish("cluster_stabilizers", worst, 1e-12);
}

CheckResult CollectiveModes(const VerifyConfig& cfg) {
  Rng rng = StreamRng(cfg.seed, 8);
  std::uniform_real_distribution<double> r(0.0, 1.5), nbar(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < cfg.cases; ++k) {
    const Graph g = RandomGraph(4, rng);
    const GaussianState v = ThermalCvcs({r(rng), nbar(rng)}, g);
    for (int copies : {2, 4, 7}) {
      worst = std::max(worst, (CollectiveModeCovariance(v, copies).covariance() -
                               v.covariance())
                                  .cwiseAbs()
                                  .maxCoeff());
    }
  }
  return Finish("collective_modes", worst, 1e-12);
}

CheckResult Thresholds() {
  const double a = std::abs(SqueezingDbForPdel(0.249) - 11.9);
  const double b = std::abs(SqueezingDbForPdel(0.50) - 5.4);
  return Finish("squeezing_thresholds", std::max(a, b), 0.05,
                "|dB(0.249)-11.9|, |dB(0.5)-5.4|");
}

}  // namespace

std::vector<CheckResult> RunVerify(const VerifyConfig& config) {
  return {EquivalentCircuit(config), ErasureExactness(config),
          GridOracle(config),        PlannerForward(config),
          PovmCompleteness(config),  Postprocessing(config),
          Stabilizers(config),       CollectiveModes(config),
          Thresholds()};
}

bool AllPassed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed; });
}

}  // namespace cvdl
