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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "cvdl/error_model.h"
#include "cvdl/gaussian.h"
#include "cvdl/graph.h"
#include "cvdl/grid_oracle.h"
#include "cvdl/planner.h"
#include "cvdl/protocol.h"
#include "cvdl/qubit_state.h"
#include "cvdl/random.h"

namespace {

using namespace cvdl;

constexpr std::uint64_t kSeed = 0xACCE97;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* fmt, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c);
  return buf;
}

Graph RandomGraph(int max_n, Rng& rng) {
  std::uniform_int_distribution<int> size(1, max_n);
  const int n = size(rng);
  return MakeRandom(n, 0.5, rng());
}

Outcome Thresholds() {
  const double a = SqueezingDbForPdel(0.249);
  const double b = SqueezingDbForPdel(0.50);
  return {std::abs(a - 11.9) <= 0.05 && std::abs(b - 5.4) <= 0.05,
          Fmt("dB(0.249)=%.4f dB(0.50)=%.4f", a, b)};
}

Outcome AllKeepFidelity() {
  Rng rng = StreamRng(kSeed, 2);
  std::uniform_real_distribution<double> r(0.2, 2.0);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const ProtocolParams p{RandomGraph(4, rng), {r(rng), 0.0}, 1.0, 0};
    const Eigen::VectorXd q = SampleOutcomes(p, rng);
    QubitDensityMatrix rho = DownloadedStateDirect(p, q);
    for (int i = 0; i < p.graph.num_vertices(); ++i) {
      rho = ApplyBalancingPovm(rho, i, AmplitudeImbalance(q[i], p.source.r),
                               PovmOutcome::kKeep)
                .state;
    }
    worst = std::max(worst, std::abs(1.0 - Fidelity(rho, ClusterState(p.graph))));
  }
  return {worst < 1e-10, Fmt("max |1-F| = %.3e over 200 cases", worst)};
}

Outcome EquivalentCircuit() {
  Rng rng = StreamRng(kSeed, 3);
  std::uniform_real_distribution<double> r(0.0, 2.0), nb(0.0, 2.0);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const ProtocolParams p{RandomGraph(4, rng), {r(rng), nb(rng)}, 1.0, 0};
    const Eigen::VectorXd q = SampleOutcomes(p, rng);
    worst = std::max(worst, TraceDistance(DownloadedStateDirect(p, q),
                                          DownloadedStateEquivalent(p, q)));
  }
  return {worst < 1e-10, Fmt("max trace distance = %.3e over 200 cases", worst)};
}

Outcome ErasureLaw() {
  bool ok = true;
  std::string detail;
  std::uint64_t stream = 0;
  for (double r0 : {0.3, 0.62, 1.0, 1.37}) {
    Rng rng = StreamRng(kSeed + 4, stream++);
    const MonteCarloEstimate mc = PDelMonteCarlo(r0, 100000, rng);
    const double exact = PDelAnalytic(r0);
    const double z = std::abs(mc.estimate - exact) / mc.standard_error;
    const double quad = std::abs(PSuccQuadrature(r0) - std::erfc(std::exp(-r0) * kSqrtPi / 2));
    ok = ok && z <= 3.0 && quad < 1e-8;
    detail += Fmt("r0=%.2f z=%.2f quad=%.1e; ", r0, z, quad);
  }
  return {ok, detail};
}

Outcome DephasingLaw() {
  bool ok = true;
  std::string detail;
  const SqueezedThermalParams cases[] = {{0.0, 1.0}, {0.5, 0.5}, {1.0, 2.0}};
  std::uint64_t stream = 0;
  for (const auto& p : cases) {
    const double s2 = MixtureParams(p).sigma2;
    Rng rng = StreamRng(kSeed + 5, stream++);
    const MonteCarloEstimate mc = DephasingCoherenceMonteCarlo(s2, 1000000, rng);
    const double z = std::abs(mc.estimate - (1.0 - 2.0 * DephasingRate(s2))) / mc.standard_error;
    ok = ok && z <= 3.0;
    detail += Fmt("(r=%.1f,nbar=%.1f) z=%.2f; ", p.r, p.nbar, z);
  }
  return {ok, detail};
}

Outcome Decorrelation() {
  Rng rng = StreamRng(kSeed, 6);
  std::uniform_real_distribution<double> eps(0.0, 0.05), rp(0.3, 1.5);
  double worst = 0.0;
  int plans = 0;
  while (plans < 50) {
    const Graph g = RandomGraph(6, rng);
    const NoiseParams noise{eps(rng), eps(rng), rp(rng)};
    const DecorrelationPlan p = Plan(g, noise);
    if (!p.physical) continue;
    worst = std::max(worst, VerifyPlan(p, g, noise));
    ++plans;
  }
  // Linearization residual ratios between consecutive decades of eps.
  const Graph g = MakePath(3);
  std::vector<double> res;
  for (double e : {1e-2, 1e-3, 1e-4}) {
    const NoiseParams noise{e, e, 0.6};
    const DecorrelationPlan p = Plan(g, noise);
    const LinearizedPlan l = Linearize(g, noise);
    res.push_back(std::max({std::abs(std::exp(2 * p.effective.r) - l.e2r),
                            std::abs(p.effective.nbar - l.nbar),
                            std::abs(p.g_prime - l.g_prime)}));
  }
  const double r1 = res[0] / res[1], r2 = res[1] / res[2];
  return {worst < 1e-9 && r1 > 50 && r2 > 50,
          Fmt("max residual = %.3e; linearization ratios %.1f, %.1f", worst, r1, r2)};
}

Outcome CollectiveModes() {
  Rng rng = StreamRng(kSeed, 7);
  std::uniform_real_distribution<double> r(0.0, 1.5), nb(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 30; ++k) {
    const GaussianState v = ThermalCvcs({r(rng), nb(rng)}, RandomGraph(4, rng));
    for (int copies : {2, 4, 7}) {
      worst = std::max(worst, (CollectiveModeCovariance(v, copies).covariance() -
                               v.covariance()).cwiseAbs().maxCoeff());
    }
  }
  return {worst < 1e-12, Fmt("max deviation = %.3e", worst)};
}

Outcome GridOracle() {
  Rng rng = StreamRng(kSeed, 8);
  double one = 0.0, one_fid = 0.0, two = 0.0;
  {
    HybridGridState s = InitGrid(1.0, 1, {64, 0.0});
    ApplyCdGrid(s, 0, 0);
    const ProtocolParams p{Graph(1, {}), {1.0, 0.0}, 1.0, 0};
    for (const GridMeasurement& m : MeasureQGridShots(s, 100, rng)) {
      one = std::max(one, TraceDistance(QubitDensityMatrix(m.qubits),
                                        DownloadedStateDirect(p, m.q)));
      one_fid = std::max(one_fid, 1.0 - Fidelity(m.qubits, QubitGivenOutcome(m.q[0], 1.0)));
    }
  }
  {
    const Graph edge = MakePath(2);
    HybridGridState s = InitGrid(1.0, 2, {64, 0.0});
    ApplyCphaseGrid(s, 0, 1);
    ApplyCdGrid(s, 0, 0);
    ApplyCdGrid(s, 1, 1);
    const ProtocolParams p{edge, {1.0, 0.0}, 1.0, 0};
    for (const GridMeasurement& m : MeasureQGridShots(s, 50, rng)) {
      QubitPureState psi = m.qubits;
      const Eigen::VectorXd phi = NeighborPhase(edge, m.q);
      for (int i = 0; i < 2; ++i) ApplyRZ(psi, i, phi[i]);
      two = std::max(two, TraceDistance(QubitDensityMatrix(psi), DownloadedStateDirect(p, m.q)));
    }
  }
  return {one < 1e-4 && two < 1e-4 && one_fid < 1e-6,
          Fmt("1-mode TD=%.2e, 2-mode TD=%.2e, 1-mode 1-F=%.2e", one, two, one_fid)};
}

Outcome Postprocessing() {
  Rng rng = StreamRng(kSeed, 9);
  std::uniform_real_distribution<double> mu(-kSqrtPi / 2, kSqrtPi / 2);
  std::bernoulli_distribution bit(0.5);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Graph g = RandomGraph(6, rng);
    std::vector<int> l(g.num_vertices());
    Eigen::VectorXd m(g.num_vertices());
    for (int i = 0; i < g.num_vertices(); ++i) {
      l[i] = bit(rng);
      m[i] = mu(rng);
    }
    worst = std::max(worst, PostprocessingDeviation(g, l, m));
  }
  return {worst < 1e-10, Fmt("max deviation = %.3e over 100 cases", worst)};
}

Outcome Stabilizers() {
  std::vector<Graph> graphs;
  for (int n = 1; n <= 8; ++n) {
    graphs.push_back(MakePath(n));
    graphs.push_back(MakeCycle(n));
    graphs.push_back(MakeComplete(n));
    graphs.push_back(MakeStar(n));
  }
  graphs.push_back(MakeGrid2d(2, 4));
  Rng rng = StreamRng(kSeed, 10);
  for (int k = 0; k < 40; ++k) graphs.push_back(RandomGraph(8, rng));
  double worst = 0.0;
  for (const Graph& g : graphs) {
    const QubitPureState psi = ClusterState(g);
    for (int i = 0; i < g.num_vertices(); ++i)
      worst = std::max(worst, StabilizerResidual(psi, g, i));
  }
  return {worst < 1e-12, Fmt("max residual = %.3e over %.0f graphs", worst, double(graphs.size()))};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double budget_s;
  };
  const std::vector<Criterion> criteria = {
      {"threshold reproduction", Thresholds, 1.0},
      {"all-keep fidelity (pure source)", AllKeepFidelity, 10.0},
      {"equivalent circuit", EquivalentCircuit, 30.0},
      {"erasure law", ErasureLaw, 0.0},
      {"dephasing law", DephasingLaw, 0.0},
      {"decorrelation construction", Decorrelation, 0.0},
      {"collective-mode equivalence", CollectiveModes, 0.0},
      {"grid-oracle cross-validation", GridOracle, 120.0},
      {"post-processing equivalence", Postprocessing, 0.0},
      {"cluster stabilizers", Stabilizers, 0.0},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[k].budget_s > 0.0 && secs > criteria[k].budget_s) {
      o.pass = false;
      o.detail += Fmt(" [over time budget %.0f s]", criteria[k].budget_s);
    }
    failures += !o.pass;
    std::printf("%s criterion %zu: %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", k + 1,
                criteria[k].name, o.detail.c_str(), secs);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
