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

#include "cvdl/grid_oracle.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "cvdl/error_model.h"
#include "cvdl/protocol.h"

namespace cvdl {
namespace {

double KolmogorovPValue(double d, std::size_t n) {
  const double sn = std::sqrt(double(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

double SecondMoment(const HybridGridState& s) {
  const std::vector<double> p = MarginalProbabilities(s);
  double m = 0.0;
  for (Eigen::Index k = 0; k < s.points(); ++k) m += p[k] * s.q_at(k) * s.q_at(k);
  return m;
}

// Keep probability averaged over the grid marginal.
double GridKeepProbability(double r0, int cells) {
  HybridGridState s = InitGrid(r0, 1, {cells, 0.0});
  ApplyCdGrid(s, 0, 0);
  const std::vector<double> p = MarginalProbabilities(s);
  double acc = 0.0;
  for (Eigen::Index k = 0; k < s.points(); ++k)
    acc += p[k] * BalancingKeepProbability(AmplitudeImbalance(s.q_at(k), r0));
  return acc;
}

TEST(GridInitTest, NormAndMoments) {
  const HybridGridState vac = InitGrid(0.0, 1);
  EXPECT_NEAR(vac.norm(), 1.0, 1e-8);
  for (double r0 : {0.0, 0.5, 1.0}) {
    const HybridGridState s = InitGrid(r0, 1);
    EXPECT_NEAR(SecondMoment(s), std::exp(2 * r0) / 2, 1e-4);
    EXPECT_GE(s.half_width(), GridMinHalfWidth(r0));
    EXPECT_NEAR(s.spacing() * s.cells_per_shift(), kSqrtPi, 1e-15);
  }
  EXPECT_NEAR(InitGrid(0.3, 2, {16, 0.0}).norm(), 1.0, 1e-8);
}

TEST(GridInitTest, QubitsStartInPlus) {
  const HybridGridState s = InitGrid(0.5, 1);
  const GridMeasurement m = MeasureQGridAt(s, {s.points() / 2});
  EXPECT_NEAR(Fidelity(m.qubits, QubitPureState::PlusProduct(1)), 1.0, 1e-15);
}

TEST(GridInitTest, RejectsBadParameters) {
  EXPECT_THROW(InitGrid(0.5, 1, {15, 0.0}), std::invalid_argument);
  EXPECT_THROW(InitGrid(0.5, 1, {64, 3.0}), std::invalid_argument);
  EXPECT_THROW(InitGrid(0.5, 3), std::invalid_argument);
  EXPECT_THROW(InitGrid(0.5, 0), std::invalid_argument);
}

TEST(GridGateTest, CdInverseIsIdentity) {
  // Wide enough that the cells dropped at either edge hold amplitudes < 1e-15.
  HybridGridState s = InitGrid(0.7, 2, {16, 20.0});
  ApplyCphaseGrid(s, 0, 1);
  const auto before = s.amplitudes();
  ApplyCdGrid(s, 1, 1);
  ApplyCdGrid(s, 1, 1, -1);
  double diff = 0.0;
  for (std::size_t k = 0; k < before.size(); ++k)
    diff = std::max(diff, std::abs(before[k] - s.amplitudes()[k]));
  EXPECT_LT(diff, 1e-12);
}

TEST(GridGateTest, NormPreserved) {
  HybridGridState s = InitGrid(0.4, 2, {32, 0.0});
  const double n0 = s.norm();
  ApplyCphaseGrid(s, 0, 1);
  EXPECT_NEAR(s.norm(), n0, 1e-10);
  ApplyCdGrid(s, 0, 0);
  ApplyCdGrid(s, 1, 1);
  EXPECT_NEAR(s.norm(), n0, 1e-10);
}

TEST(GridGateTest, Errors) {
  HybridGridState s = InitGrid(0.4, 1, {16, 0.0});
  EXPECT_THROW(ApplyCdGrid(s, 1, 0), std::out_of_range);
  EXPECT_THROW(ApplyCdGrid(s, 0, 1), std::out_of_range);
  EXPECT_THROW(ApplyCdGrid(s, 0, 0, 2), std::invalid_argument);
  EXPECT_THROW(ApplyCphaseGrid(s, 0, 1), std::out_of_range);
  HybridGridState t = InitGrid(0.4, 2, {16, 0.0});
  EXPECT_THROW(ApplyCphaseGrid(t, 1, 1), std::invalid_argument);
  EXPECT_THROW(MeasureQGridAt(t, {0}), std::invalid_argument);
}

TEST(GridGateTest, BoundaryMassIsDetected) {
  // Repeated shifts in one direction eventually push the Gaussian off the grid.
  HybridGridState s = InitGrid(0.0, 1, {16, 0.0});
  EXPECT_THROW(
      {
        for (int k = 0; k < 20; ++k) ApplyCdGrid(s, 0, 0);
      },
      std::runtime_error);
}

TEST(GridOracleTest, OneModeMatchesOutcomeState) {
  HybridGridState s = InitGrid(1.0, 1);
  ApplyCdGrid(s, 0, 0);
  Rng rng(80);
  for (const GridMeasurement& m : MeasureQGridShots(s, 100, rng)) {
    EXPECT_GT(Fidelity(m.qubits, QubitGivenOutcome(m.q[0], 1.0, 0.0)), 1.0 - 1e-6);
  }
}

TEST(GridOracleTest, TwoModesMatchAnalyticEngine) {
  HybridGridState s = InitGrid(1.0, 2);
  ApplyCphaseGrid(s, 0, 1);
  ApplyCdGrid(s, 0, 0);
  ApplyCdGrid(s, 1, 1);
  const Graph edge = MakePath(2);
  const ProtocolParams p{edge, {1.0, 0.0}, 1.0, 0};
  Rng rng(81);
  for (const GridMeasurement& m : MeasureQGridShots(s, 200, rng)) {
    QubitPureState psi = m.qubits;
    const Eigen::VectorXd phi = NeighborPhase(edge, m.q);
    for (int i = 0; i < 2; ++i) ApplyRZ(psi, i, phi[i]);
    EXPECT_LT(TraceDistance(QubitDensityMatrix(psi), DownloadedStateDirect(p, m.q)), 1e-4);
  }
}

TEST(GridOracleTest, MeasurementDoesNotCollapseGrid) {
  HybridGridState s = InitGrid(0.5, 1, {16, 0.0});
  const auto before = s.amplitudes();
  Rng rng(82);
  MeasureQGrid(s, rng);
  EXPECT_EQ(before, s.amplitudes());
}

TEST(GridOracleTest, KeepProbabilityConvergesWithK) {
  const double r0 = 1.0;
  const double exact = std::erfc(std::exp(-r0) * kSqrtPi / 2);
  const double err16 = std::abs(GridKeepProbability(r0, 16) - exact);
  const double err64 = std::abs(GridKeepProbability(r0, 64) - exact);
  EXPECT_LT(err64, err16);
  EXPECT_LT(err64, 1e-4);
}

TEST(GridOracleTest, HistogramMatchesMixture) {
  const double r0 = 1.0;
  HybridGridState s = InitGrid(r0, 1);
  ApplyCdGrid(s, 0, 0);
  Rng rng(83);
  const auto shots = MeasureQGridShots(s, 10000, rng);
  std::vector<double> q;
  for (const auto& m : shots) q.push_back(m.q[0]);
  std::sort(q.begin(), q.end());
  // Each grid point carries the mass of the cell centred on it.
  const double h = s.spacing() / 2;
  const double n = double(q.size());
  double d = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    d = std::max(d, (i + 1) / n - OutcomeCdf(q[i] + h, r0));
    d = std::max(d, OutcomeCdf(q[i] - h, r0) - i / n);
  }
  EXPECT_GT(KolmogorovPValue(d, q.size()), 0.01);
}

}  // namespace
}  // namespace cvdl
