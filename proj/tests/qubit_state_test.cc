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

#include "cvdl/qubit_state.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <gtest/gtest.h>

#include "test_util.h"

namespace cvdl {
namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

QubitPureState Ket(std::initializer_list<Complex> amps) {
  Eigen::VectorXcd v(amps.size());
  int k = 0;
  for (Complex a : amps) v[k++] = a;
  QubitPureState psi(static_cast<int>(std::log2(amps.size())), v);
  psi.normalize();
  return psi;
}

TEST(QubitStateTest, Construction) {
  QubitPureState z(3);
  EXPECT_EQ(z.dim(), 8);
  EXPECT_EQ(z.amplitudes()[0], Complex(1.0));
  EXPECT_NEAR(z.norm(), 1.0, 1e-15);
  EXPECT_THROW(QubitPureState(0), std::invalid_argument);
  EXPECT_THROW(QubitPureState(kMaxQubits + 1), std::invalid_argument);
  EXPECT_THROW(QubitPureState(2, Eigen::VectorXcd::Zero(3)), std::invalid_argument);
  const QubitPureState plus = QubitPureState::PlusProduct(3);
  for (Eigen::Index k = 0; k < 8; ++k)
    EXPECT_NEAR(std::abs(plus.amplitudes()[k]), 1.0 / std::sqrt(8.0), 1e-15);
}

TEST(ClusterStateTest, SingleVertexIsPlus) {
  const QubitPureState g = ClusterState(Graph(1, {}));
  EXPECT_NEAR(Fidelity(g, Ket({1.0, 1.0})), 1.0, 1e-15);
}

TEST(ClusterStateTest, OneEdge) {
  const QubitPureState g = ClusterState(MakePath(2));
  const Eigen::Vector4cd expected(0.5, 0.5, 0.5, -0.5);
  EXPECT_LT((g.amplitudes() - expected).norm(), 1e-15);
}

TEST(ClusterStateTest, PathThreeSignPattern) {
  const QubitPureState g = ClusterState(MakePath(3));
  for (Eigen::Index b = 0; b < 8; ++b) {
    const int b0 = b & 1, b1 = (b >> 1) & 1, b2 = (b >> 2) & 1;
    const double sign = ((b0 * b1 + b1 * b2) % 2) ? -1.0 : 1.0;
    EXPECT_NEAR(g.amplitudes()[b].real(), sign / std::sqrt(8.0), 1e-15);
    EXPECT_NEAR(g.amplitudes()[b].imag(), 0.0, 1e-15);
  }
}

TEST(ClusterStateTest, EnforcesCap) {
  EXPECT_THROW(ClusterState(MakePath(5), 4), std::invalid_argument);
}

TEST(GateTest, Basics) {
  Rng rng(1);
  QubitPureState psi = testing::RandomPureState(3, rng);
  QubitPureState copy = psi;
  ApplyRZ(copy, 1, 0.0);
  EXPECT_LT((copy.amplitudes() - psi.amplitudes()).norm(), 1e-15);

  QubitPureState z(1);
  ApplyX(z, 0);
  EXPECT_EQ(z.amplitudes()[1], Complex(1.0));

  QubitPureState two = testing::RandomPureState(2, rng);
  QubitPureState cz2 = two;
  ApplyCZ(cz2, 0, 1);
  ApplyCZ(cz2, 0, 1);
  EXPECT_LT((cz2.amplitudes() - two.amplitudes()).norm(), 1e-15);

  EXPECT_THROW(ApplyX(z, 1), std::out_of_range);
  EXPECT_THROW(ApplyCZ(two, 0, 0), std::invalid_argument);
}

TEST(GateTest, RotationZConvention) {
  const Matrix2c r = RotationZ(0.7);
  EXPECT_NEAR(std::abs(r(0, 0) - std::polar(1.0, -0.35)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r(1, 1) - std::polar(1.0, 0.35)), 0.0, 1e-15);
}

TEST(GateTest, UnitariesPreserveNorm) {
  Rng rng(2);
  std::uniform_real_distribution<double> th(-5, 5);
  for (int k = 0; k < 30; ++k) {
    QubitPureState psi = testing::RandomPureState(4, rng);
    ApplyRZ(psi, k % 4, th(rng));
    ApplyCZ(psi, k % 4, (k + 1) % 4);
    ApplyX(psi, (k + 2) % 4);
    ApplyZ(psi, (k + 3) % 4);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
  }
}

TEST(GateTest, DensityMatrixGatesMatchPureGates) {
  Rng rng(4);
  const Graph g = MakeCycle(3);
  QubitPureState psi = testing::RandomPureState(3, rng);
  QubitDensityMatrix rho(psi);
  ApplyRZ(psi, 1, 0.3);
  ApplyRZ(rho, 1, 0.3);
  ApplyCZ(psi, 0, 2);
  ApplyCZ(rho, 0, 2);
  ApplyGraphCZ(psi, g);
  ApplyGraphCZ(rho, g);
  ApplySingleQubit(psi, 0, PauliX());
  ApplySingleQubit(rho, 0, PauliX());
  EXPECT_LT(TraceDistance(rho, QubitDensityMatrix(psi)), 1e-12);
}

TEST(MeasureTest, BornStatistics) {
  Rng rng(9);
  int ones = 0;
  const int shots = 20000;
  const QubitPureState base = Ket({std::sqrt(0.3), std::sqrt(0.7)});
  EXPECT_NEAR(ProbabilityOfOne(base, 0), 0.7, 1e-12);
  EXPECT_NEAR(ProbabilityOfOne(QubitDensityMatrix(base), 0), 0.7, 1e-12);
  for (int k = 0; k < shots; ++k) {
    QubitPureState psi = base;
    const int m = MeasureZ(psi, 0, rng);
    ones += m;
    EXPECT_NEAR(std::abs(psi.amplitudes()[m]), 1.0, 1e-12);
  }
  const double se = std::sqrt(0.21 / shots);
  EXPECT_NEAR(double(ones) / shots, 0.7, 4 * se);

  QubitPureState f = base;
  EXPECT_NEAR(MeasureZForced(f, 0, 0), 0.3, 1e-12);
  EXPECT_NEAR(std::abs(f.amplitudes()[0]), 1.0, 1e-12);
}

TEST(StabilizerTest, ClusterStatesAreStabilized) {
  Rng rng(12);
  for (int k = 0; k < 30; ++k) {
    const Graph g = testing::RandomGraph(1, 8, rng);
    const QubitPureState psi = ClusterState(g);
    for (int i = 0; i < g.num_vertices(); ++i)
      EXPECT_LT(StabilizerResidual(psi, g, i), 1e-12);
  }
}

TEST(StabilizerTest, ZeroStateResidualIsSqrtTwo) {
  const Graph g(3, {});
  for (int i = 0; i < 3; ++i)
    EXPECT_NEAR(StabilizerResidual(QubitPureState(3), g, i), std::sqrt(2.0), 1e-14);
}

TEST(StabilizerTest, RandomStateIsNotStabilized) {
  Rng rng(13);
  const Graph g = MakePath(3);
  EXPECT_GT(StabilizerResidual(testing::RandomPureState(3, rng), g, 1), 1e-3);
}

TEST(PostprocessingTest, TrivialCase) {
  EXPECT_LT(PostprocessingDeviation(MakePath(3), {0, 0, 0}, Eigen::VectorXd::Zero(3)),
            1e-15);
}

TEST(PostprocessingTest, PathThreeBitFlip) {
  Rng rng(21);
  std::uniform_real_distribution<double> mu(-kSqrtPi / 2, kSqrtPi / 2);
  for (int k = 0; k < 10; ++k) {
    Eigen::VectorXd m(3);
    for (int i = 0; i < 3; ++i) m[i] = mu(rng);
    EXPECT_LT(PostprocessingDeviation(MakePath(3), {1, 0, 0}, m), 1e-10);
  }
}

TEST(PostprocessingTest, RandomCases) {
  Rng rng(22);
  std::uniform_real_distribution<double> mu(-kSqrtPi / 2, kSqrtPi / 2);
  std::bernoulli_distribution bit(0.5);
  for (int k = 0; k < 100; ++k) {
    const Graph g = testing::RandomGraph(1, 6, rng);
    const int n = g.num_vertices();
    std::vector<int> l(n);
    Eigen::VectorXd m(n);
    for (int i = 0; i < n; ++i) {
      l[i] = bit(rng);
      m[i] = mu(rng);
    }
    EXPECT_LT(PostprocessingDeviation(g, l, m), 1e-10);
  }
}

TEST(PovmTest, Completeness) {
  Rng rng(30);
  std::uniform_real_distribution<double> lg(-6, 6);
  for (int k = 0; k < 1000; ++k) {
    const auto [m0, m1] = BalancingPovm(std::exp(lg(rng)));
    const Matrix2c sum = m0.adjoint() * m0 + m1.adjoint() * m1;
    EXPECT_LT((sum - Matrix2c::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  }
  EXPECT_THROW(BalancingPovm(0.0), std::invalid_argument);
  EXPECT_THROW(BalancingPovm(-1.0), std::invalid_argument);
}

TEST(PovmTest, HalfImbalanceRestoresPlus) {
  for (double gamma : {0.5, 2.0}) {
    const QubitDensityMatrix rho(Ket({1.0, gamma}));
    const PovmResult r = ApplyBalancingPovm(rho, 0, gamma, PovmOutcome::kKeep);
    EXPECT_NEAR(r.keep_probability, 0.4, 1e-12);
    EXPECT_NEAR(r.probability, 0.4, 1e-12);
    EXPECT_EQ(r.collapsed_bit, -1);
    EXPECT_NEAR(Fidelity(r.state, Ket({1.0, 1.0})), 1.0, 1e-12);
  }
}

TEST(PovmTest, BalancedIsAlwaysKept) {
  Rng rng(31);
  const QubitDensityMatrix rho(Ket({1.0, Complex(0.0, 1.0)}));
  const PovmResult r = ApplyBalancingPovm(rho, 0, 1.0, rng);
  EXPECT_EQ(r.outcome, PovmOutcome::kKeep);
  EXPECT_NEAR(r.keep_probability, 1.0, 1e-15);
  EXPECT_LT(TraceDistance(r.state, rho), 1e-15);
}

TEST(PovmTest, DeleteCollapsesToHeavierBranch) {
  const QubitDensityMatrix rho(Ket({1.0, 0.5}));
  const PovmResult r = ApplyBalancingPovm(rho, 0, 0.5, PovmOutcome::kDelete);
  EXPECT_NEAR(r.probability, 0.6, 1e-12);
  EXPECT_EQ(r.collapsed_bit, 0);
  const QubitDensityMatrix rho2(Ket({0.5, 1.0}));
  const PovmResult r2 = ApplyBalancingPovm(rho2, 0, 2.0, PovmOutcome::kDelete);
  EXPECT_EQ(r2.collapsed_bit, 1);
}

TEST(PovmTest, KeepBranchPreservesRelativePhase) {
  const double alpha = 0.83;
  const double gamma = 0.3;
  const QubitDensityMatrix rho(Ket({1.0, gamma * std::polar(1.0, alpha)}));
  const PovmResult r = ApplyBalancingPovm(rho, 0, gamma, PovmOutcome::kKeep);
  EXPECT_NEAR(Fidelity(r.state, Ket({1.0, std::polar(1.0, alpha)})), 1.0, 1e-12);
}

TEST(PovmTest, CommutesWithDephasing) {
  Rng rng(32);
  std::uniform_real_distribution<double> lg(-2, 2), pp(0.0, 0.5);
  for (int k = 0; k < 50; ++k) {
    const double gamma = std::exp(lg(rng));
    const double p = pp(rng);
    const QubitDensityMatrix rho(testing::RandomPureState(2, rng));
    for (PovmOutcome o : {PovmOutcome::kKeep, PovmOutcome::kDelete}) {
      QubitDensityMatrix before = rho;
      ApplyDephasing(before, 0, p);
      const PovmResult a = ApplyBalancingPovm(before, 0, gamma, o);
      PovmResult b = ApplyBalancingPovm(rho, 0, gamma, o);
      ApplyDephasing(b.state, 0, p);
      EXPECT_NEAR(a.probability, b.probability, 1e-12);
      EXPECT_LT((a.state.matrix() - b.state.matrix()).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(PovmTest, SampledFrequencies) {
  Rng rng(33);
  const QubitDensityMatrix rho(Ket({1.0, 0.5}));
  int keeps = 0;
  const int shots = 20000;
  for (int k = 0; k < shots; ++k)
    keeps += ApplyBalancingPovm(rho, 0, 0.5, rng).outcome == PovmOutcome::kKeep;
  EXPECT_NEAR(double(keeps) / shots, 0.4, 4 * std::sqrt(0.24 / shots));
}

TEST(DephasingTest, Examples) {
  const QubitDensityMatrix plus(Ket({1.0, 1.0}));
  QubitDensityMatrix a = plus;
  ApplyDephasing(a, 0, 0.0);
  EXPECT_LT(TraceDistance(a, plus), 1e-15);

  QubitDensityMatrix b = plus;
  ApplyDephasing(b, 0, 0.5);
  EXPECT_LT((b.matrix() - 0.5 * Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(), 1e-15);

  QubitDensityMatrix c = plus;
  ApplyDephasing(c, 0, 0.1);
  EXPECT_NEAR(c.matrix()(0, 1).real(), 0.4, 1e-15);
  EXPECT_NEAR(c.trace().real(), 1.0, 1e-15);

  EXPECT_THROW(ApplyDephasing(c, 0, 0.6), std::invalid_argument);
  EXPECT_THROW(ApplyDephasing(c, 0, -0.1), std::invalid_argument);
}

TEST(FidelityTest, Examples) {
  const QubitPureState zero = Ket({1.0, 0.0});
  const QubitPureState one = Ket({0.0, 1.0});
  const QubitPureState plus = Ket({1.0, 1.0});
  EXPECT_NEAR(Fidelity(plus, plus), 1.0, 1e-15);
  EXPECT_NEAR(Fidelity(zero, one), 0.0, 1e-15);
  EXPECT_NEAR(Fidelity(plus, zero), 0.5, 1e-15);
  EXPECT_NEAR(TraceDistance(zero, one), 1.0, 1e-12);
  EXPECT_THROW(Fidelity(zero, QubitPureState(2)), std::invalid_argument);
}

TEST(FidelityTest, MixedOverloadsAgreeAndAreSymmetric) {
  Rng rng(40);
  for (int k = 0; k < 20; ++k) {
    const QubitPureState a = testing::RandomPureState(2, rng);
    const QubitPureState b = testing::RandomPureState(2, rng);
    const double f = Fidelity(a, b);
    EXPECT_NEAR(Fidelity(QubitDensityMatrix(a), b), f, 1e-10);
    EXPECT_NEAR(Fidelity(a, QubitDensityMatrix(b)), f, 1e-10);
    EXPECT_NEAR(Fidelity(QubitDensityMatrix(a), QubitDensityMatrix(b)), f, 1e-7);
    EXPECT_NEAR(TraceDistance(a, b), std::sqrt(1.0 - f), 1e-10);

    QubitDensityMatrix ra(a), rb(b);
    ApplyDephasing(ra, 0, 0.2);
    ApplyDephasing(rb, 1, 0.3);
    EXPECT_NEAR(Fidelity(ra, rb), Fidelity(rb, ra), 1e-7);
    EXPECT_NEAR(TraceDistance(ra, rb), TraceDistance(rb, ra), 1e-12);
    EXPECT_TRUE(IsValidDensityMatrix(ra));
  }
}

}  // namespace
}  // namespace cvdl
