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

#ifndef CVDL_ERROR_MODEL_H_
#define CVDL_ERROR_MODEL_H_

// Single-qubit error laws for entanglement downloaded from a finitely squeezed
// (and possibly thermal) CV cluster state, plus loss-budget arithmetic.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "cvdl/qubit_state.h"
#include "cvdl/random.h"

namespace cvdl {

inline const double kSqrtPi = std::sqrt(std::numbers::pi);

/// Squeezed-vacuum wavefunction with q variance e^{2 r0} / 2 (real, p0 = 0).
double SqueezedWavefunction(double x, double r0);

/// psi(q)|0> + e^{-i p0 sqrt(pi)} psi(q - sqrt(pi))|1>, normalized.
QubitPureState QubitGivenOutcome(double q, double r0, double p0 = 0.0);

/// gamma = |psi(q - sqrt(pi)) / psi(q)|.
double AmplitudeImbalance(double q, double r0);

/// Keep probability of the balancing POVM on a qubit with imbalance gamma.
double BalancingKeepProbability(double gamma);

/// Density of the q outcome: (|psi(q)|^2 + |psi(q - sqrt(pi))|^2) / 2.
double OutcomeDensity(double q, double r0);
double OutcomeCdf(double q, double r0);

/// One draw from the outcome density.
double SampleOutcome(double r0, Rng& rng);

/// erf(e^{-r0} sqrt(pi) / 2).
double PDelAnalytic(double r0);

/// Adaptive Simpson integral of P(q) p_keep(q). Throws std::runtime_error if
/// the requested tolerance is not reached.
double PSuccQuadrature(double r0, double tol = 1e-13);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::int64_t shots = 0;
};

/// Samples q, then the POVM branch, and averages the delete indicator.
MonteCarloEstimate PDelMonteCarlo(double r0, std::int64_t shots, Rng& rng);

/// (1 - exp(-pi sigma2 / 2)) / 2.
double DephasingRate(double sigma2);

/// Monte Carlo estimate of E[exp(-i p0 sqrt(pi))] for p0 ~ N(0, sigma2). The
/// imaginary part averages to zero, so only the real part is returned.
MonteCarloEstimate DephasingCoherenceMonteCarlo(double sigma2,
                                                std::int64_t samples, Rng& rng);

/// dB = 10 log10(e^{2 r}).
double RToDb(double r);
double DbToR(double db);

/// Squeezing range searched by the threshold inversion.
inline constexpr double kMinInvertR0 = 0.0;
inline constexpr double kMaxInvertR0 = 10.0;

/// Inverse of PDelAnalytic, in dB. Throws std::invalid_argument when the
/// target is not reachable for r0 in [0, 10].
double SqueezingDbForPdel(double p_target);

/// p_del^rails.
double VertexDisconnectProb(double p_del, int rails);

struct ThresholdRow {
  double db = 0.0;
  double r0 = 0.0;
  double p_del = 0.0;
  double p_del_mc = 0.0;
  double stderr_mc = 0.0;
  int rails = 1;
  double p_vertex = 0.0;
};

/// Threshold table over [db_min, db_max] in steps of db_step. When mc_shots is
/// positive each row also carries a Monte Carlo estimate using stream `row`.
std::vector<ThresholdRow> ThresholdTable(double db_min, double db_max,
                                         double db_step, int rails,
                                         std::int64_t mc_shots,
                                         std::uint64_t seed);

/// One row per target erasure probability, with dB from the inversion.
std::vector<ThresholdRow> InverseThresholdRows(const std::vector<double>& targets,
                                               int rails, std::int64_t mc_shots,
                                               std::uint64_t seed);

}  // namespace cvdl

#endif  // CVDL_ERROR_MODEL_H_
