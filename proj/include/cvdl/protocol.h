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

#ifndef CVDL_PROTOCOL_H_
#define CVDL_PROTOCOL_H_

// Desk-scale simulation of downloading a qubit cluster state from a thermal
// CV cluster state: conditional displacements, q measurements, neighbor phase
// corrections and amplitude balancing.

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "cvdl/gaussian.h"
#include "cvdl/graph.h"
#include "cvdl/qubit_state.h"
#include "cvdl/random.h"

namespace cvdl {

struct ProtocolParams {
  Graph graph;
  SqueezedThermalParams source;
  double cphase_strength = 1.0;
  std::uint64_t seed = 0;
};

/// Independent q outcomes, each from (1/2) N(0, e^{2 r0}/2) + (1/2)
/// N(sqrt(pi), e^{2 r0}/2) with r0 the effective squeezing of the source.
Eigen::VectorXd SampleOutcomes(const ProtocolParams& params, Rng& rng);

/// Equivalent-circuit route: per-qubit QubitGivenOutcome states, single-qubit
/// dephasing, then ideal CZ gates. Requires unit CPHASE strength.
QubitDensityMatrix DownloadedStateEquivalent(const ProtocolParams& params,
                                             const Eigen::VectorXd& q);

/// Direct route: the CV cluster wavefunction evaluated at the shifted
/// arguments q - sqrt(pi) b, followed by the phase correction R_Z(phi) and
/// analytic thermal damping of the off-diagonal elements.
QubitDensityMatrix DownloadedStateDirect(const ProtocolParams& params,
                                         const Eigen::VectorXd& q);

/// Same as DownloadedStateDirect but without the correction: the raw
/// post-measurement state carrying the R_Z(-phi) by-product.
QubitDensityMatrix DownloadedStateUncorrected(const ProtocolParams& params,
                                              const Eigen::VectorXd& q);

struct DownloadRecord {
  std::uint64_t shot = 0;
  Eigen::VectorXd q;
  Eigen::VectorXd phi;
  Eigen::VectorXd gamma;
  std::vector<PovmOutcome> outcomes;
  /// Z outcome of each deleted qubit, -1 for kept qubits.
  std::vector<int> deleted_bits;
  QubitDensityMatrix state;
  bool all_kept = false;
  /// Fidelity with |G> (only meaningful when all_kept).
  double cluster_fidelity = 0.0;

  std::uint32_t deletion_mask() const;
};

struct DownloadSummary {
  std::int64_t shots = 0;
  int qubits = 0;
  double r0 = 0.0;
  double sigma2 = 0.0;
  std::int64_t deletions = 0;
  double p_del_emp = 0.0;
  double p_del_stderr = 0.0;
  double p_del_analytic = 0.0;
  std::int64_t all_keep_shots = 0;
  /// Mean fidelity with |G> over all-keep shots (0 when there are none).
  double kept_fidelity_mean = 0.0;
  double kept_fidelity_min = 0.0;
  std::vector<double> per_qubit_deletion_rate;
  std::map<std::uint32_t, std::int64_t> deletion_mask_counts;
};

struct DownloadRun {
  std::vector<DownloadRecord> records;
  DownloadSummary summary;
};

/// Runs `shots` independent shots. Shot k draws from StreamRng(params.seed, k).
/// When keep_records is false only the summary is filled.
DownloadRun RunDownload(const ProtocolParams& params, std::int64_t shots,
                        bool keep_records = true);

}  // namespace cvdl

#endif  // CVDL_PROTOCOL_H_
