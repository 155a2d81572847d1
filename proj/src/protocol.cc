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

#include "cvdl/protocol.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cvdl/error_model.h"

namespace cvdl {
namespace {

void CheckOutcomes(const ProtocolParams& params, const Eigen::VectorXd& q) {
  if (q.size() != params.graph.num_vertices()) {
    throw std::invalid_argument("q has length " + std::to_string(q.size()) +
                                ", graph has " +
                                std::to_string(params.graph.num_vertices()) +
                                " vertices");
  }
  if (params.graph.num_vertices() > kMaxQubits) {
    throw std::invalid_argument("graph exceeds the dense register cap");
  }
}

// Pure-state amplitudes of the downloaded register before thermal damping.
Eigen::VectorXcd DirectAmplitudes(const ProtocolParams& params,
                                  const Eigen::VectorXd& q, bool correct) {
  const int n = params.graph.num_vertices();
  const double r0 = MixtureParams(params.source).r0;
  const double s = std::exp(2.0 * r0);
  const double g = params.cphase_strength;
  const Eigen::MatrixXd adj = params.graph.adjacency();
  const Eigen::VectorXd phi = g * NeighborPhase(params.graph, q);

  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::VectorXd log_mag(dim);
  Eigen::VectorXd phase(dim);
  Eigen::VectorXd x(n);
  for (Eigen::Index b = 0; b < dim; ++b) {
    for (int i = 0; i < n; ++i) x[i] = q[i] - kSqrtPi * double((b >> i) & 1);
    // log prod psi(x_i), dropping the common normalization.
    log_mag[b] = -x.squaredNorm() / (2.0 * s);
    // CV CPHASE array exp(i g/2 x^T A x).
    phase[b] = 0.5 * g * x.dot(adj * x);
    if (correct) {
      for (int i = 0; i < n; ++i)
        if ((b >> i) & 1) phase[b] += phi[i];
    }
  }
  const double top = log_mag.maxCoeff();
  Eigen::VectorXcd amps(dim);
  for (Eigen::Index b = 0; b < dim; ++b)
    amps[b] = std::polar(std::exp(log_mag[b] - top), phase[b]);
  amps.normalize();
  return amps;
}

QubitDensityMatrix DirectDensity(const ProtocolParams& params,
                                 const Eigen::VectorXd& q, bool correct) {
  CheckOutcomes(params, q);
  const int n = params.graph.num_vertices();
  const Eigen::VectorXcd amps = DirectAmplitudes(params, q, correct);
  Eigen::MatrixXcd rho = amps * amps.adjoint();
  const double sigma2 = MixtureParams(params.source).sigma2;
  if (sigma2 > 0.0) {
    const double damp = std::exp(-std::numbers::pi * sigma2 / 2.0);
    for (Eigen::Index r = 0; r < rho.rows(); ++r)
      for (Eigen::Index c = 0; c < rho.cols(); ++c) {
        const int flips = std::popcount(static_cast<std::uint64_t>(r ^ c));
        if (flips) rho(r, c) *= std::pow(damp, flips);
      }
  }
  return QubitDensityMatrix(n, std::move(rho));
}

}  // namespace

Eigen::VectorXd SampleOutcomes(const ProtocolParams& params, Rng& rng) {
  const double r0 = MixtureParams(params.source).r0;
  Eigen::VectorXd q(params.graph.num_vertices());
  for (Eigen::Index i = 0; i < q.size(); ++i) q[i] = SampleOutcome(r0, rng);
  return q;
}

QubitDensityMatrix DownloadedStateEquivalent(const ProtocolParams& params,
                                             const Eigen::VectorXd& q) {
  CheckOutcomes(params, q);
  if (params.cphase_strength != 1.0) {
    throw std::invalid_argument(
        "the equivalent circuit needs unit CPHASE strength");
  }
  const int n = params.graph.num_vertices();
  const MixtureDecomposition mix = MixtureParams(params.source);

  Eigen::VectorXcd amps = Eigen::VectorXcd::Ones(1);
  for (int i = 0; i < n; ++i) {
    // Qubit i becomes bit i: new index = old + 2^i * bit.
    const Eigen::VectorXcd single =
        QubitGivenOutcome(q[i], mix.r0).amplitudes();
    Eigen::VectorXcd next(amps.size() * 2);
    next.head(amps.size()) = single[0] * amps;
    next.tail(amps.size()) = single[1] * amps;
    amps = std::move(next);
  }
  QubitDensityMatrix rho(QubitPureState(n, std::move(amps)));
  const double p_phi = DephasingRate(mix.sigma2);
  for (int i = 0; i < n; ++i) ApplyDephasing(rho, i, p_phi);
  ApplyGraphCZ(rho, params.graph);
  return rho;
}

QubitDensityMatrix DownloadedStateDirect(const ProtocolParams& params,
                                         const Eigen::VectorXd& q) {
  return DirectDensity(params, q, /*correct=*/true);
}

QubitDensityMatrix DownloadedStateUncorrected(const ProtocolParams& params,
                                              const Eigen::VectorXd& q) {
  return DirectDensity(params, q, /*correct=*/false);
}

std::uint32_t DownloadRecord::deletion_mask() const {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    if (outcomes[i] == PovmOutcome::kDelete) mask |= std::uint32_t{1} << i;
  return mask;
}

DownloadRun RunDownload(const ProtocolParams& params, std::int64_t shots,
                        bool keep_records) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const int n = params.graph.num_vertices();
  const MixtureDecomposition mix = MixtureParams(params.source);
  const QubitPureState cluster = ClusterState(params.graph);

  DownloadRun run;
  DownloadSummary& sum = run.summary;
  sum.shots = shots;
  sum.qubits = n;
  sum.r0 = mix.r0;
  sum.sigma2 = mix.sigma2;
  sum.p_del_analytic = PDelAnalytic(mix.r0);
  std::vector<std::int64_t> per_qubit(n, 0);
  double fid_sum = 0.0;
  double fid_min = std::numeric_limits<double>::infinity();

  for (std::int64_t shot = 0; shot < shots; ++shot) {
    Rng rng = StreamRng(params.seed, static_cast<std::uint64_t>(shot));
    DownloadRecord rec;
    rec.shot = static_cast<std::uint64_t>(shot);
    rec.q = SampleOutcomes(params, rng);
    rec.phi = params.cphase_strength * NeighborPhase(params.graph, rec.q);
    rec.gamma.resize(n);
    QubitDensityMatrix rho = DownloadedStateDirect(params, rec.q);
    rec.all_kept = true;
    for (int i = 0; i < n; ++i) {
      rec.gamma[i] = AmplitudeImbalance(rec.q[i], mix.r0);
      PovmResult res = ApplyBalancingPovm(rho, i, rec.gamma[i], rng);
      rec.outcomes.push_back(res.outcome);
      rec.deleted_bits.push_back(res.collapsed_bit);
      if (res.outcome == PovmOutcome::kDelete) {
        rec.all_kept = false;
        ++per_qubit[i];
        ++sum.deletions;
      }
      rho = std::move(res.state);
    }
    if (rec.all_kept) {
      rec.cluster_fidelity = Fidelity(rho, cluster);
      ++sum.all_keep_shots;
      fid_sum += rec.cluster_fidelity;
      fid_min = std::min(fid_min, rec.cluster_fidelity);
    }
    ++sum.deletion_mask_counts[rec.deletion_mask()];
    rec.state = std::move(rho);
    if (keep_records) run.records.push_back(std::move(rec));
  }

  const double trials = double(shots) * double(n);
  sum.p_del_emp = double(sum.deletions) / trials;
  sum.p_del_stderr = std::sqrt(sum.p_del_emp * (1.0 - sum.p_del_emp) / trials);
  sum.per_qubit_deletion_rate.resize(n);
  for (int i = 0; i < n; ++i)
    sum.per_qubit_deletion_rate[i] = double(per_qubit[i]) / double(shots);
  if (sum.all_keep_shots > 0) {
    sum.kept_fidelity_mean = fid_sum / double(sum.all_keep_shots);
    sum.kept_fidelity_min = fid_min;
  }
  return run;
}

}  // namespace cvdl
