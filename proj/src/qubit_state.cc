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
#include <string>

#include <Eigen/Eigenvalues>

namespace cvdl {
namespace {

constexpr Complex kI{0.0, 1.0};

void CheckQubitCount(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("qubit count " + std::to_string(n) +
                                " outside [1," + std::to_string(kMaxQubits) +
                                "]");
  }
}

void CheckSite(int n, int site) {
  if (site < 0 || site >= n) {
    throw std::out_of_range("qubit site " + std::to_string(site) +
                            " outside [0," + std::to_string(n) + ")");
  }
}

// Applies k to the given site of every column of m (m <- K_site m).
void ApplyLeft(Eigen::MatrixXcd& m, int site, const Matrix2c& k) {
  const Eigen::Index dim = m.rows();
  const Eigen::Index mask = Eigen::Index{1} << site;
  for (Eigen::Index i0 = 0; i0 < dim; ++i0) {
    if (i0 & mask) continue;
    const Eigen::Index i1 = i0 | mask;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const Complex a0 = m(i0, c), a1 = m(i1, c);
      m(i0, c) = k(0, 0) * a0 + k(0, 1) * a1;
      m(i1, c) = k(1, 0) * a0 + k(1, 1) * a1;
    }
  }
}

// m <- m K_site^dagger.
void ApplyRightAdjoint(Eigen::MatrixXcd& m, int site, const Matrix2c& k) {
  const Eigen::Index dim = m.cols();
  const Eigen::Index mask = Eigen::Index{1} << site;
  const Matrix2c kc = k.conjugate();
  for (Eigen::Index j0 = 0; j0 < dim; ++j0) {
    if (j0 & mask) continue;
    const Eigen::Index j1 = j0 | mask;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const Complex a0 = m(r, j0), a1 = m(r, j1);
      m(r, j0) = a0 * kc(0, 0) + a1 * kc(0, 1);
      m(r, j1) = a0 * kc(1, 0) + a1 * kc(1, 1);
    }
  }
}

Eigen::MatrixXcd HermitianSqrt(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  const Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

QubitPureState::QubitPureState(int n) : n_(n) {
  CheckQubitCount(n);
  amps_ = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
  amps_[0] = 1.0;
}

QubitPureState::QubitPureState(int n, Eigen::VectorXcd amplitudes)
    : n_(n), amps_(std::move(amplitudes)) {
  CheckQubitCount(n);
  if (amps_.size() != (Eigen::Index{1} << n)) {
    throw std::invalid_argument("amplitude vector has size " +
                                std::to_string(amps_.size()) + ", expected 2^" +
                                std::to_string(n));
  }
}

QubitPureState QubitPureState::PlusProduct(int n) {
  CheckQubitCount(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  return QubitPureState(
      n, Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(double(dim))));
}

void QubitPureState::normalize() {
  const double nrm = amps_.norm();
  if (nrm == 0.0) throw std::domain_error("cannot normalize a zero state");
  amps_ /= nrm;
}

QubitDensityMatrix::QubitDensityMatrix(int n, Eigen::MatrixXcd rho)
    : n_(n), rho_(std::move(rho)) {
  CheckQubitCount(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (rho_.rows() != dim || rho_.cols() != dim) {
    throw std::invalid_argument("density matrix must be 2^n x 2^n");
  }
}

QubitDensityMatrix::QubitDensityMatrix(const QubitPureState& psi)
    : n_(psi.num_qubits()),
      rho_(psi.amplitudes() * psi.amplitudes().adjoint()) {}

void QubitDensityMatrix::normalize() {
  const double tr = rho_.trace().real();
  if (!(tr > 0.0)) throw std::domain_error("density matrix has zero trace");
  rho_ /= tr;
}

Matrix2c PauliX() {
  Matrix2c m;
  m << 0, 1, 1, 0;
  return m;
}

Matrix2c PauliZ() {
  Matrix2c m;
  m << 1, 0, 0, -1;
  return m;
}

Matrix2c RotationZ(double theta) {
  Matrix2c m = Matrix2c::Zero();
  m(0, 0) = std::exp(-kI * theta / 2.0);
  m(1, 1) = std::exp(kI * theta / 2.0);
  return m;
}

QubitPureState ClusterState(const Graph& g, int max_qubits) {
  const int n = g.num_vertices();
  if (n > max_qubits) {
    throw std::invalid_argument("cluster state on " + std::to_string(n) +
                                " qubits exceeds the cap of " +
                                std::to_string(max_qubits));
  }
  QubitPureState psi = QubitPureState::PlusProduct(n);
  ApplyGraphCZ(psi, g);
  return psi;
}

void ApplySingleQubit(QubitPureState& psi, int site, const Matrix2c& u) {
  CheckSite(psi.num_qubits(), site);
  Eigen::VectorXcd& a = psi.mutable_amplitudes();
  const Eigen::Index mask = Eigen::Index{1} << site;
  for (Eigen::Index i0 = 0; i0 < a.size(); ++i0) {
    if (i0 & mask) continue;
    const Eigen::Index i1 = i0 | mask;
    const Complex a0 = a[i0], a1 = a[i1];
    a[i0] = u(0, 0) * a0 + u(0, 1) * a1;
    a[i1] = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

void ApplyCZ(QubitPureState& psi, int a, int b) {
  CheckSite(psi.num_qubits(), a);
  CheckSite(psi.num_qubits(), b);
  if (a == b) throw std::invalid_argument("CZ needs two distinct sites");
  const Eigen::Index mask = (Eigen::Index{1} << a) | (Eigen::Index{1} << b);
  Eigen::VectorXcd& amps = psi.mutable_amplitudes();
  for (Eigen::Index i = 0; i < amps.size(); ++i)
    if ((i & mask) == mask) amps[i] = -amps[i];
}

void ApplyRZ(QubitPureState& psi, int site, double theta) {
  ApplySingleQubit(psi, site, RotationZ(theta));
}

void ApplyX(QubitPureState& psi, int site) {
  ApplySingleQubit(psi, site, PauliX());
}

void ApplyZ(QubitPureState& psi, int site) {
  ApplySingleQubit(psi, site, PauliZ());
}

void ApplyGraphCZ(QubitPureState& psi, const Graph& g) {
  if (g.num_vertices() != psi.num_qubits()) {
    throw std::invalid_argument("graph and register sizes differ");
  }
  for (const auto& [i, j] : g.edges()) ApplyCZ(psi, i, j);
}

void ApplySingleQubit(QubitDensityMatrix& rho, int site, const Matrix2c& k) {
  CheckSite(rho.num_qubits(), site);
  ApplyLeft(rho.mutable_matrix(), site, k);
  ApplyRightAdjoint(rho.mutable_matrix(), site, k);
}

void ApplyCZ(QubitDensityMatrix& rho, int a, int b) {
  CheckSite(rho.num_qubits(), a);
  CheckSite(rho.num_qubits(), b);
  if (a == b) throw std::invalid_argument("CZ needs two distinct sites");
  const Eigen::Index mask = (Eigen::Index{1} << a) | (Eigen::Index{1} << b);
  Eigen::MatrixXcd& m = rho.mutable_matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const bool rflip = (r & mask) == mask;
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const bool cflip = (c & mask) == mask;
      if (rflip != cflip) m(r, c) = -m(r, c);
    }
  }
}

void ApplyRZ(QubitDensityMatrix& rho, int site, double theta) {
  ApplySingleQubit(rho, site, RotationZ(theta));
}

void ApplyGraphCZ(QubitDensityMatrix& rho, const Graph& g) {
  if (g.num_vertices() != rho.num_qubits()) {
    throw std::invalid_argument("graph and register sizes differ");
  }
  for (const auto& [i, j] : g.edges()) ApplyCZ(rho, i, j);
}

double ProbabilityOfOne(const QubitPureState& psi, int site) {
  CheckSite(psi.num_qubits(), site);
  const Eigen::Index mask = Eigen::Index{1} << site;
  double p = 0.0;
  for (Eigen::Index i = 0; i < psi.dim(); ++i)
    if (i & mask) p += std::norm(psi.amplitudes()[i]);
  return p / psi.amplitudes().squaredNorm();
}

double ProbabilityOfOne(const QubitDensityMatrix& rho, int site) {
  CheckSite(rho.num_qubits(), site);
  const Eigen::Index mask = Eigen::Index{1} << site;
  double p = 0.0;
  for (Eigen::Index i = 0; i < rho.dim(); ++i)
    if (i & mask) p += rho.matrix()(i, i).real();
  return p / rho.trace().real();
}

double MeasureZForced(QubitPureState& psi, int site, int outcome) {
  const double p1 = ProbabilityOfOne(psi, site);
  const double p = outcome ? p1 : 1.0 - p1;
  if (p <= 0.0) throw std::domain_error("forced outcome has zero probability");
  const Eigen::Index mask = Eigen::Index{1} << site;
  Eigen::VectorXcd& a = psi.mutable_amplitudes();
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (bool(i & mask) != bool(outcome)) a[i] = 0.0;
  psi.normalize();
  return p;
}

int MeasureZ(QubitPureState& psi, int site, Rng& rng) {
  const double p1 = ProbabilityOfOne(psi, site);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int outcome = u(rng) < p1 ? 1 : 0;
  MeasureZForced(psi, site, outcome);
  return outcome;
}

double StabilizerResidual(const QubitPureState& psi, const Graph& g, int i) {
  QubitPureState s = psi;
  ApplyX(s, i);
  for (int j : g.neighbors(i)) ApplyZ(s, j);
  return (s.amplitudes() - psi.amplitudes()).norm();
}

double PostprocessingDeviation(const Graph& g, const std::vector<int>& bits,
                               const Eigen::VectorXd& mu) {
  const int n = g.num_vertices();
  if (static_cast<int>(bits.size()) != n || mu.size() != n) {
    throw std::invalid_argument("bit and offset vectors must match graph size");
  }
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  Eigen::VectorXd q(n);
  for (int i = 0; i < n; ++i) q[i] = bits[i] * sqrt_pi + mu[i];
  const Eigen::VectorXd theta = NeighborPhase(g, mu);
  const Eigen::VectorXd phi = NeighborPhase(g, q);

  const QubitPureState cluster = ClusterState(g);
  QubitPureState lhs = cluster;
  for (int i = 0; i < n; ++i)
    if (bits[i]) ApplyX(lhs, i);
  for (int k = 0; k < n; ++k) ApplyRZ(lhs, k, -theta[k]);

  QubitPureState rhs = cluster;
  for (int k = 0; k < n; ++k) ApplyRZ(rhs, k, -phi[k]);

  return 1.0 - std::abs(lhs.amplitudes().dot(rhs.amplitudes()));
}

std::pair<Matrix2c, Matrix2c> BalancingPovm(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::invalid_argument("balancing POVM needs a finite gamma > 0");
  }
  Matrix2c keep = Matrix2c::Zero();
  Matrix2c del = Matrix2c::Zero();
  if (gamma <= 1.0) {
    keep(0, 0) = gamma;
    keep(1, 1) = 1.0;
    del(0, 0) = std::sqrt(1.0 - gamma * gamma);
  } else {
    keep(0, 0) = 1.0;
    keep(1, 1) = 1.0 / gamma;
    del(1, 1) = std::sqrt(1.0 - 1.0 / (gamma * gamma));
  }
  return {keep, del};
}

namespace {

PovmResult FinishPovm(const QubitDensityMatrix& rho, int site, double gamma,
                      PovmOutcome outcome, double keep_probability) {
  const auto [keep, del] = BalancingPovm(gamma);
  QubitDensityMatrix post = rho;
  ApplySingleQubit(post, site, outcome == PovmOutcome::kKeep ? keep : del);
  const double prob = outcome == PovmOutcome::kKeep ? keep_probability
                                                    : 1.0 - keep_probability;
  if (prob <= 0.0) {
    throw std::domain_error("POVM outcome has zero probability");
  }
  post.normalize();
  int bit = -1;
  if (outcome == PovmOutcome::kDelete) bit = gamma < 1.0 ? 0 : 1;
  return PovmResult{outcome, keep_probability, prob, bit, std::move(post)};
}

double KeepProbability(const QubitDensityMatrix& rho, int site, double gamma) {
  CheckSite(rho.num_qubits(), site);
  const Matrix2c keep = BalancingPovm(gamma).first;
  QubitDensityMatrix k = rho;
  ApplySingleQubit(k, site, keep);
  return k.trace().real() / rho.trace().real();
}

}  // namespace

PovmResult ApplyBalancingPovm(const QubitDensityMatrix& rho, int site,
                              double gamma, Rng& rng) {
  const double pk = KeepProbability(rho, site, gamma);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const PovmOutcome outcome =
      u(rng) < pk ? PovmOutcome::kKeep : PovmOutcome::kDelete;
  return FinishPovm(rho, site, gamma, outcome, pk);
}

PovmResult ApplyBalancingPovm(const QubitDensityMatrix& rho, int site,
                              double gamma, PovmOutcome forced) {
  return FinishPovm(rho, site, gamma, forced, KeepProbability(rho, site, gamma));
}

void ApplyDephasing(QubitDensityMatrix& rho, int site, double p) {
  if (!(p >= 0.0 && p <= 0.5)) {
    throw std::invalid_argument("dephasing probability must lie in [0, 1/2]");
  }
  CheckSite(rho.num_qubits(), site);
  // Z rho Z flips the sign of elements whose row and column differ on site.
  const Eigen::Index mask = Eigen::Index{1} << site;
  const double damp = 1.0 - 2.0 * p;
  Eigen::MatrixXcd& m = rho.mutable_matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if ((r ^ c) & mask) m(r, c) *= damp;
}

double Fidelity(const QubitPureState& a, const QubitPureState& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes())) /
         (a.amplitudes().squaredNorm() * b.amplitudes().squaredNorm());
}

double Fidelity(const QubitDensityMatrix& a, const QubitPureState& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  const Complex v =
      b.amplitudes().dot(a.matrix() * b.amplitudes());
  return v.real() / (a.trace().real() * b.amplitudes().squaredNorm());
}

double Fidelity(const QubitPureState& a, const QubitDensityMatrix& b) {
  return Fidelity(b, a);
}

double Fidelity(const QubitDensityMatrix& a, const QubitDensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  const Eigen::MatrixXcd sa = HermitianSqrt(a.matrix());
  Eigen::MatrixXcd inner = sa * b.matrix() * sa;
  inner = (inner + inner.adjoint().eval()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(inner,
                                                      Eigen::EigenvaluesOnly);
  const double root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::min(1.0, root * root);
}

double TraceDistance(const QubitDensityMatrix& a, const QubitDensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  Eigen::MatrixXcd diff = a.matrix() - b.matrix();
  diff = (diff + diff.adjoint().eval()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(diff,
                                                      Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double TraceDistance(const QubitPureState& a, const QubitPureState& b) {
  return std::sqrt(std::max(0.0, 1.0 - Fidelity(a, b)));
}

bool IsValidDensityMatrix(const QubitDensityMatrix& rho, double tol) {
  const Eigen::MatrixXcd& m = rho.matrix();
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(m.trace() - Complex(1.0)) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

}  // namespace cvdl
