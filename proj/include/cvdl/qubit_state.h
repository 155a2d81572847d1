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

#ifndef CVDL_QUBIT_STATE_H_
#define CVDL_QUBIT_STATE_H_

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cvdl/graph.h"
#include "cvdl/random.h"

namespace cvdl {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;

/// Dense registers are capped at this many qubits.
inline constexpr int kMaxQubits = 12;

// Basis index convention: qubit k is bit k of the index (little-endian).

class QubitPureState {
 public:
  QubitPureState() = default;
  /// |0...0> on n qubits.
  explicit QubitPureState(int n);
  /// Takes amplitudes as given; size must be 2^n.
  QubitPureState(int n, Eigen::VectorXcd amplitudes);

  static QubitPureState PlusProduct(int n);

  int num_qubits() const { return n_; }
  Eigen::Index dim() const { return amps_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& mutable_amplitudes() { return amps_; }
  double norm() const { return amps_.norm(); }
  void normalize();

 private:
  int n_ = 0;
  Eigen::VectorXcd amps_;
};

class QubitDensityMatrix {
 public:
  QubitDensityMatrix() = default;
  QubitDensityMatrix(int n, Eigen::MatrixXcd rho);
  explicit QubitDensityMatrix(const QubitPureState& psi);

  int num_qubits() const { return n_; }
  Eigen::Index dim() const { return rho_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  Eigen::MatrixXcd& mutable_matrix() { return rho_; }
  Complex trace() const { return rho_.trace(); }
  /// Divides by the trace; throws if the trace vanishes.
  void normalize();

 private:
  int n_ = 0;
  Eigen::MatrixXcd rho_;
};

// Single-qubit matrices.
Matrix2c PauliX();
Matrix2c PauliZ();
/// R_Z(theta) = exp(-i Z theta / 2).
Matrix2c RotationZ(double theta);

/// |G> = prod_{(i,j) in E} CZ_ij |+>^n. Throws if n exceeds max_qubits.
QubitPureState ClusterState(const Graph& g, int max_qubits = kMaxQubits);

// Gate application. Sites are validated and std::out_of_range is thrown for
// bad indices.
void ApplySingleQubit(QubitPureState& psi, int site, const Matrix2c& u);
void ApplyCZ(QubitPureState& psi, int a, int b);
void ApplyRZ(QubitPureState& psi, int site, double theta);
void ApplyX(QubitPureState& psi, int site);
void ApplyZ(QubitPureState& psi, int site);
/// Applies CZ on every edge of g.
void ApplyGraphCZ(QubitPureState& psi, const Graph& g);

/// rho -> K rho K^dagger on one site (K need not be unitary).
void ApplySingleQubit(QubitDensityMatrix& rho, int site, const Matrix2c& k);
void ApplyCZ(QubitDensityMatrix& rho, int a, int b);
void ApplyRZ(QubitDensityMatrix& rho, int site, double theta);
void ApplyGraphCZ(QubitDensityMatrix& rho, const Graph& g);

/// Z-basis measurement with Born sampling; collapses and renormalizes.
int MeasureZ(QubitPureState& psi, int site, Rng& rng);
/// Z-basis measurement with a forced outcome. Returns its probability.
double MeasureZForced(QubitPureState& psi, int site, int outcome);
double ProbabilityOfOne(const QubitPureState& psi, int site);
double ProbabilityOfOne(const QubitDensityMatrix& rho, int site);

/// || X_i prod_{j in n(i)} Z_j |psi> - |psi> ||.
double StabilizerResidual(const QubitPureState& psi, const Graph& g, int i);

/// Compares the bit-flip by-product state prod R_Z(-theta) prod X^l |G>,
/// theta = sqrt(pi) A mu, against prod R_Z(-phi) |G> with phi = sqrt(pi) A q,
/// q = l sqrt(pi) + mu. Returns 1 - |<lhs|rhs>|.
double PostprocessingDeviation(const Graph& g, const std::vector<int>& bits,
                               const Eigen::VectorXd& mu);

enum class PovmOutcome { kKeep, kDelete };

/// The two Kraus operators {M0 (keep), M1 (delete)} for imbalance gamma.
std::pair<Matrix2c, Matrix2c> BalancingPovm(double gamma);

struct PovmResult {
  PovmOutcome outcome;
  double keep_probability;
  /// Probability of the outcome that occurred.
  double probability;
  /// Z value the qubit collapsed to on delete, -1 on keep.
  int collapsed_bit;
  QubitDensityMatrix state;
};

/// Amplitude-balancing weak measurement. gamma must be positive.
PovmResult ApplyBalancingPovm(const QubitDensityMatrix& rho, int site,
                              double gamma, Rng& rng);
PovmResult ApplyBalancingPovm(const QubitDensityMatrix& rho, int site,
                              double gamma, PovmOutcome forced);

/// rho -> (1-p) rho + p Z rho Z on one site; 0 <= p <= 1/2.
void ApplyDephasing(QubitDensityMatrix& rho, int site, double p);

// Fidelity is the squared-overlap convention (1 for identical states).
double Fidelity(const QubitPureState& a, const QubitPureState& b);
double Fidelity(const QubitDensityMatrix& a, const QubitPureState& b);
double Fidelity(const QubitPureState& a, const QubitDensityMatrix& b);
double Fidelity(const QubitDensityMatrix& a, const QubitDensityMatrix& b);
double TraceDistance(const QubitDensityMatrix& a, const QubitDensityMatrix& b);
double TraceDistance(const QubitPureState& a, const QubitPureState& b);

/// Structural checks: Hermitian, unit trace, eigenvalues >= -tol.
bool IsValidDensityMatrix(const QubitDensityMatrix& rho, double tol = 1e-10);

}  // namespace cvdl

#endif  // CVDL_QUBIT_STATE_H_
