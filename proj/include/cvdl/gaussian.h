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

#ifndef CVDL_GAUSSIAN_H_
#define CVDL_GAUSSIAN_H_

// Zero-mean multimode Gaussian states in covariance form.
//
// Conventions: a = (q + i p) / sqrt(2), so the vacuum has quadrature variance
// 1/2. Covariance matrices use block ordering (q_1..q_n, p_1..p_n).

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "cvdl/graph.h"

namespace cvdl {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline constexpr double kPhysicalityTol = 1e-10;

template <typename Scalar>
class BasicGaussianState {
 public:
  BasicGaussianState() = default;
  explicit BasicGaussianState(MatrixX<Scalar> cov)
      : n_(static_cast<int>(cov.rows() / 2)), cov_(std::move(cov)) {
    if (cov_.rows() != cov_.cols() || cov_.rows() % 2 != 0 || cov_.rows() == 0) {
      throw std::invalid_argument("covariance must be a nonempty 2n x 2n matrix");
    }
    if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > Scalar(1e-12)) {
      throw std::invalid_argument("covariance matrix is not symmetric");
    }
    mean_ = VectorX<Scalar>::Zero(cov_.rows());
  }

  int num_modes() const { return n_; }
  const MatrixX<Scalar>& covariance() const { return cov_; }
  const VectorX<Scalar>& mean() const { return mean_; }

  auto q_block() const { return cov_.topLeftCorner(n_, n_); }
  auto p_block() const { return cov_.bottomRightCorner(n_, n_); }

 private:
  int n_ = 0;
  MatrixX<Scalar> cov_;
  VectorX<Scalar> mean_;
};

using GaussianState = BasicGaussianState<double>;

struct SqueezedThermalParams {
  double r = 0.0;
  double nbar = 0.0;
};

/// Squeezed vacuum of squeezing r0 plus random p displacements of variance
/// sigma2 (per the wavefunction phase e^{i p0 q}) reproduce a squeezed thermal
/// state.
struct MixtureDecomposition {
  double r0 = 0.0;
  double sigma2 = 0.0;
};

inline void ValidateParams(const SqueezedThermalParams& p) {
  if (!std::isfinite(p.r)) throw std::invalid_argument("squeezing r must be finite");
  if (!(p.nbar >= 0.0) || !std::isfinite(p.nbar)) {
    throw std::invalid_argument("thermal occupation nbar must be >= 0");
  }
}

/// Single-mode q and p variances of a squeezed thermal state.
inline double SqueezedThermalB1(const SqueezedThermalParams& p) {
  return std::exp(2.0 * p.r) * (p.nbar + 0.5);
}
inline double SqueezedThermalB2(const SqueezedThermalParams& p) {
  return std::exp(-2.0 * p.r) * (p.nbar + 0.5);
}

inline MixtureDecomposition MixtureParams(const SqueezedThermalParams& p) {
  ValidateParams(p);
  const double e2r = std::exp(2.0 * p.r);
  const double e2r0 = e2r * (1.0 + 2.0 * p.nbar);
  return {0.5 * std::log(e2r0), p.nbar * (1.0 + p.nbar) / e2r0};
}

template <typename Scalar = double>
BasicGaussianState<Scalar> SqueezedThermal(const SqueezedThermalParams& p, int n) {
  ValidateParams(p);
  if (n < 1) throw std::invalid_argument("need at least one mode");
  MatrixX<Scalar> v = MatrixX<Scalar>::Zero(2 * n, 2 * n);
  v.topLeftCorner(n, n).diagonal().setConstant(Scalar(SqueezedThermalB1(p)));
  v.bottomRightCorner(n, n).diagonal().setConstant(Scalar(SqueezedThermalB2(p)));
  return BasicGaussianState<Scalar>(std::move(v));
}

template <typename Scalar = double>
BasicGaussianState<Scalar> Vacuum(int n) {
  return SqueezedThermal<Scalar>({0.0, 0.0}, n);
}

/// Standard symplectic form [[0, I], [-I, 0]] in qqpp ordering.
template <typename Scalar = double>
MatrixX<Scalar> SymplecticForm(int n) {
  MatrixX<Scalar> omega = MatrixX<Scalar>::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n).setIdentity();
  omega.bottomLeftCorner(n, n) = -MatrixX<Scalar>::Identity(n, n);
  return omega;
}

/// V -> S V S^T.
template <typename Scalar>
BasicGaussianState<Scalar> ApplySymplectic(const BasicGaussianState<Scalar>& s,
                                           const MatrixX<Scalar>& sym) {
  if (sym.rows() != s.covariance().rows() || sym.cols() != sym.rows()) {
    throw std::invalid_argument("symplectic matrix has the wrong dimension");
  }
  MatrixX<Scalar> v = sym * s.covariance() * sym.transpose();
  v = (v + v.transpose().eval()) / Scalar(2);
  return BasicGaussianState<Scalar>(std::move(v));
}

/// CPHASE array exp(i g q_i q_j) on every edge: p -> p + g A q.
template <typename Scalar>
BasicGaussianState<Scalar> ApplyCphase(const BasicGaussianState<Scalar>& s,
                                       const Graph& g, Scalar strength = Scalar(1)) {
  const int n = s.num_modes();
  if (g.num_vertices() != n) {
    throw std::invalid_argument("graph has " + std::to_string(g.num_vertices()) +
                                " vertices but state has " + std::to_string(n) +
                                " modes");
  }
  MatrixX<Scalar> sym = MatrixX<Scalar>::Identity(2 * n, 2 * n);
  sym.bottomLeftCorner(n, n) = strength * g.adjacency<Scalar>();
  return ApplySymplectic(s, sym);
}

/// Thermal CV cluster state: squeezed thermal inputs followed by CPHASE(g).
template <typename Scalar = double>
BasicGaussianState<Scalar> ThermalCvcs(const SqueezedThermalParams& p,
                                       const Graph& g, Scalar strength = Scalar(1)) {
  return ApplyCphase(SqueezedThermal<Scalar>(p, g.num_vertices()), g, strength);
}

/// Block form [[B1 I, B1 A], [B1 A, B2 I + B1 A A^T]] of a unit-strength
/// thermal CV cluster state.
template <typename Scalar = double>
MatrixX<Scalar> ThermalCvcsBlocks(Scalar b1, Scalar b2, const Graph& g) {
  const int n = g.num_vertices();
  const MatrixX<Scalar> a = g.adjacency<Scalar>();
  MatrixX<Scalar> v(2 * n, 2 * n);
  v.topLeftCorner(n, n) = b1 * MatrixX<Scalar>::Identity(n, n);
  v.topRightCorner(n, n) = b1 * a;
  v.bottomLeftCorner(n, n) = b1 * a;
  v.bottomRightCorner(n, n) =
      b2 * MatrixX<Scalar>::Identity(n, n) + b1 * a * a.transpose();
  return v;
}

/// Pure loss: V -> (1 - eps) V + (eps / 2) I.
template <typename Scalar>
BasicGaussianState<Scalar> ApplyLoss(const BasicGaussianState<Scalar>& s, Scalar eps) {
  if (!(eps >= Scalar(0) && eps < Scalar(1))) {
    throw std::invalid_argument("loss probability must lie in [0, 1)");
  }
  const Eigen::Index d = s.covariance().rows();
  return BasicGaussianState<Scalar>((Scalar(1) - eps) * s.covariance() +
                                    (eps / Scalar(2)) * MatrixX<Scalar>::Identity(d, d));
}

/// Amplified inefficient detection, q quadrature only:
/// V -> V + diag(c I, 0) with c = eps2 / (1 - eps2).
template <typename Scalar>
BasicGaussianState<Scalar> ApplyDetectorNoise(const BasicGaussianState<Scalar>& s,
                                              Scalar eps2) {
  if (!(eps2 >= Scalar(0) && eps2 < Scalar(1))) {
    throw std::invalid_argument("detector inefficiency must lie in [0, 1)");
  }
  MatrixX<Scalar> v = s.covariance();
  const int n = s.num_modes();
  v.topLeftCorner(n, n).diagonal().array() += eps2 / (Scalar(1) - eps2);
  return BasicGaussianState<Scalar>(std::move(v));
}

template <typename Scalar>
bool IsOrthogonal(const MatrixX<Scalar>& o, Scalar tol = Scalar(1e-10)) {
  if (o.rows() != o.cols()) return false;
  const MatrixX<Scalar> err = o * o.transpose() - MatrixX<Scalar>::Identity(o.rows(), o.rows());
  return err.cwiseAbs().maxCoeff() <= tol;
}

/// Passive network: V -> U V U^T with U = diag(O, O).
template <typename Scalar>
BasicGaussianState<Scalar> ApplyOrthogonal(const BasicGaussianState<Scalar>& s,
                                           const MatrixX<Scalar>& o) {
  const int n = s.num_modes();
  if (o.rows() != n || !IsOrthogonal(o)) {
    throw std::invalid_argument("passive network matrix must be an orthogonal n x n matrix");
  }
  MatrixX<Scalar> u = MatrixX<Scalar>::Zero(2 * n, 2 * n);
  u.topLeftCorner(n, n) = o;
  u.bottomRightCorner(n, n) = o;
  return ApplySymplectic(s, u);
}

/// Symplectic eigenvalues, ascending. The spectrum of Omega V is {+-i nu_k}.
template <typename Scalar>
VectorX<Scalar> SymplecticEigenvalues(const BasicGaussianState<Scalar>& s) {
  const int n = s.num_modes();
  const MatrixX<Scalar> m = SymplecticForm<Scalar>(n) * s.covariance();
  Eigen::EigenSolver<MatrixX<Scalar>> es(m, false);
  std::vector<Scalar> mags;
  mags.reserve(2 * n);
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    mags.push_back(std::abs(es.eigenvalues()[k]));
  std::sort(mags.begin(), mags.end());
  VectorX<Scalar> nu(n);
  for (int k = 0; k < n; ++k) nu[k] = (mags[2 * k] + mags[2 * k + 1]) / Scalar(2);
  return nu;
}

template <typename Scalar>
bool IsPhysical(const BasicGaussianState<Scalar>& s,
                Scalar tol = Scalar(kPhysicalityTol)) {
  // Positive definiteness is implied by nu >= 1/2 only for symmetric V > 0.
  Eigen::SelfAdjointEigenSolver<MatrixX<Scalar>> es(s.covariance(), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= Scalar(0)) return false;
  return SymplecticEigenvalues(s).minCoeff() >= Scalar(0.5) - tol;
}

/// Covariance of the collective modes A_i = R^{-1/2} sum_s a_i^(s) over R
/// independent copies of the given state.
template <typename Scalar>
BasicGaussianState<Scalar> CollectiveModeCovariance(const BasicGaussianState<Scalar>& s,
                                                    int copies) {
  if (copies < 1) throw std::invalid_argument("copy count R must be >= 1");
  const int n = s.num_modes();
  const Eigen::Index d = 2 * n;
  const Eigen::Index big = d * copies;

  // Copy-major layout: quadrature k of copy c sits at row c * d + k.
  MatrixX<Scalar> stacked = MatrixX<Scalar>::Zero(big, big);
  for (int c = 0; c < copies; ++c) stacked.block(c * d, c * d, d, d) = s.covariance();

  MatrixX<Scalar> t = MatrixX<Scalar>::Zero(d, big);
  const Scalar w = Scalar(1) / std::sqrt(Scalar(copies));
  for (int c = 0; c < copies; ++c) t.block(0, c * d, d, d).diagonal().setConstant(w);

  MatrixX<Scalar> v = t * stacked * t.transpose();
  v = (v + v.transpose().eval()) / Scalar(2);
  return BasicGaussianState<Scalar>(std::move(v));
}

}  // namespace cvdl

#endif  // CVDL_GAUSSIAN_H_
