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

#include "cvdl/planner.h"

#include <cmath>
#include <stdexcept>

namespace cvdl {

void ValidateNoise(const NoiseParams& noise) {
  if (!(noise.eps1 >= 0.0 && noise.eps1 < 1.0)) {
    throw std::invalid_argument("eps1 must lie in [0, 1)");
  }
  if (!(noise.eps2 >= 0.0 && noise.eps2 < 1.0)) {
    throw std::invalid_argument("eps2 must lie in [0, 1)");
  }
  if (!std::isfinite(noise.r_prime)) {
    throw std::invalid_argument("r_prime must be finite");
  }
}

GivensNetwork GivensDecompose(const Eigen::MatrixXd& o) {
  if (!IsOrthogonal<double>(o)) {
    throw std::invalid_argument("Givens decomposition needs an orthogonal matrix");
  }
  const int n = static_cast<int>(o.rows());
  Eigen::MatrixXd m = o;
  GivensNetwork net;
  net.modes = n;
  for (int col = 0; col + 1 < n; ++col) {
    for (int row = n - 1; row > col; --row) {
      const double a = m(row - 1, col);
      const double b = m(row, col);
      if (std::abs(b) < 1e-15) continue;
      const double theta = std::atan2(b, a);
      const double c = std::cos(theta), s = std::sin(theta);
      for (int k = 0; k < n; ++k) {
        const double top = m(row - 1, k), bot = m(row, k);
        m(row - 1, k) = c * top + s * bot;
        m(row, k) = -s * top + c * bot;
      }
      m(row, col) = 0.0;
      net.rotations.push_back({row - 1, row, theta});
    }
  }
  net.signs = m.diagonal().unaryExpr([](double v) { return v < 0 ? -1.0 : 1.0; });
  return net;
}

Eigen::MatrixXd ComposeNetwork(const GivensNetwork& net) {
  Eigen::MatrixXd o = Eigen::MatrixXd::Identity(net.modes, net.modes);
  for (const GivensRotation& rot : net.rotations) {
    const double c = std::cos(rot.angle), s = std::sin(rot.angle);
    // o <- o * R(i, j, angle)
    for (int k = 0; k < net.modes; ++k) {
      const double oi = o(k, rot.i), oj = o(k, rot.j);
      o(k, rot.i) = c * oi + s * oj;
      o(k, rot.j) = -s * oi + c * oj;
    }
  }
  if (net.signs.size() == net.modes) o = o * net.signs.asDiagonal();
  return o;
}

PhysicalityReport CheckPhysicality(double b1, double b2, double c1, double c2,
                                   double eps1, double d) {
  PhysicalityReport rep;
  rep.q_variance_margin = b1 - c1;
  if (!(rep.q_variance_margin > 0.0)) {
    rep.physical = false;
    rep.violated = "B1 - C1 > 0";
    return rep;
  }
  rep.p_variance_margin = b2 - c2 - b1 * c1 * d / (b1 - c1);
  if (!(rep.p_variance_margin > 0.0)) {
    rep.physical = false;
    rep.violated = "B2 - C2 - B1 C1 D_max / (B1 - C1) > 0";
    return rep;
  }
  rep.uncertainty_product =
      rep.q_variance_margin * rep.p_variance_margin / ((1.0 - eps1) * (1.0 - eps1));
  // The construction saturates this bound on the principal mode.
  if (rep.uncertainty_product < 0.25 * (1.0 - 1e-12)) {
    rep.physical = false;
    rep.violated = "(B1 - C1)(B2 - C2 - B1 C1 D_max / (B1 - C1)) / (1 - eps1)^2 >= 1/4";
  }
  return rep;
}

DecorrelationPlan Plan(const Graph& g, const NoiseParams& noise) {
  ValidateNoise(noise);
  DecorrelationPlan plan;
  const double eps = noise.eps1;
  const double e2rp = std::exp(2.0 * noise.r_prime);

  plan.c1 = eps / 2.0 + noise.eps2 / (1.0 - noise.eps2);
  plan.c2 = eps / 2.0;

  const SquaredAdjacencySpectrum spec = ASquaredSpectrum(g);
  plan.o = spec.eigenvectors;
  plan.d = spec.eigenvalues;
  plan.d_max = spec.eigenvalues[0];
  plan.max_degree = MaxDegree(g);

  // Principal mode: squeezing r' and no thermal excitation.
  plan.b1 = plan.c1 + (1.0 - eps) * e2rp / 2.0;
  plan.b2 = plan.c2 + plan.c1 * plan.d_max +
            2.0 * plan.c1 * plan.c1 * plan.d_max / (e2rp * (1.0 - eps)) +
            (1.0 - eps) / (2.0 * e2rp);
  plan.g_prime = plan.b1 / (plan.b1 - plan.c1);

  const PhysicalityReport rep =
      CheckPhysicality(plan.b1, plan.b2, plan.c1, plan.c2, eps, plan.d_max);
  plan.physical = rep.physical;
  plan.violated_condition = rep.violated;

  const int n = g.num_vertices();
  plan.r_mode.resize(n);
  plan.nbar_mode.resize(n);
  for (int i = 0; i < n; ++i) {
    const double delta = plan.d_max - plan.d[i];
    const double root = std::sqrt(4.0 * plan.c1 * plan.c1 * delta +
                                  2.0 * plan.c1 * delta * (1.0 - eps) * e2rp +
                                  (1.0 - eps) * (1.0 - eps));
    plan.r_mode[i] = 0.5 * std::log((1.0 - eps) * e2rp / root);
    plan.nbar_mode[i] = 0.5 * (root / (1.0 - eps) - 1.0);
  }

  plan.effective.r = 0.25 * std::log(plan.b1 / plan.b2);
  plan.effective.nbar = std::sqrt(plan.b1 * plan.b2) - 0.5;

  plan.network = GivensDecompose(plan.o);
  return plan;
}

GaussianState PreparedInputs(const DecorrelationPlan& plan) {
  const Eigen::Index n = plan.r_mode.size();
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const SqueezedThermalParams mode{plan.r_mode[i], plan.nbar_mode[i]};
    v(i, i) = SqueezedThermalB1(mode);
    v(n + i, n + i) = SqueezedThermalB2(mode);
  }
  return GaussianState(std::move(v));
}

double VerifyPlan(const DecorrelationPlan& plan, const Graph& g,
                  const NoiseParams& noise) {
  if (!plan.physical) {
    throw std::invalid_argument("cannot verify an unphysical plan (" +
                                plan.violated_condition + ")");
  }
  GaussianState s = PreparedInputs(plan);
  s = ApplyOrthogonal(s, plan.o);
  s = ApplyCphase(s, g, plan.g_prime);
  s = ApplyLoss(s, noise.eps1);
  s = ApplyDetectorNoise(s, noise.eps2);
  const GaussianState target = ThermalCvcs(plan.effective, g);
  return (s.covariance() - target.covariance()).cwiseAbs().maxCoeff();
}

LinearizedPlan Linearize(const Graph& g, const NoiseParams& noise,
                         LinearizationForm form) {
  ValidateNoise(noise);
  double dm = 0.0;
  if (form == LinearizationForm::kSpectral) {
    dm = ASquaredSpectrum(g).eigenvalues[0];
  } else {
    const double d = MaxDegree(g);
    dm = d * d;
  }
  const double e2 = std::exp(2.0 * noise.r_prime);
  const double e4 = e2 * e2;
  const double w_minus = (dm * e4 + e4 - 1.0) / 2.0;
  const double w_plus = (dm * e4 + e4 + 1.0) / 2.0;
  const double v_minus = dm * e4 - 1.0;
  const double v_plus = dm * e4 + 1.0;

  LinearizedPlan lin;
  lin.e2r = e2 - noise.eps1 * w_minus - noise.eps2 * v_minus;
  lin.nbar = noise.eps1 / 2.0 * (w_plus / e2 - 1.0) + noise.eps2 / 2.0 * (v_plus / e2);
  lin.g_prime = 1.0 + (noise.eps1 + 2.0 * noise.eps2) / e2;
  return lin;
}

}  // namespace cvdl
