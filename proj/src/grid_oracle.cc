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
#include <numbers>
#include <stdexcept>
#include <string>

namespace cvdl {
namespace {

const double kSqrtPiGrid = std::sqrt(std::numbers::pi);

void CheckMode(const HybridGridState& s, int mode) {
  if (mode < 0 || mode >= s.modes()) {
    throw std::out_of_range("mode " + std::to_string(mode) + " outside [0," +
                            std::to_string(s.modes()) + ")");
  }
}

Eigen::Index Stride(const HybridGridState& s, int mode) {
  return (mode == 0 ? 1 : s.points()) << s.modes();
}

}  // namespace

double GridMinHalfWidth(double r0) {
  return 6.0 * std::max(std::exp(r0), 1.0) + kSqrtPiGrid;
}

double HybridGridState::norm() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s * std::pow(dq_, modes_);
}

HybridGridState InitGrid(double r0, int modes, const GridParams& params) {
  if (modes < 1 || modes > 2) {
    throw std::invalid_argument("grid oracle supports one or two modes");
  }
  if (params.cells_per_shift < 16) {
    throw std::invalid_argument("K = " + std::to_string(params.cells_per_shift) +
                                " is below the minimum of 16 cells per shift");
  }
  const double l_min = GridMinHalfWidth(r0);
  if (params.half_width > 0.0 && params.half_width < l_min) {
    throw std::invalid_argument("grid half-width " +
                                std::to_string(params.half_width) +
                                " violates the truncation guard L >= " +
                                std::to_string(l_min));
  }
  HybridGridState s;
  s.modes_ = modes;
  s.k_ = params.cells_per_shift;
  s.dq_ = kSqrtPiGrid / s.k_;
  const double l = params.half_width > 0.0 ? params.half_width : l_min;
  const auto half_cells = static_cast<Eigen::Index>(std::ceil(l / s.dq_));
  s.l_ = double(half_cells) * s.dq_;
  s.points_ = 2 * half_cells;

  const double var2 = 2.0 * std::exp(2.0 * r0);
  std::vector<double> psi(s.points_);
  for (Eigen::Index k = 0; k < s.points_; ++k) {
    const double q = s.q_at(k);
    psi[k] = std::exp(-q * q / var2);
  }
  const Eigen::Index slots = Eigen::Index{1} << modes;
  const Eigen::Index k1_max = modes == 2 ? s.points_ : 1;
  s.amps_.assign(s.points_ * k1_max * slots, 0.0);
  for (Eigen::Index k1 = 0; k1 < k1_max; ++k1) {
    const double f1 = modes == 2 ? psi[k1] : 1.0;
    for (Eigen::Index k0 = 0; k0 < s.points_; ++k0) {
      const double v = psi[k0] * f1;
      for (unsigned b = 0; b < slots; ++b) s.amps_[s.index(k0, k1, b)] = v;
    }
  }
  const double scale = 1.0 / std::sqrt(s.norm());
  for (auto& a : s.amps_) a *= scale;
  return s;
}

void ApplyCphaseGrid(HybridGridState& state, int mode_i, int mode_j,
                     double strength) {
  CheckMode(state, mode_i);
  CheckMode(state, mode_j);
  if (mode_i == mode_j) throw std::invalid_argument("CPHASE needs two modes");
  const Eigen::Index slots = Eigen::Index{1} << state.modes();
  auto& amps = state.mutable_amplitudes();
  for (Eigen::Index k1 = 0; k1 < state.points(); ++k1) {
    for (Eigen::Index k0 = 0; k0 < state.points(); ++k0) {
      const std::complex<double> ph =
          std::polar(1.0, strength * state.q_at(k0) * state.q_at(k1));
      for (unsigned b = 0; b < slots; ++b) amps[state.index(k0, k1, b)] *= ph;
    }
  }
}

void ApplyCdGrid(HybridGridState& state, int mode, int qubit, int direction) {
  CheckMode(state, mode);
  if (qubit < 0 || qubit >= state.qubits()) {
    throw std::out_of_range("qubit index out of range");
  }
  if (direction != 1 && direction != -1) {
    throw std::invalid_argument("CD direction must be +1 or -1");
  }
  const Eigen::Index n = state.points();
  const Eigen::Index shift = state.cells_per_shift();
  const Eigen::Index stride = Stride(state, mode);
  const Eigen::Index other = state.modes() == 2 ? n : 1;
  const Eigen::Index other_stride = Stride(state, 1 - std::min(mode, 1)) *
                                    (state.modes() == 2 ? 1 : 0);
  const Eigen::Index slots = Eigen::Index{1} << state.modes();
  auto& amps = state.mutable_amplitudes();
  const double cell = std::pow(state.spacing(), state.modes());

  double lost = 0.0;
  std::vector<std::complex<double>> line(n);
  for (Eigen::Index o = 0; o < other; ++o) {
    for (unsigned b = 0; b < slots; ++b) {
      if (!((b >> qubit) & 1u)) continue;
      const Eigen::Index base = o * other_stride + b;
      for (Eigen::Index k = 0; k < n; ++k) line[k] = amps[base + k * stride];
      for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = k - direction * shift;
        if (src < 0 || src >= n) {
          amps[base + k * stride] = 0.0;
        } else {
          amps[base + k * stride] = line[src];
        }
      }
      // Amplitudes pushed past the edge.
      for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index dst = k + direction * shift;
        if (dst < 0 || dst >= n) lost += std::norm(line[k]) * cell;
      }
    }
  }
  if (lost > 1e-10) {
    throw std::runtime_error("conditional displacement pushed probability " +
                             std::to_string(lost) +
                             " off the grid; widen the half-width");
  }
}

std::vector<double> MarginalProbabilities(const HybridGridState& state) {
  const Eigen::Index slots = Eigen::Index{1} << state.modes();
  const Eigen::Index sites = static_cast<Eigen::Index>(state.amplitudes().size()) / slots;
  const double cell = std::pow(state.spacing(), state.modes());
  std::vector<double> p(sites, 0.0);
  for (Eigen::Index s = 0; s < sites; ++s) {
    double acc = 0.0;
    for (Eigen::Index b = 0; b < slots; ++b)
      acc += std::norm(state.amplitudes()[s * slots + b]);
    p[s] = acc * cell;
  }
  return p;
}

GridMeasurement MeasureQGridAt(const HybridGridState& state,
                               const std::vector<Eigen::Index>& grid_index) {
  if (static_cast<int>(grid_index.size()) != state.modes()) {
    throw std::invalid_argument("need one grid index per mode");
  }
  for (Eigen::Index k : grid_index) {
    if (k < 0 || k >= state.points()) throw std::out_of_range("grid index out of range");
  }
  const Eigen::Index k0 = grid_index[0];
  const Eigen::Index k1 = state.modes() == 2 ? grid_index[1] : 0;
  const Eigen::Index slots = Eigen::Index{1} << state.modes();
  Eigen::VectorXcd amps(slots);
  for (Eigen::Index b = 0; b < slots; ++b)
    amps[b] = state.amplitudes()[state.index(k0, k1, static_cast<unsigned>(b))];

  GridMeasurement m;
  m.grid_index = grid_index;
  m.q.resize(state.modes());
  for (int i = 0; i < state.modes(); ++i) m.q[i] = state.q_at(grid_index[i]);
  m.probability = amps.squaredNorm() * std::pow(state.spacing(), state.modes());
  if (!(amps.squaredNorm() > 0.0)) {
    throw std::domain_error("measured a grid point with zero amplitude");
  }
  m.qubits = QubitPureState(state.modes(), amps);
  m.qubits.normalize();
  return m;
}

std::vector<GridMeasurement> MeasureQGridShots(const HybridGridState& state,
                                               int shots, Rng& rng) {
  const std::vector<double> p = MarginalProbabilities(state);
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t s = 0; s < p.size(); ++s) {
    acc += p[s];
    cdf[s] = acc;
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<GridMeasurement> out;
  out.reserve(shots);
  for (int shot = 0; shot < shots; ++shot) {
    const double x = u(rng) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), x);
    if (it == cdf.end()) --it;
    auto site = static_cast<Eigen::Index>(it - cdf.begin());
    // Skip zero-probability sites that upper_bound can land on at ties.
    while (p[site] == 0.0 && site > 0) --site;
    std::vector<Eigen::Index> idx{site % state.points()};
    if (state.modes() == 2) idx.push_back(site / state.points());
    out.push_back(MeasureQGridAt(state, idx));
  }
  return out;
}

GridMeasurement MeasureQGrid(const HybridGridState& state, Rng& rng) {
  return MeasureQGridShots(state, 1, rng).front();
}

}  // namespace cvdl
