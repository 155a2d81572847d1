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

#ifndef CVDL_GRID_ORACLE_H_
#define CVDL_GRID_ORACLE_H_

// Brute-force hybrid simulator on a uniform q grid for one or two modes, each
// paired with one qubit. The grid spacing is sqrt(pi) / K, so the conditional
// displacement by sqrt(pi) is an exact shift by K cells.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "cvdl/qubit_state.h"
#include "cvdl/random.h"

namespace cvdl {

struct GridParams {
  int cells_per_shift = 64;  ///< K
  /// Half-width L of the grid; <= 0 picks the smallest value allowed by the
  /// truncation guard.
  double half_width = 0.0;
};

/// Smallest admissible half-width: 6 max(e^{r0}, 1) + sqrt(pi).
double GridMinHalfWidth(double r0);

class HybridGridState {
 public:
  int modes() const { return modes_; }
  int qubits() const { return modes_; }
  int cells_per_shift() const { return k_; }
  double spacing() const { return dq_; }
  double half_width() const { return l_; }
  /// Grid points per mode.
  Eigen::Index points() const { return points_; }
  double q_at(Eigen::Index k) const { return -l_ + double(k) * dq_; }

  /// Flat index of (grid indices, qubit bitstring); mode 0 varies fastest.
  Eigen::Index index(Eigen::Index k0, Eigen::Index k1, unsigned bits) const {
    return ((k1 * points_ + k0) << modes_) | bits;
  }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
  std::vector<std::complex<double>>& mutable_amplitudes() { return amps_; }

  /// sum |amp|^2 dq^modes.
  double norm() const;

  friend HybridGridState InitGrid(double r0, int modes, const GridParams& params);

 private:
  int modes_ = 0;
  int k_ = 0;
  double dq_ = 0.0;
  double l_ = 0.0;
  Eigen::Index points_ = 0;
  std::vector<std::complex<double>> amps_;
};

/// Squeezed vacua with q variance e^{2 r0}/2 on each mode, qubits in |+>.
/// Throws std::invalid_argument when K < 16 or the half-width violates the
/// truncation guard.
HybridGridState InitGrid(double r0, int modes, const GridParams& params = {});

/// Pointwise phase exp(i g q_i q_j).
void ApplyCphaseGrid(HybridGridState& state, int mode_i, int mode_j,
                     double strength = 1.0);

/// Shifts the qubit=1 branch by +K cells along `mode` (direction -1 undoes
/// it). Throws std::runtime_error if more than 1e-10 probability would leave
/// the grid.
void ApplyCdGrid(HybridGridState& state, int mode, int qubit, int direction = 1);

/// Probability of each joint grid point (summed over qubits), dq^modes folded in.
std::vector<double> MarginalProbabilities(const HybridGridState& state);

struct GridMeasurement {
  Eigen::VectorXd q;
  std::vector<Eigen::Index> grid_index;
  double probability = 0.0;
  QubitPureState qubits;
};

/// Samples a grid point per mode from the joint marginal and returns the
/// collapsed qubit state. The grid state itself is left untouched.
GridMeasurement MeasureQGrid(const HybridGridState& state, Rng& rng);
GridMeasurement MeasureQGridAt(const HybridGridState& state,
                               const std::vector<Eigen::Index>& grid_index);

/// Samples `shots` outcomes from one marginal, reusing the cumulative table.
std::vector<GridMeasurement> MeasureQGridShots(const HybridGridState& state,
                                               int shots, Rng& rng);

}  // namespace cvdl

#endif  // CVDL_GRID_ORACLE_H_
