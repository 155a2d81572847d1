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

#ifndef CVDL_VERIFY_H_
#define CVDL_VERIFY_H_

#include <cstdint>
#include <string>
#include <vector>

namespace cvdl {

struct VerifyConfig {
  std::uint64_t seed = 20240611;
  /// Random cases per battery.
  int cases = 50;
  /// Grid-oracle shots for the one-mode and two-mode scenarios.
  int grid_shots_one_mode = 20;
  int grid_shots_two_mode = 5;
  /// Test hook: multiplies g' by (1 + fault) before forward verification.
  double planner_fault = 0.0;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// Cross-module invariant batteries: equivalent-circuit theorem, erasure
/// exactness, grid oracle, planner forward check, POVM completeness,
/// post-processing equivalence, stabilizers and collective modes.
std::vector<CheckResult> RunVerify(const VerifyConfig& config);

bool AllPassed(const std::vector<CheckResult>& results);

}  // namespace cvdl

#endif  // CVDL_VERIFY_H_
