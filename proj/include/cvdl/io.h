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

#ifndef CVDL_IO_H_
#define CVDL_IO_H_

// JSON and CSV encodings for graphs, states, plans and run outputs.

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cvdl/error_model.h"
#include "cvdl/gaussian.h"
#include "cvdl/graph.h"
#include "cvdl/planner.h"
#include "cvdl/protocol.h"
#include "cvdl/qubit_state.h"

namespace cvdl {

using Json = nlohmann::json;

inline constexpr std::string_view kToolName = "cvdl";
inline constexpr std::string_view kToolVersion = "0.3.0";

/// Accepts {"n": 4, "edges": [[0,1],...]} or a generator such as
/// {"kind": "path", "n": 4} / {"kind": "grid2d", "rows": 2, "cols": 3}.
Graph GraphFromJson(const Json& j);
Json GraphToJson(const Graph& g);

/// Compact graph specs: "path:4", "cycle:5", "grid2d:2x3", "complete:3",
/// "star:5", "custom:4:0-1,1-2". Anything else is read as a JSON file path.
Graph ParseGraphSpec(const std::string& spec);

/// {"ordering": "qqpp", "modes": n, "dim": 2n, "data": [row-major]}.
Json CovarianceToJson(const GaussianState& s);
GaussianState CovarianceFromJson(const Json& j);

/// {"qubits": n, "amplitudes": [[re, im], ...]}.
Json PureStateToJson(const QubitPureState& psi);
QubitPureState PureStateFromJson(const Json& j);
Json DensityMatrixToJson(const QubitDensityMatrix& rho);

Json DownloadRecordToJson(const DownloadRecord& rec);
Json DownloadSummaryToJson(const DownloadSummary& sum);
Json PlanToJson(const DecorrelationPlan& plan);

/// Shortest round-trip form with 17 significant digits, '.' decimal point.
std::string FormatDouble(double v);
std::string CsvJoin(const std::vector<std::string>& fields);

std::vector<std::string> SummaryCsvHeader();
std::vector<std::string> SummaryCsvRow(double r_db, double nbar,
                                       const DownloadSummary& sum);

std::vector<std::string> ThresholdCsvHeader();
std::vector<std::string> ThresholdCsvRow(const ThresholdRow& row);

std::vector<std::string> SweepCsvHeader();
std::vector<std::string> SweepCsvRow(const NoiseParams& noise,
                                     const DecorrelationPlan& plan);

/// Metadata written at the top of every output file.
Json MetadataHeader(std::string_view command, std::uint64_t seed,
                    const Json& config);
/// CSV form of the header: "# " prefixed lines.
std::string CsvMetadataLines(const Json& meta);

}  // namespace cvdl

#endif  // CVDL_IO_H_
