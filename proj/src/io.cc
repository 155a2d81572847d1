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

#include "cvdl/io.h"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace cvdl {
namespace {

int ToInt(std::string_view s, std::string_view what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Graph GraphFromJson(const Json& j) {
  if (j.contains("kind")) {
    const GraphKind kind = ParseGraphKind(j.at("kind").get<std::string>());
    switch (kind) {
      case GraphKind::kPath: return MakePath(j.at("n").get<int>());
      case GraphKind::kCycle: return MakeCycle(j.at("n").get<int>());
      case GraphKind::kComplete: return MakeComplete(j.at("n").get<int>());
      case GraphKind::kStar: return MakeStar(j.at("n").get<int>());
      case GraphKind::kGrid2d:
        return MakeGrid2d(j.at("rows").get<int>(), j.at("cols").get<int>());
      case GraphKind::kCustom: break;
    }
  }
  std::vector<Graph::Edge> edges;
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) {
        throw std::invalid_argument("each edge must be a two-element array");
      }
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  }
  return Graph(j.at("n").get<int>(), std::move(edges));
}

Json GraphToJson(const Graph& g) {
  Json edges = Json::array();
  for (const auto& [i, j] : g.edges()) edges.push_back({i, j});
  return Json{{"n", g.num_vertices()}, {"edges", edges}};
}

namespace {

std::optional<Graph> ParseFamilySpec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) return std::nullopt;
  const std::string_view head(spec.data(), colon);
  const std::string_view rest(spec.data() + colon + 1, spec.size() - colon - 1);
  if (head == "path") return MakePath(ToInt(rest, "vertex count"));
  if (head == "cycle") return MakeCycle(ToInt(rest, "vertex count"));
  if (head == "complete") return MakeComplete(ToInt(rest, "vertex count"));
  if (head == "star") return MakeStar(ToInt(rest, "vertex count"));
  if (head == "grid2d") {
    const auto dims = Split(rest, 'x');
    if (dims.size() != 2) throw std::invalid_argument("grid2d spec needs RxC");
    return MakeGrid2d(ToInt(dims[0], "row count"), ToInt(dims[1], "column count"));
  }
  if (head == "custom") {
    const std::size_t c2 = rest.find(':');
    const int n = ToInt(rest.substr(0, c2), "vertex count");
    std::vector<Graph::Edge> edges;
    if (c2 != std::string_view::npos && c2 + 1 < rest.size()) {
      for (std::string_view e : Split(rest.substr(c2 + 1), ',')) {
        const auto ends = Split(e, '-');
        if (ends.size() != 2) {
          throw std::invalid_argument("edge '" + std::string(e) + "' must be i-j");
        }
        edges.emplace_back(ToInt(ends[0], "vertex"), ToInt(ends[1], "vertex"));
      }
    }
    return MakeCustom(n, edges);
  }
  return std::nullopt;
}

}  // namespace

Graph ParseGraphSpec(const std::string& spec) {
  if (std::optional<Graph> g = ParseFamilySpec(spec)) return *std::move(g);
  std::ifstream in(spec);
  if (!in) {
    throw std::invalid_argument("graph spec '" + spec +
                                "' is neither a known family nor a readable file");
  }
  return GraphFromJson(Json::parse(in));
}

Json CovarianceToJson(const GaussianState& s) {
  const Eigen::MatrixXd& v = s.covariance();
  Json data = Json::array();
  for (Eigen::Index r = 0; r < v.rows(); ++r)
    for (Eigen::Index c = 0; c < v.cols(); ++c) data.push_back(v(r, c));
  return Json{{"ordering", "qqpp"},
              {"modes", s.num_modes()},
              {"dim", v.rows()},
              {"data", data}};
}

GaussianState CovarianceFromJson(const Json& j) {
  if (j.value("ordering", std::string()) != "qqpp") {
    throw std::invalid_argument("covariance JSON must declare ordering \"qqpp\"");
  }
  const auto dim = j.at("dim").get<Eigen::Index>();
  const Json& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != dim * dim) {
    throw std::invalid_argument("covariance data has the wrong length");
  }
  Eigen::MatrixXd v(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) v(r, c) = data[r * dim + c].get<double>();
  return GaussianState(std::move(v));
}

Json PureStateToJson(const QubitPureState& psi) {
  Json amps = Json::array();
  for (Eigen::Index k = 0; k < psi.dim(); ++k)
    amps.push_back({psi.amplitudes()[k].real(), psi.amplitudes()[k].imag()});
  return Json{{"qubits", psi.num_qubits()}, {"amplitudes", amps}};
}

QubitPureState PureStateFromJson(const Json& j) {
  const int n = j.at("qubits").get<int>();
  const Json& amps = j.at("amplitudes");
  Eigen::VectorXcd a(amps.size());
  for (std::size_t k = 0; k < amps.size(); ++k)
    a[k] = Complex(amps[k].at(0).get<double>(), amps[k].at(1).get<double>());
  return QubitPureState(n, std::move(a));
}

Json DensityMatrixToJson(const QubitDensityMatrix& rho) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < rho.dim(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < rho.dim(); ++c)
      row.push_back({rho.matrix()(r, c).real(), rho.matrix()(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return Json{{"qubits", rho.num_qubits()}, {"matrix", rows}};
}

namespace {

Json VectorToJson(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v[k]);
  return out;
}

Json MatrixToRowMajor(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json DownloadRecordToJson(const DownloadRecord& rec) {
  Json outcomes = Json::array();
  for (std::size_t i = 0; i < rec.outcomes.size(); ++i) {
    if (rec.outcomes[i] == PovmOutcome::kKeep) {
      outcomes.push_back("keep");
    } else {
      outcomes.push_back(Json{{"delete", rec.deleted_bits[i]}});
    }
  }
  Json j{{"shot", rec.shot},
         {"q", VectorToJson(rec.q)},
         {"phi", VectorToJson(rec.phi)},
         {"gamma", VectorToJson(rec.gamma)},
         {"outcomes", outcomes},
         {"deletion_mask", rec.deletion_mask()},
         {"all_kept", rec.all_kept}};
  if (rec.all_kept) j["cluster_fidelity"] = rec.cluster_fidelity;
  return j;
}

Json DownloadSummaryToJson(const DownloadSummary& sum) {
  Json masks = Json::object();
  for (const auto& [mask, count] : sum.deletion_mask_counts)
    masks[std::to_string(mask)] = count;
  Json rates = Json::array();
  for (double r : sum.per_qubit_deletion_rate) rates.push_back(r);
  return Json{{"shots", sum.shots},
              {"qubits", sum.qubits},
              {"r0", sum.r0},
              {"sigma2", sum.sigma2},
              {"deletions", sum.deletions},
              {"p_del_emp", sum.p_del_emp},
              {"p_del_stderr", sum.p_del_stderr},
              {"p_del_analytic", sum.p_del_analytic},
              {"all_keep_shots", sum.all_keep_shots},
              {"kept_fidelity_mean", sum.kept_fidelity_mean},
              {"kept_fidelity_min", sum.kept_fidelity_min},
              {"per_qubit_deletion_rate", rates},
              {"deletion_mask_counts", masks}};
}

Json PlanToJson(const DecorrelationPlan& plan) {
  Json network = Json::array();
  for (const GivensRotation& rot : plan.network.rotations)
    network.push_back(Json{{"modes", {rot.i, rot.j}}, {"angle", rot.angle}});
  return Json{
      {"C1", plan.c1},
      {"C2", plan.c2},
      {"B1", plan.b1},
      {"B2", plan.b2},
      {"g_prime", plan.g_prime},
      {"D", VectorToJson(plan.d)},
      {"D_max", plan.d_max},
      {"max_degree", plan.max_degree},
      {"O", MatrixToRowMajor(plan.o)},
      {"r_mode", VectorToJson(plan.r_mode)},
      {"nbar_mode", VectorToJson(plan.nbar_mode)},
      {"effective", {{"r", plan.effective.r},
                     {"r_db", RToDb(plan.effective.r)},
                     {"nbar", plan.effective.nbar}}},
      {"network", network},
      {"network_signs", VectorToJson(plan.network.signs)},
      {"physical", plan.physical},
      {"violated_condition", plan.violated_condition}};
}

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("float formatting failed");
  return std::string(buf, ptr);
}

std::string CsvJoin(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t k = 0; k < fields.size(); ++k) {
    if (k) out += ',';
    out += fields[k];
  }
  return out;
}

std::vector<std::string> SummaryCsvHeader() {
  return {"r_db", "nbar", "shots", "p_del_emp", "p_del_analytic",
          "kept_fidelity_mean"};
}

std::vector<std::string> SummaryCsvRow(double r_db, double nbar,
                                       const DownloadSummary& sum) {
  return {FormatDouble(r_db),          FormatDouble(nbar),
          std::to_string(sum.shots),   FormatDouble(sum.p_del_emp),
          FormatDouble(sum.p_del_analytic), FormatDouble(sum.kept_fidelity_mean)};
}

std::vector<std::string> ThresholdCsvHeader() {
  return {"db", "r0", "p_del", "p_del_mc", "stderr", "n_rails", "p_vertex"};
}

std::vector<std::string> ThresholdCsvRow(const ThresholdRow& row) {
  return {FormatDouble(row.db),       FormatDouble(row.r0),
          FormatDouble(row.p_del),    FormatDouble(row.p_del_mc),
          FormatDouble(row.stderr_mc), std::to_string(row.rails),
          FormatDouble(row.p_vertex)};
}

std::vector<std::string> SweepCsvHeader() {
  return {"eps1", "eps2", "r_prime", "feasible", "g_prime", "r_eff_db", "nbar_eff"};
}

std::vector<std::string> SweepCsvRow(const NoiseParams& noise,
                                     const DecorrelationPlan& plan) {
  return {FormatDouble(noise.eps1),
          FormatDouble(noise.eps2),
          FormatDouble(noise.r_prime),
          plan.physical ? "1" : "0",
          FormatDouble(plan.g_prime),
          FormatDouble(RToDb(plan.effective.r)),
          FormatDouble(plan.effective.nbar)};
}

Json MetadataHeader(std::string_view command, std::uint64_t seed,
                    const Json& config) {
  return Json{{"tool", kToolName},
              {"version", kToolVersion},
              {"command", command},
              {"seed", seed},
              {"config", config}};
}

std::string CsvMetadataLines(const Json& meta) {
  std::ostringstream out;
  out << "# tool=" << meta.at("tool").get<std::string>()
      << " version=" << meta.at("version").get<std::string>()
      << " command=" << meta.at("command").get<std::string>()
      << " seed=" << meta.at("seed").get<std::uint64_t>() << "\n";
  out << "# config=" << meta.at("config").dump() << "\n";
  return out.str();
}

}  // namespace cvdl
