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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cvdl/error_model.h"
#include "cvdl/graph.h"
#include "cvdl/io.h"
#include "cvdl/planner.h"
#include "cvdl/protocol.h"
#include "cvdl/verify.h"

namespace {

using cvdl::Json;

// Resolved run configuration. Populated from defaults, then the JSON config
// file, then command-line flags.
struct RunConfig {
  std::uint64_t seed = 20240611;
  std::int64_t shots = 10000;
  std::string graph = "path:3";
  double r_db = cvdl::RToDb(1.0);
  double nbar = 0.0;
  std::vector<double> eps1{0.0};
  std::vector<double> eps2{0.0};
  std::vector<double> r_prime{1.0};
  int rails = 1;
  std::string out;
  std::string format;
  double db_min = 0.0;
  double db_max = 20.0;
  double db_step = 1.0;
  std::vector<double> targets{0.249, 0.5};
  std::int64_t mc_shots = 0;
  std::string records;
  int cases = 50;
  double inject_fault = 0.0;

  Json ToJson() const {
    return Json{{"seed", seed},       {"shots", shots},       {"graph", graph},
                {"r_db", r_db},       {"nbar", nbar},         {"eps1", eps1},
                {"eps2", eps2},       {"r_prime", r_prime},   {"rails", rails},
                {"out", out},         {"format", format},     {"db_min", db_min},
                {"db_max", db_max},   {"db_step", db_step},   {"targets", targets},
                {"mc_shots", mc_shots}, {"records", records}, {"cases", cases},
                {"inject_fault", inject_fault}};
  }
};

std::vector<double> NumberList(const Json& j) {
  if (j.is_array()) return j.get<std::vector<double>>();
  return {j.get<double>()};
}

void MergeConfigFile(const std::string& path, RunConfig& c) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw std::runtime_error("config file '" + path + "': " + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("config file must hold a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "seed") c.seed = v.get<std::uint64_t>();
    else if (key == "shots") c.shots = v.get<std::int64_t>();
    else if (key == "graph") c.graph = v.is_string() ? v.get<std::string>() : v.dump();
    else if (key == "r_db") c.r_db = v.get<double>();
    else if (key == "nbar") c.nbar = v.get<double>();
    else if (key == "eps1") c.eps1 = NumberList(v);
    else if (key == "eps2") c.eps2 = NumberList(v);
    else if (key == "r_prime") c.r_prime = NumberList(v);
    else if (key == "rails") c.rails = v.get<int>();
    else if (key == "out") c.out = v.get<std::string>();
    else if (key == "format") c.format = v.get<std::string>();
    else if (key == "db_min") c.db_min = v.get<double>();
    else if (key == "db_max") c.db_max = v.get<double>();
    else if (key == "db_step") c.db_step = v.get<double>();
    else if (key == "targets") c.targets = NumberList(v);
    else if (key == "mc_shots") c.mc_shots = v.get<std::int64_t>();
    else if (key == "records") c.records = v.get<std::string>();
    else if (key == "cases") c.cases = v.get<int>();
    else if (key == "inject_fault") c.inject_fault = v.get<double>();
    else throw std::runtime_error("unknown config key '" + key + "'");
  }
}

// Flag values; only options that were given on the command line override.
struct Flags {
  std::string config;
  std::uint64_t seed = 0;
  std::int64_t shots = 0;
  std::string graph;
  double r_db = 0, nbar = 0;
  std::vector<double> eps1, eps2, r_prime, targets;
  int rails = 0;
  std::string out, format, records;
  double db_min = 0, db_max = 0, db_step = 0;
  std::int64_t mc_shots = 0;
  int cases = 0;
  double inject_fault = 0;
  std::vector<CLI::Option*> options;
};

void AddFlags(CLI::App* cmd, Flags& f) {
  auto add = [&](CLI::Option* o) { f.options.push_back(o); };
  add(cmd->add_option("--config", f.config, "JSON config file"));
  add(cmd->add_option("--seed", f.seed, "Master RNG seed"));
  add(cmd->add_option("--shots", f.shots, "Monte Carlo shots")->check(CLI::PositiveNumber));
  add(cmd->add_option("--graph", f.graph, "Graph spec (path:4, grid2d:2x3, ...) or JSON file"));
  add(cmd->add_option("--r-db", f.r_db, "Source squeezing in dB"));
  add(cmd->add_option("--nbar", f.nbar, "Source thermal occupation"));
  add(cmd->add_option("--eps1", f.eps1, "Loss (comma-separated list for sweep)")->delimiter(','));
  add(cmd->add_option("--eps2", f.eps2, "Detector inefficiency")->delimiter(','));
  add(cmd->add_option("--r-prime", f.r_prime, "Principal-mode squeezing")->delimiter(','));
  add(cmd->add_option("--rails", f.rails, "Qumodes per vertex")->check(CLI::PositiveNumber));
  add(cmd->add_option("--out", f.out, "Output path (default stdout)"));
  add(cmd->add_option("--format", f.format, "json or csv")
          ->check(CLI::IsMember({"json", "csv"})));
  add(cmd->add_option("--db-min", f.db_min, "Threshold table start (dB)"));
  add(cmd->add_option("--db-max", f.db_max, "Threshold table end (dB)"));
  add(cmd->add_option("--db-step", f.db_step, "Threshold table step (dB)"));
  add(cmd->add_option("--targets", f.targets, "Target erasure probabilities")->delimiter(','));
  add(cmd->add_option("--mc-shots", f.mc_shots, "Monte Carlo shots per threshold row"));
  add(cmd->add_option("--records", f.records, "JSON-lines file for per-shot records"));
  add(cmd->add_option("--cases", f.cases, "Random cases per verify battery")
          ->check(CLI::PositiveNumber));
  add(cmd->add_option("--inject-fault", f.inject_fault,
                      "Relative perturbation of g' in planner verification"));
}

RunConfig Resolve(const Flags& f) {
  RunConfig c;
  const auto given = [&](const char* name) {
    for (const CLI::Option* o : f.options)
      if (o->get_name() == name) return o->count() > 0;
    return false;
  };
  if (given("--config")) MergeConfigFile(f.config, c);
  if (given("--seed")) c.seed = f.seed;
  if (given("--shots")) c.shots = f.shots;
  if (given("--graph")) c.graph = f.graph;
  if (given("--r-db")) c.r_db = f.r_db;
  if (given("--nbar")) c.nbar = f.nbar;
  if (given("--eps1")) c.eps1 = f.eps1;
  if (given("--eps2")) c.eps2 = f.eps2;
  if (given("--r-prime")) c.r_prime = f.r_prime;
  if (given("--rails")) c.rails = f.rails;
  if (given("--out")) c.out = f.out;
  if (given("--format")) c.format = f.format;
  if (given("--db-min")) c.db_min = f.db_min;
  if (given("--db-max")) c.db_max = f.db_max;
  if (given("--db-step")) c.db_step = f.db_step;
  if (given("--targets")) c.targets = f.targets;
  if (given("--mc-shots")) c.mc_shots = f.mc_shots;
  if (given("--records")) c.records = f.records;
  if (given("--cases")) c.cases = f.cases;
  if (given("--inject-fault")) c.inject_fault = f.inject_fault;
  return c;
}

cvdl::Graph LoadGraph(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return cvdl::GraphFromJson(Json::parse(spec));
  return cvdl::ParseGraphSpec(spec);
}

double Single(const std::vector<double>& v, const char* name) {
  if (v.size() != 1) {
    throw std::invalid_argument(std::string(name) + " takes a single value here");
  }
  return v.front();
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open output '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int CmdVerify(const RunConfig& c) {
  cvdl::VerifyConfig vc;
  vc.seed = c.seed;
  vc.cases = c.cases;
  vc.planner_fault = c.inject_fault;
  const auto results = cvdl::RunVerify(vc);
  const bool ok = cvdl::AllPassed(results);
  const Json meta = cvdl::MetadataHeader("verify", c.seed, c.ToJson());
  Output out(c.out);
  if (c.format == "csv") {
    out.stream() << cvdl::CsvMetadataLines(meta)
                 << cvdl::CsvJoin({"check", "passed", "residual", "tolerance"}) << "\n";
    for (const auto& r : results) {
      out.stream() << cvdl::CsvJoin({r.name, r.passed ? "1" : "0",
                                     cvdl::FormatDouble(r.residual),
                                     cvdl::FormatDouble(r.tolerance)})
                   << "\n";
    }
  } else {
    Json checks = Json::array();
    for (const auto& r : results) {
      checks.push_back({{"name", r.name},
                        {"passed", r.passed},
                        {"residual", r.residual},
                        {"tolerance", r.tolerance},
                        {"detail", r.detail}});
    }
    out.stream() << Json{{"metadata", meta}, {"passed", ok}, {"checks", checks}}.dump(2)
                 << "\n";
  }
  for (const auto& r : results) {
    if (!r.passed) std::cerr << "FAILED " << r.name << ": residual " << r.residual
                             << " >= " << r.tolerance << "\n";
  }
  return ok ? 0 : 1;
}

int CmdDownload(const RunConfig& c) {
  cvdl::ProtocolParams p{LoadGraph(c.graph), {cvdl::DbToR(c.r_db), c.nbar}, 1.0, c.seed};
  const bool want_records = !c.records.empty();
  const cvdl::DownloadRun run = cvdl::RunDownload(p, c.shots, want_records);
  const Json meta = cvdl::MetadataHeader("download", c.seed, c.ToJson());
  if (want_records) {
    Output rec(c.records);
    rec.stream() << Json{{"metadata", meta}}.dump() << "\n";
    for (const auto& r : run.records)
      rec.stream() << cvdl::DownloadRecordToJson(r).dump() << "\n";
  }
  Output out(c.out);
  if (c.format == "json") {
    out.stream() << Json{{"metadata", meta},
                         {"graph", cvdl::GraphToJson(p.graph)},
                         {"summary", cvdl::DownloadSummaryToJson(run.summary)}}
                        .dump(2)
                 << "\n";
  } else {
    out.stream() << cvdl::CsvMetadataLines(meta)
                 << cvdl::CsvJoin(cvdl::SummaryCsvHeader()) << "\n"
                 << cvdl::CsvJoin(cvdl::SummaryCsvRow(c.r_db, c.nbar, run.summary))
                 << "\n";
  }
  return 0;
}

int CmdThresholds(const RunConfig& c) {
  if (!(c.db_step > 0.0) || c.db_max < c.db_min) {
    throw std::invalid_argument("threshold dB range is empty");
  }
  const auto table =
      cvdl::ThresholdTable(c.db_min, c.db_max, c.db_step, c.rails, c.mc_shots, c.seed);
  const auto inverse = cvdl::InverseThresholdRows(c.targets, c.rails, c.mc_shots, c.seed);
  const Json meta = cvdl::MetadataHeader("thresholds", c.seed, c.ToJson());
  Output out(c.out);
  if (c.format == "json") {
    auto rows = [](const std::vector<cvdl::ThresholdRow>& v) {
      Json a = Json::array();
      for (const auto& r : v) {
        a.push_back({{"db", r.db},
                     {"r0", r.r0},
                     {"p_del", r.p_del},
                     {"p_del_mc", r.p_del_mc},
                     {"stderr", r.stderr_mc},
                     {"n_rails", r.rails},
                     {"p_vertex", r.p_vertex}});
      }
      return a;
    };
    out.stream() << Json{{"metadata", meta}, {"table", rows(table)}, {"inverse", rows(inverse)}}
                        .dump(2)
                 << "\n";
  } else {
    out.stream() << cvdl::CsvMetadataLines(meta)
                 << cvdl::CsvJoin(cvdl::ThresholdCsvHeader()) << "\n";
    for (const auto& r : table) out.stream() << cvdl::CsvJoin(cvdl::ThresholdCsvRow(r)) << "\n";
    out.stream() << "# inverse rows for targets\n";
    for (const auto& r : inverse)
      out.stream() << cvdl::CsvJoin(cvdl::ThresholdCsvRow(r)) << "\n";
  }
  return 0;
}

Json LinearizedJson(const cvdl::LinearizedPlan& l) {
  return Json{{"e2r", l.e2r}, {"nbar", l.nbar}, {"g_prime", l.g_prime}};
}

int CmdPlan(const RunConfig& c) {
  const cvdl::Graph g = LoadGraph(c.graph);
  const cvdl::NoiseParams noise{Single(c.eps1, "eps1"), Single(c.eps2, "eps2"),
                                Single(c.r_prime, "r_prime")};
  const cvdl::DecorrelationPlan plan = cvdl::Plan(g, noise);
  const Json meta = cvdl::MetadataHeader("plan", c.seed, c.ToJson());
  Output out(c.out);
  if (c.format == "csv") {
    out.stream() << cvdl::CsvMetadataLines(meta) << cvdl::CsvJoin(cvdl::SweepCsvHeader())
                 << "\n"
                 << cvdl::CsvJoin(cvdl::SweepCsvRow(noise, plan)) << "\n";
    return 0;
  }
  Json j{{"metadata", meta}, {"graph", cvdl::GraphToJson(g)}, {"plan", cvdl::PlanToJson(plan)}};
  j["linearized_spectral"] =
      LinearizedJson(cvdl::Linearize(g, noise, cvdl::LinearizationForm::kSpectral));
  j["linearized_degree"] =
      LinearizedJson(cvdl::Linearize(g, noise, cvdl::LinearizationForm::kDegree));
  if (plan.physical) j["forward_residual"] = cvdl::VerifyPlan(plan, g, noise);
  out.stream() << j.dump(2) << "\n";
  return 0;
}

int CmdSweep(const RunConfig& c) {
  const cvdl::Graph g = LoadGraph(c.graph);
  const Json meta = cvdl::MetadataHeader("sweep", c.seed, c.ToJson());
  std::vector<std::pair<cvdl::NoiseParams, cvdl::DecorrelationPlan>> rows;
  for (double e1 : c.eps1) {
    for (double e2 : c.eps2) {
      for (double rp : c.r_prime) {
        const cvdl::NoiseParams noise{e1, e2, rp};
        try {
          rows.emplace_back(noise, cvdl::Plan(g, noise));
        } catch (const std::exception& e) {
          std::ostringstream msg;
          msg << "sweep point eps1=" << e1 << " eps2=" << e2 << " r_prime=" << rp
              << ": " << e.what();
          throw std::runtime_error(msg.str());
        }
      }
    }
  }
  Output out(c.out);
  if (c.format == "json") {
    Json a = Json::array();
    for (const auto& [n, p] : rows) {
      a.push_back({{"eps1", n.eps1},
                   {"eps2", n.eps2},
                   {"r_prime", n.r_prime},
                   {"feasible", p.physical},
                   {"g_prime", p.g_prime},
                   {"r_eff_db", cvdl::RToDb(p.effective.r)},
                   {"nbar_eff", p.effective.nbar},
                   {"violated_condition", p.violated_condition}});
    }
    out.stream() << Json{{"metadata", meta}, {"rows", a}}.dump(2) << "\n";
  } else {
    out.stream() << cvdl::CsvMetadataLines(meta) << cvdl::CsvJoin(cvdl::SweepCsvHeader())
                 << "\n";
    for (const auto& [n, p] : rows) out.stream() << cvdl::CsvJoin(cvdl::SweepCsvRow(n, p)) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Qubit entanglement download from CV cluster states"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cvdl::kToolVersion));

  struct Command {
    CLI::App* app;
    Flags flags;
    int (*run)(const RunConfig&);
    const char* default_format;
  };
  std::vector<std::unique_ptr<Command>> commands;
  auto add = [&](const char* name, const char* help, int (*run)(const RunConfig&),
                 const char* fmt) {
    auto cmd = std::make_unique<Command>();
    cmd->app = app.add_subcommand(name, help);
    cmd->run = run;
    cmd->default_format = fmt;
    AddFlags(cmd->app, cmd->flags);
    commands.push_back(std::move(cmd));
  };
  add("verify", "Run the cross-module verification batteries", CmdVerify, "json");
  add("download", "Simulate entanglement download shots", CmdDownload, "csv");
  add("thresholds", "Erasure-threshold table and inverse rows", CmdThresholds, "csv");
  add("plan", "Hardware decorrelation plan for a graph", CmdPlan, "json");
  add("sweep", "Planner sweep over eps1 x eps2 x r_prime", CmdSweep, "csv");

  CLI11_PARSE(app, argc, argv);

  for (const auto& cmd : commands) {
    if (!cmd->app->parsed()) continue;
    try {
      RunConfig c = Resolve(cmd->flags);
      if (c.format.empty()) c.format = cmd->default_format;
      if (c.format != "json" && c.format != "csv") {
        throw std::invalid_argument("format must be json or csv");
      }
      return cmd->run(c);
    } catch (const std::exception& e) {
      std::cerr << "cvdl " << cmd->app->get_name() << ": error: " << e.what() << "\n";
      return 2;
    }
  }
  return 2;
}
