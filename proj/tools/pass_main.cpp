// Copyright 2026 The pass-clustering Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: one benchmark cell per invocation, or a scaling
// sweep over synthetic blobs.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "pass/report.hpp"

int main(int argc, char** argv) {
  using namespace pass;
  CLI::App app{"Constrained k-means with iterated subset reassignment"};
  app.set_version_flag("--version", std::string(kVersion));

  RunSpec spec;
  PassConfig& c = spec.config;
  std::string constraints;
  std::string truth;
  std::string out;
  std::string trace;
  std::string qubo;
  std::string solver = "exact";
  std::string report = "json";

  app.add_option("--data", spec.data_path, "CSV of numeric features");
  app.add_flag("--header", spec.header, "Skip the first CSV line");
  app.add_option("--constraints", constraints, "Constraint file (ML/CL i j lines)");
  app.add_option("--sample-ml", spec.sample_ml, "Sample N must-link pairs");
  app.add_option("--sample-cl", spec.sample_cl, "Sample N cannot-link pairs");
  app.add_option("--truth", truth, "Ground-truth labels (one per line)");
  app.add_option("--k", c.k, "Number of clusters");
  app.add_option("--method", spec.method, "pass-ca | pass-ig | cop | qaoa-refine")
      ->check(CLI::IsMember({"pass-ca", "pass-ig", "cop", "qaoa-refine"}));
  app.add_option("--selector-p", c.percentile, "Margin percentile for pass-ca");
  app.add_option("--alpha", c.alpha, "Budget fraction cap for pass-ig");
  app.add_option("--beta", c.beta, "Budget log multiplier for pass-ig");
  app.add_option("--temp", c.temperature, "Softmax temperature (0: automatic)");
  app.add_option("--cand-width", c.candidate_width, "Nearest centroids per point");
  app.add_option("--max-iters", c.max_iters, "Outer iteration cap");
  app.add_option("--sse-tol", c.sse_rel_tol, "Relative SSE change for stabilization");
  app.add_option("--seed", c.seed, "Seed for every random choice");
  app.add_option("--solver", solver, "Restricted solver")
      ->check(CLI::IsMember({"exact", "local"}));
  app.add_option("--time-limit", c.time_limit, "Seconds per restricted solve");
  app.add_option("--cop-restarts", spec.cop_restarts, "COP-k-means restarts");
  app.add_option("--shots", spec.qaoa.shots, "QAOA shots per round");
  app.add_option("--qaoa-rounds", spec.qaoa.rounds, "QAOA refinement rounds");
  app.add_option("--report", report, "json | csv | table")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--out", out, "Report path (default stdout)");
  app.add_option("--trace", trace, "Per-iteration trace CSV path");
  app.add_option("--qubo-out", qubo, "Write the first QAOA round's QUBO");
  app.add_option("--jobs", spec.jobs, "OpenMP threads (0: default)");

  auto* sweep = app.add_subcommand("sweep", "Runtime scaling over blob sizes");
  SweepOptions so;
  std::string sweep_out;
  sweep->add_option("--sizes", so.sizes, "Dataset sizes")->required();
  sweep->add_option("--k", so.k, "Number of blobs and clusters");
  sweep->add_option("--dim", so.d, "Feature dimension");
  sweep->add_option("--repeats", so.repeats, "Timed runs per size (median kept)");
  sweep->add_option("--seed", so.config.seed, "Seed");
  sweep->add_option("--out", sweep_out, "Report path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep) {
      so.config.k = so.k;
      const std::string text = format_sweep_json(scaling_sweep(so));
      if (sweep_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream f(sweep_out, std::ios::binary);
        if (!f) throw InputError("cannot write report to " + sweep_out);
        f << text;
      }
      return kExitOk;
    }

    if (!constraints.empty()) spec.constraints_path = constraints;
    if (!truth.empty()) spec.truth_path = truth;
    if (!out.empty()) spec.out_path = out;
    if (!trace.empty()) spec.trace_path = trace;
    if (!qubo.empty()) spec.qubo_path = qubo;
    c.solver = solver == "exact" ? SolverKind::Exact : SolverKind::LocalSearch;
    static const std::map<std::string, ReportFormat> formats{
        {"json", ReportFormat::Json},
        {"csv", ReportFormat::Csv},
        {"table", ReportFormat::Table}};
    spec.report = formats.at(report);

    const RunOutcome result = run_benchmark(spec);
    write_outputs(spec, result);
    if (result.exit_code != kExitOk) {
      std::fprintf(stderr, "pass: %s: %s\n", result.status.c_str(),
                   result.message.c_str());
    }
    return result.exit_code;
  } catch (const InfeasibleError& e) {
    std::fprintf(stderr, "pass: infeasible: %s\n", e.what());
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "pass: error: %s\n", e.what());
    return kExitIo;
  }
}
