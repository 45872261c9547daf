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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pass/driver.hpp"
#include "pass/qrefine.hpp"

namespace pass {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitNoSolution = 3;
inline constexpr int kExitIo = 4;

inline constexpr const char* kVersion = "1.0.0";

enum class ReportFormat { Json, Csv, Table };

struct RunSpec {
  std::string data_path;
  bool header = false;
  std::optional<std::string> constraints_path;
  std::size_t sample_ml = 0;
  std::size_t sample_cl = 0;
  std::optional<std::string> truth_path;
  std::string method = "pass-ig";  // pass-ca | pass-ig | cop | qaoa-refine
  PassConfig config;
  std::size_t cop_restarts = 100;
  QaoaRefineOptions qaoa;
  ReportFormat report = ReportFormat::Json;
  std::optional<std::string> out_path;
  std::optional<std::string> trace_path;
  std::optional<std::string> qubo_path;  // qaoa-refine only
  std::size_t jobs = 0;  // 0 keeps the OpenMP default

  bool sampled() const { return sample_ml + sample_cl > 0; }
  /// ML, CL, Both, file or none.
  std::string scenario() const;
  void validate() const;
};

struct RunOutcome {
  std::string dataset;
  std::string status = "ok";  // ok | infeasible | no solution found
  std::string message;
  int exit_code = kExitOk;
  std::optional<double> sse;
  std::optional<std::size_t> ml_violations;
  std::optional<std::size_t> cl_violations;
  std::optional<std::size_t> iterations;
  std::optional<std::size_t> stabilized_at;
  std::size_t max_binaries = 0;
  double wall_time = 0.0;
  PhaseTimes phase_times;
  std::optional<double> ari;
  std::optional<double> ami;
  std::optional<double> purity;
  std::vector<IterationTrace> trace;
  std::vector<QaoaRefineRound> qaoa_rounds;
  std::vector<int> labels;
  std::string qubo;
};

/// Loads the inputs named by the spec and runs the method. Infeasible input
/// and a failed COP search become outcomes with their exit codes; I/O and
/// parse errors propagate as InputError.
RunOutcome run_benchmark(const RunSpec& spec);

/// Report renderings. Every format carries the same field set for every
/// method; missing values are null (JSON) or empty (CSV, table).
std::string format_json(const RunSpec& spec, const RunOutcome& out);
std::string csv_header();
std::string format_csv_row(const RunSpec& spec, const RunOutcome& out);
std::string format_table(const RunSpec& spec, const RunOutcome& out);
std::string format_trace_csv(const RunOutcome& out);

/// Writes the report (to out_path or stdout) and the trace file if asked.
void write_outputs(const RunSpec& spec, const RunOutcome& out);

/// Isotropic Gaussian blobs with centres drawn uniformly in [-10, 10]^d.
std::pair<Dataset, std::vector<int>> make_blobs(std::size_t n, std::size_t k,
                                                std::size_t d, double sigma,
                                                std::uint64_t seed);

struct SweepOptions {
  std::vector<std::size_t> sizes;
  std::size_t k = 3;
  std::size_t d = 2;
  double sigma = 1.0;
  double ml_fraction = 0.125;  // of n, truth-consistent
  double cl_fraction = 0.125;
  std::size_t repeats = 3;
  PassConfig config;
};

struct SweepReport {
  std::vector<std::size_t> sizes;
  std::vector<double> runtimes;  // median over repeats
  std::vector<std::size_t> max_binaries;
  std::vector<std::size_t> iterations;
  std::optional<double> slope;  // undefined for fewer than two sizes
  std::optional<double> r2;
};

SweepReport scaling_sweep(const SweepOptions& opts);
std::string format_sweep_json(const SweepReport& rep);

/// Least-squares slope and R^2 of log(y) on log(x).
std::pair<double, double> loglog_fit(const std::vector<double>& x,
                                     const std::vector<double>& y);

}  // namespace pass
