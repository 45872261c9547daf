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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "doctest.h"
#include "pass/report.hpp"

using namespace pass;

namespace {

const std::string kData = PASS_DATA_DIR;

RunSpec iris_spec(const std::string& method) {
  RunSpec s;
  s.data_path = kData + "/iris.csv";
  s.truth_path = kData + "/iris_labels.txt";
  s.sample_ml = 37;
  s.method = method;
  s.config.k = 3;
  s.config.seed = 1;
  return s;
}

std::size_t count_char(const std::string& s, char c) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), c));
}

}  // namespace

TEST_CASE("run spec validation") {
  RunSpec s = iris_spec("pass-ig");
  CHECK_NOTHROW(s.validate());
  CHECK(s.scenario() == "ML");
  s.sample_cl = 37;
  CHECK(s.scenario() == "Both");
  s.constraints_path = "x.txt";
  CHECK_THROWS_AS(s.validate(), InputError);
  s = iris_spec("kmeans");
  CHECK_THROWS_AS(s.validate(), InputError);
}

TEST_CASE("every method yields the same row shape") {
  const std::size_t columns = count_char(csv_header(), ',');
  for (const char* m : {"pass-ca", "pass-ig", "cop", "qaoa-refine"}) {
    RunSpec s = iris_spec(m);
    s.qaoa.rounds = 1;
    s.qaoa.shots = 64;
    const RunOutcome out = run_benchmark(s);
    CHECK(out.exit_code == kExitOk);
    CHECK(out.status == "ok");
    REQUIRE(out.ml_violations.has_value());
    CHECK(*out.ml_violations == 0);
    CHECK(out.sse.has_value());
    CHECK(out.ari.has_value());
    CHECK(count_char(format_csv_row(s, out), ',') == columns);
    CHECK(format_json(s, out).find("\"phase_times\"") != std::string::npos);
    CHECK(count_char(format_table(s, out), '\n') == columns + 1);
  }
}

TEST_CASE("report JSON is stable apart from timings") {
  const RunSpec s = iris_spec("pass-ig");
  RunOutcome a = run_benchmark(s);
  RunOutcome b = run_benchmark(s);
  a.wall_time = b.wall_time = 0.0;
  a.phase_times = b.phase_times = PhaseTimes{};
  CHECK(format_json(s, a) == format_json(s, b));
  CHECK(format_trace_csv(a) == format_trace_csv(b));
}

TEST_CASE("COP on a cannot-link clique") {
  const std::string cpath = std::string(PASS_TMP) + "/clique.txt";
  {
    std::ofstream f(cpath);
    f << "CL 0 1\nCL 0 2\nCL 1 2\nCL 0 3\nCL 1 3\nCL 2 3\n";
  }
  RunSpec s;
  s.data_path = kData + "/iris.csv";
  s.constraints_path = cpath;
  s.method = "cop";
  s.config.k = 3;
  const RunOutcome out = run_benchmark(s);
  CHECK(out.status == "no solution found");
  CHECK(out.exit_code == kExitNoSolution);
  CHECK_FALSE(out.sse.has_value());
  CHECK(format_json(s, out).find("\"no solution found\"") != std::string::npos);

  // PASS on the same clique finishes with a counted residual.
  s.method = "pass-ig";
  const RunOutcome p = run_benchmark(s);
  CHECK(p.exit_code == kExitOk);
  CHECK(*p.cl_violations == 1);
}

TEST_CASE("infeasible constraints and bad input") {
  const std::string cpath = std::string(PASS_TMP) + "/contra.txt";
  {
    std::ofstream f(cpath);
    f << "ML 0 1\nML 1 2\nCL 0 2\n";
  }
  RunSpec s;
  s.data_path = kData + "/iris.csv";
  s.constraints_path = cpath;
  const RunOutcome out = run_benchmark(s);
  CHECK(out.status == "infeasible");
  CHECK(out.exit_code == kExitInfeasible);

  s.data_path = kData + "/missing.csv";
  CHECK_THROWS_AS(run_benchmark(s), InputError);
}

TEST_CASE("log-log fit") {
  const auto [slope, r2] = loglog_fit({1e3, 4e3, 16e3}, {2.0, 8.0, 32.0});
  CHECK(slope == doctest::Approx(1.0));
  CHECK(r2 == doctest::Approx(1.0));
  const auto [s2, r22] = loglog_fit({1.0, 10.0}, {5.0, 500.0});
  CHECK(s2 == doctest::Approx(2.0));
  CHECK(r22 == doctest::Approx(1.0));
  CHECK_THROWS_AS(loglog_fit({1.0}, {1.0}), InputError);
}

TEST_CASE("scaling sweep") {
  SweepOptions o;
  o.sizes = {300};
  o.repeats = 1;
  const SweepReport one = scaling_sweep(o);
  CHECK_FALSE(one.slope.has_value());
  CHECK(format_sweep_json(one).find("\"slope\": null") != std::string::npos);

  o.sizes = {200, 400, 800};
  const SweepReport rep = scaling_sweep(o);
  REQUIRE(rep.slope.has_value());
  CHECK(rep.runtimes.size() == 3);
  CHECK(std::isfinite(*rep.slope));
}

TEST_CASE("blob generator") {
  const auto [a, la] = make_blobs(90, 3, 2, 1.0, 4);
  const auto [b, lb] = make_blobs(90, 3, 2, 1.0, 4);
  CHECK(a.values() == b.values());
  CHECK(la == lb);
  CHECK(std::count(la.begin(), la.end(), 2) == 30);
}
