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
#include <set>
#include <string>

#include "doctest.h"
#include "pass/data_model.hpp"

using namespace pass;

namespace {

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("csv parse") {
  const Dataset d = parse_dataset("0,0\n1,0\n0,1");
  CHECK(d.size() == 3);
  CHECK(d.dim() == 2);
  CHECK(d.weights() == std::vector<double>{1, 1, 1});
  CHECK(d.row(1)[0] == 1.0);

  const Dataset h = parse_dataset("x,y\n1.5,2\n", CsvOptions{true});
  CHECK(h.size() == 1);
  CHECK(h.row(0)[0] == 1.5);

  // Trailing blank lines and CRLF are tolerated.
  CHECK(parse_dataset("1,2\r\n3,4\r\n\n").size() == 2);
}

TEST_CASE("csv errors") {
  CHECK(error_of([] { parse_dataset(""); }) == "empty dataset");
  CHECK(error_of([] { parse_dataset("x,y\n", CsvOptions{true}); }) == "empty dataset");
  const std::string ragged = error_of([] { parse_dataset("1,2\n3\n4,5"); });
  CHECK(ragged.find("row 2") != std::string::npos);
  const std::string bad = error_of([] { parse_dataset("1,2\n3,abc\n"); });
  CHECK(bad.find("row 2") != std::string::npos);
  CHECK(bad.find("column 2") != std::string::npos);
  CHECK_THROWS_AS(load_dataset("/nonexistent/file.csv"), InputError);
}

TEST_CASE("dataset validation") {
  CHECK_THROWS_AS(Dataset(0, 2, {}), InputError);
  CHECK_THROWS_AS(Dataset(1, 2, {1.0}), InputError);
  CHECK_THROWS_AS(Dataset(2, 1, {1.0, 2.0}, {1.0, 0.0}), InputError);
  CHECK_THROWS_AS(Dataset(2, 1, {1.0, 2.0}, {1.0}), InputError);
}

TEST_CASE("bundled iris loads") {
  const Dataset d = load_dataset(std::string(PASS_DATA_DIR) + "/iris.csv");
  CHECK(d.size() == 150);
  CHECK(d.dim() == 4);
  const auto labels = load_labels(std::string(PASS_DATA_DIR) + "/iris_labels.txt");
  CHECK(labels.size() == 150);
  CHECK(std::set<int>(labels.begin(), labels.end()).size() == 3);
}

TEST_CASE("constraint parsing") {
  const ConstraintSet cs = parse_constraints("ML 0 1\nCL 1 2");
  CHECK(cs.ml() == std::vector<Pair>{{0, 1}});
  CHECK(cs.cl() == std::vector<Pair>{{1, 2}});

  CHECK(parse_constraints("ML 0 1\nML 1 0").ml() == std::vector<Pair>{{0, 1}});
  CHECK(parse_constraints("# comment\n\nCL 3 1\n").cl() == std::vector<Pair>{{1, 3}});

  CHECK(error_of([] { parse_constraints("ML 2 2"); }).find("self-pair") !=
        std::string::npos);
  CHECK(error_of([] { parse_constraints("XX 0 1"); }).find("unknown tag") !=
        std::string::npos);
  CHECK_THROWS_AS(parse_constraints("ML 0"), InputError);
  CHECK_THROWS_AS(parse_constraints("ML 0 1\nCL 1 0"), InputError);
  CHECK_THROWS_AS(parse_constraints("CL 0 9").validate(5), InputError);
  CHECK_NOTHROW(parse_constraints("CL 0 4").validate(5));
}

TEST_CASE("constraint round trip") {
  const ConstraintSet cs({{4, 1}, {0, 2}}, {{3, 0}});
  CHECK(parse_constraints(format_constraints(cs)) == cs);
}

TEST_CASE("sample_constraints with truth") {
  const std::vector<int> truth{0, 0, 1};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ConstraintSet cs = sample_constraints(3, truth, 1, 1, seed);
    CHECK(cs.ml() == std::vector<Pair>{{0, 1}});
    REQUIRE(cs.cl().size() == 1);
    CHECK((cs.cl()[0] == Pair{0, 2} || cs.cl()[0] == Pair{1, 2}));
  }
  CHECK(sample_constraints(3, truth, 1, 1, 7) == sample_constraints(3, truth, 1, 1, 7));
}

TEST_CASE("sample_constraints on iris quotas") {
  const auto truth = load_labels(std::string(PASS_DATA_DIR) + "/iris_labels.txt");
  const ConstraintSet cs = sample_constraints(150, truth, 37, 37, 3);
  std::set<Pair> all(cs.ml().begin(), cs.ml().end());
  all.insert(cs.cl().begin(), cs.cl().end());
  CHECK(all.size() == 74);
  for (const auto& [a, b] : cs.ml()) CHECK(truth[a] == truth[b]);
  for (const auto& [a, b] : cs.cl()) CHECK(truth[a] != truth[b]);
}

TEST_CASE("sample_constraints on large n without truth") {
  const ConstraintSet cs = sample_constraints(10000, std::nullopt, 500, 500, 1);
  CHECK(cs.ml().size() == 500);
  CHECK(cs.cl().size() == 500);
  CHECK_NOTHROW(cs.validate(10000));
}

TEST_CASE("sample_constraints unsatisfiable") {
  const std::vector<int> same{1, 1, 1, 1};
  CHECK_THROWS_AS(sample_constraints(4, same, 0, 1, 0), InputError);
  CHECK_THROWS_AS(sample_constraints(3, std::nullopt, 2, 2, 0), InputError);
}

TEST_CASE("violation count and assignment validation") {
  const ConstraintSet cs({{0, 1}}, {{1, 2}, {0, 3}});
  const std::vector<int> labels{0, 1, 1, 0};
  const auto v = count_violations(cs, labels);
  CHECK(v.ml == 1);
  CHECK(v.cl == 2);
  CHECK(v.total() == 3);

  CHECK_NOTHROW((Assignment{{0, 1, 2}, 3}).validate());
  CHECK_THROWS_AS((Assignment{{0, 3}, 3}).validate(), InputError);
  CHECK_THROWS_AS((Assignment{{0}, 0}).validate(), InputError);
}
