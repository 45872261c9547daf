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

#include <string>
#include <vector>

#include "doctest.h"
#include "pass/driver.hpp"
#include "test_util.hpp"

using namespace pass;

namespace {

struct Bundled {
  Dataset data;
  std::vector<int> truth;
};

Bundled load(const std::string& name) {
  const std::string dir = PASS_DATA_DIR;
  return {load_dataset(dir + "/" + name + ".csv"),
          load_labels(dir + "/" + name + "_labels.txt")};
}

}  // namespace

TEST_CASE("single cluster run") {
  testutil::Rng rng(1);
  const Dataset d = testutil::random_dataset(rng, 30, 2);
  PassConfig cfg;
  cfg.k = 1;
  const PassResult r = run_pass(d, ConstraintSet{}, cfg);
  CHECK(r.iterations == 1);
  CHECK(r.stabilized_at == 1u);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < 30; ++i) {
    mx += d.row(i)[0] / 30.0;
    my += d.row(i)[1] / 30.0;
  }
  CHECK(r.centroids.row(0)[0] == doctest::Approx(mx));
  CHECK(r.centroids.row(0)[1] == doctest::Approx(my));
  const CentroidModel mean(1, 2, {mx, my});
  CHECK(r.sse == doctest::Approx(testutil::brute_sse(d, mean, std::vector<int>(30, 0))));
}

TEST_CASE("certain instance exits immediately") {
  const Dataset d(6, 1, {0, 0, 0, 10, 10, 10});
  PassConfig cfg;
  cfg.k = 2;
  cfg.selector = SelectorKind::ConstraintAware;
  const PassResult r = run_pass(d, ConstraintSet{}, cfg);
  CHECK(r.iterations == 1);
  CHECK(r.stabilized_at == 1u);
  CHECK(r.trace[0].subset_size == 0);
  CHECK(r.sse == 0.0);
}

TEST_CASE("pipeline invariants on random blobs") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    testutil::Rng rng(seed);
    const std::size_t n = 60 + rng() % 100;
    std::normal_distribution<double> noise(0.0, 1.5);
    std::vector<double> v;
    std::vector<int> truth;
    for (std::size_t i = 0; i < n; ++i) {
      const int g = static_cast<int>(i % 3);
      truth.push_back(g);
      v.push_back(6.0 * g + noise(rng));
      v.push_back((g == 1 ? 5.0 : 0.0) + noise(rng));
    }
    const Dataset d(n, 2, v);
    const ConstraintSet cs = sample_constraints(n, truth, n / 6, n / 6, seed);
    for (auto sel : {SelectorKind::ConstraintAware, SelectorKind::InfoGeometric}) {
      for (auto solver : {SolverKind::Exact, SolverKind::LocalSearch}) {
        PassConfig cfg;
        cfg.selector = sel;
        cfg.solver = solver;
        cfg.seed = seed;
        const PassResult r = run_pass(d, cs, cfg);
        CHECK(r.ml_violations == 0);
        CHECK(count_violations(cs, r.labels.labels).ml == 0);
        CHECK(r.iterations <= cfg.max_iters);
        const CentroidModel m = update_centroids_serial(d, r.labels, &r.centroids).model;
        CHECK(testutil::rel_close(r.sse, testutil::brute_sse(d, m, r.labels.labels), 1e-9));
        for (std::size_t t = 0; t < r.trace.size(); ++t) {
          const IterationTrace& tr = r.trace[t];
          CHECK(tr.binaries >= tr.subset_size);
          CHECK(tr.binaries <= tr.subset_size * cfg.k);
          // With a CL-feasible warm start, staying put costs nothing.
          if (t > 0 && r.trace[t - 1].violations == 0) {
            if (solver == SolverKind::Exact) CHECK(tr.objective <= 1e-9);
            if (tr.reseeded == 0) CHECK(tr.sse <= r.trace[t - 1].sse * (1 + 1e-12));
          }
        }
      }
    }
  }
}

TEST_CASE("runs are deterministic") {
  const Bundled b = load("blobs");
  const ConstraintSet cs = sample_constraints(b.data.size(), b.truth, 40, 40, 5);
  PassConfig cfg;
  cfg.seed = 5;
  const PassResult a = run_pass(b.data, cs, cfg);
  const PassResult c = run_pass(b.data, cs, cfg);
  CHECK(a.labels.labels == c.labels.labels);
  CHECK(a.sse == c.sse);
  CHECK(a.iterations == c.iterations);
}

TEST_CASE("bundled datasets stabilize") {
  for (const char* name : {"iris", "blobs"}) {
    const Bundled b = load(name);
    const std::size_t q = b.data.size() / 4;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const ConstraintSet cs = sample_constraints(b.data.size(), b.truth, q, q, seed);
      PassConfig cfg;
      cfg.seed = seed;
      const PassResult r = run_pass(b.data, cs, cfg);
      CHECK(r.stabilized_at.has_value());
      CHECK(r.violations == 0);
    }
  }
}

TEST_CASE("contradictory input") {
  const Dataset d(3, 1, {0, 1, 2});
  CHECK_THROWS_AS(run_pass(d, ConstraintSet({{0, 1}, {1, 2}}, {{0, 2}}), PassConfig{}),
                  InfeasibleError);
  PassConfig cfg;
  cfg.k = 4;
  CHECK_THROWS_AS(run_pass(d, ConstraintSet{}, cfg), InputError);
}

TEST_CASE("config validation") {
  PassConfig c;
  CHECK_NOTHROW(c.validate());
  c.max_iters = 0;
  CHECK_THROWS_AS(c.validate(), InputError);
  c = PassConfig{};
  c.sse_rel_tol = 0.0;
  CHECK_THROWS_AS(c.validate(), InputError);
  c = PassConfig{};
  c.percentile = 100.0;
  CHECK_THROWS_AS(c.validate(), InputError);
  c = PassConfig{};
  c.alpha = 1.5;
  CHECK_THROWS_AS(c.validate(), InputError);
  c = PassConfig{};
  c.candidate_width = 0;
  CHECK_THROWS_AS(c.validate(), InputError);
}

TEST_CASE("post-processing repair") {
  const Dataset d(3, 1, {0, 1, 10});
  const CollapsedInstance inst = collapse(d, ConstraintSet{}).instance;
  const CentroidModel m(3, 1, {0, 10, 20});

  const PostProcessResult clean =
      post_process(inst, m, Assignment{{0, 1, 1}, 3}, ConstraintSet({}, {{0, 1}}));
  CHECK(clean.labels.labels == std::vector<int>{0, 1, 1});
  CHECK(clean.residual == 0);

  // Moving point 1 to cluster 1 is the cheapest repair (80 vs 100).
  const PostProcessResult fixed =
      post_process(inst, m, Assignment{{0, 0, 1}, 3}, ConstraintSet({}, {{0, 1}}));
  CHECK(fixed.labels.labels == std::vector<int>{0, 1, 1});
  CHECK(fixed.residual == 0);

  // A CL clique of k + 1 points: one violation must remain.
  for (std::size_t k = 2; k <= 4; ++k) {
    std::vector<double> v(k + 1);
    for (std::size_t i = 0; i <= k; ++i) v[i] = static_cast<double>(i);
    const Dataset cd(k + 1, 1, v);
    std::vector<Pair> clique;
    for (std::size_t a = 0; a <= k; ++a) {
      for (std::size_t b = a + 1; b <= k; ++b) clique.emplace_back(a, b);
    }
    const ConstraintSet cl({}, clique);
    std::vector<double> cv(k);
    for (std::size_t g = 0; g < k; ++g) cv[g] = static_cast<double>(g);
    const PostProcessResult r =
        post_process(collapse(cd, ConstraintSet{}).instance, CentroidModel(k, 1, cv),
                     Assignment{std::vector<int>(k + 1, 0), static_cast<int>(k)}, cl);
    // Exhaustive minimum over all labelings.
    std::size_t best = clique.size();
    std::vector<int> lab(k + 1, 0);
    while (true) {
      best = std::min(best, count_violations(cl, lab).cl);
      std::size_t i = 0;
      while (i <= k && ++lab[i] == static_cast<int>(k)) lab[i++] = 0;
      if (i > k) break;
    }
    CHECK(best == 1);
    CHECK(r.residual == best);
    CHECK(count_violations(cl, r.labels.labels).cl == r.residual);
  }
}

TEST_CASE("evaluation") {
  const Dataset d(3, 2, {0, 0, 1, 1, 5, 5});
  const ConstraintSet cs({{0, 1}}, {{1, 2}});
  const Evaluation perfect =
      evaluate(Assignment{{0, 1, 2}, 3}, d, cs, CentroidModel(3, 2));
  CHECK(perfect.sse == 0.0);
  CHECK(perfect.ml_violations == 1);
  CHECK(perfect.cl_violations == 0);
  CHECK_FALSE(perfect.ari.has_value());

  const std::vector<int> truth{0, 0, 1};
  const Evaluation scored =
      evaluate(Assignment{{0, 0, 1}, 2}, d, cs, CentroidModel(2, 2), &truth);
  CHECK(*scored.ari == doctest::Approx(1.0));
  CHECK(*scored.purity == doctest::Approx(1.0));
  CHECK(scored.ml_violations == 0);

  testutil::Rng rng(4);
  const Dataset r = testutil::random_dataset(rng, 40, 3, true);
  const Assignment lab{testutil::random_labels(rng, 40, 4), 4};
  const CentroidModel prev = testutil::random_centroids(rng, 4, 3);
  const Evaluation e = evaluate(lab, r, ConstraintSet{}, prev);
  const CentroidModel m = update_centroids_serial(r, lab, &prev).model;
  CHECK(testutil::rel_close(e.sse, testutil::brute_sse(r, m, lab.labels), 1e-9));
}
