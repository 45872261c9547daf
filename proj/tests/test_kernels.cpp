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

#include <omp.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "pass/kernels.hpp"
#include "test_util.hpp"

using namespace pass;

TEST_CASE("assign_nearest breaks ties to the lowest index") {
  const Dataset d(1, 1, {0.0});
  const CentroidModel m(3, 1, {-1.0, 5.0, 1.0});
  std::vector<int> lab(1);
  std::vector<double> dist(1);
  const double sse = kernels::assign_nearest(d, m, lab, dist);
  CHECK(lab[0] == 0);
  CHECK(dist[0] == 1.0);
  CHECK(sse == 1.0);
}

TEST_CASE("parallel kernels match the serial references") {
  testutil::Rng rng(7);
  for (std::size_t n : {1ul, 37ul, 5000ul, 20011ul}) {
    const Dataset d = testutil::random_dataset(rng, n, 3, true);
    const CentroidModel m = testutil::random_centroids(rng, 4, 3);
    std::vector<int> l1(n), l2(n);
    std::vector<double> d1(n), d2(n);
    const double s1 = kernels::assign_nearest(d, m, l1, d1);
    const double s2 = kernels::serial::assign_nearest(d, m, l2, d2);
    CHECK(l1 == l2);
    CHECK(d1 == d2);
    // Block-ordered parallel sums vs straight serial sums.
    CHECK(testutil::rel_close(s1, s2, 1e-12));
    CHECK(testutil::rel_close(s1, testutil::brute_sse(d, m, l1), 1e-9));

    const auto lab = testutil::random_labels(rng, n, 4);
    CHECK(testutil::rel_close(kernels::weighted_sse(d, m, lab),
                              kernels::serial::weighted_sse(d, m, lab), 1e-12));

    std::vector<double> m1(n), m2(n);
    kernels::signed_margins(d, m, lab, m1);
    kernels::serial::signed_margins(d, m, lab, m2);
    CHECK(m1 == m2);

    std::vector<double> p1(n * 4), p2(n * 4);
    kernels::soft_assignments(d, m, 2.5, p1);
    kernels::serial::soft_assignments(d, m, 2.5, p2);
    CHECK(p1 == p2);

    std::vector<double> j1(n), j2(n);
    kernels::fisher_rao_scores(d, m, 2.5, j1);
    kernels::serial::fisher_rao_scores(d, m, 2.5, j2);
    CHECK(j1 == j2);
  }
}

TEST_CASE("reductions do not depend on the thread count") {
  testutil::Rng rng(11);
  const Dataset d = testutil::random_dataset(rng, 30000, 2, true);
  const CentroidModel m = testutil::random_centroids(rng, 5, 2);
  const auto lab = testutil::random_labels(rng, 30000, 5);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const double one = kernels::weighted_sse(d, m, lab);
  omp_set_num_threads(4);
  const double four = kernels::weighted_sse(d, m, lab);
  omp_set_num_threads(saved);
  CHECK(one == four);
}

TEST_CASE("softmax closed form") {
  const double T = 1.7;
  // Distances 0 and T ln 3 along one axis.
  const Dataset d(1, 1, {0.0});
  const CentroidModel m(2, 1, {0.0, std::sqrt(T * std::log(3.0))});
  std::vector<double> p(2);
  kernels::soft_assignments(d, m, T, p);
  CHECK(p[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(p[1] == doctest::Approx(0.25).epsilon(1e-12));

  const CentroidModel sym(3, 2, {1, 0, -0.5, std::sqrt(0.75), -0.5, -std::sqrt(0.75)});
  const Dataset origin(1, 2, {0, 0});
  std::vector<double> u(3);
  kernels::soft_assignments(origin, sym, 0.3, u);
  for (double x : u) CHECK(x == doctest::Approx(1.0 / 3.0));

  // Tiny temperature: max-shift keeps this finite and one-hot.
  const CentroidModel far(2, 1, {0.1, 3.0});
  kernels::soft_assignments(d, far, 1e-6, p);
  CHECK(p[0] == doctest::Approx(1.0));
  CHECK(p[1] == doctest::Approx(0.0));

  CHECK_THROWS_AS(kernels::soft_assignments(d, m, 0.0, p), InputError);
  CHECK_THROWS_AS(kernels::soft_assignments(d, m, -1.0, p), InputError);
}

TEST_CASE("fisher-rao score") {
  const std::vector<double> half{0.5, 0.5};
  const std::vector<double> certain{1.0, 0.0};
  CHECK(std::abs(fisher_rao_score(half) - 1.0) <= 1e-12);
  CHECK(std::abs(fisher_rao_score(certain)) <= 1e-12);

  // High-precision reference: 1 - 2 acos((sqrt(.9) + sqrt(.1)) / sqrt 2) / (pi / 2).
  const std::vector<double> q{0.9, 0.1};
  CHECK(std::abs(fisher_rao_score(q) - 0.40966552939826690) <= 1e-12);

  // Only the top two entries count, in either order.
  const std::vector<double> three{0.05, 0.1, 0.85};
  const std::vector<double> renorm{0.85 / 0.95, 0.1 / 0.95};
  CHECK(fisher_rao_score(three) == doctest::Approx(fisher_rao_score(renorm)));
  const std::vector<double> swapped{0.1, 0.9};
  CHECK(fisher_rao_score(swapped) == doctest::Approx(fisher_rao_score(q)));

  double prev = 2.0;
  for (int s = 0; s < 100; ++s) {
    const double q1 = 0.5 + 0.5 * s / 99.0;
    const std::vector<double> v{q1, 1.0 - q1};
    const double j = fisher_rao_score(v);
    CHECK(j >= 0.0);
    CHECK(j <= 1.0);
    CHECK(j < prev);
    prev = j;
  }
}

TEST_CASE("signed margins") {
  const CentroidModel m(2, 1, {0.0, 10.0});
  const Dataset d(3, 1, {0.0, 5.0, 8.0});
  std::vector<double> out(3);
  kernels::signed_margins(d, m, std::vector<int>{0, 0, 0}, out);
  CHECK(out[0] == -100.0);
  CHECK(out[1] == 0.0);
  CHECK(out[2] > 0.0);
  CHECK(out[2] == 64.0 - 4.0);
  const CentroidModel one(1, 1, {0.0});
  CHECK_THROWS_AS(kernels::signed_margins(d, one, std::vector<int>{0, 0, 0}, out),
                  InputError);
}
