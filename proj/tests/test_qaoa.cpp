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

#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "doctest.h"
#include "pass/qaoa.hpp"
#include "test_util.hpp"

using namespace pass;

namespace {

double norm2(const StateVector& s) {
  double t = 0.0;
  for (const auto& a : s) t += std::norm(a);
  return t;
}

/// Random one-hot superposition over `samples` groups of k qubits.
StateVector random_one_hot(testutil::Rng& rng, const MixerLayout& layout) {
  StateVector s(std::size_t{1} << layout.n_qubits(), Amplitude{0.0, 0.0});
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, layout.k - 1);
  for (int term = 0; term < 6; ++term) {
    std::uint64_t bits = 0;
    for (std::size_t smp = 0; smp < layout.samples; ++smp) {
      bits |= std::uint64_t{1} << (layout.k * smp + pick(rng));
    }
    s[bits] += Amplitude{g(rng), g(rng)};
  }
  const double n = std::sqrt(norm2(s));
  for (auto& a : s) a /= n;
  return s;
}

/// Feasible warm start at the current labels, every move strictly improving.
RestrictedModel improvable(testutil::Rng& rng, std::size_t m, std::size_t k) {
  RestrictedModel rm;
  rm.k = k;
  std::uniform_real_distribution<double> gain(0.5, 3.0);
  for (std::size_t i = 0; i < m; ++i) {
    rm.subset.push_back(i);
    rm.current.push_back(static_cast<int>(i % k));
    rm.candidates.emplace_back();
    for (std::size_t g = 0; g < k; ++g) {
      rm.candidates.back().push_back(static_cast<int>(g));
      rm.deltas.push_back(static_cast<int>(g) == rm.current.back() ? 0.0 : -gain(rng));
    }
  }
  rm.warm_start = rm.current;
  rm.external_forbidden.resize(m);
  for (std::size_t a = 0; a + 1 < m; ++a) {
    if (rm.current[a] != rm.current[a + 1]) rm.internal_cl.emplace_back(a, a + 1);
  }
  return rm;
}

}  // namespace

TEST_CASE("mixer closed form on one sample") {
  const MixerLayout one{1, 2};
  for (double beta : {0.0, 0.1, 0.7, 1.3}) {
    StateVector s = basis_state(2, 0b01);
    apply_xy_mixer(s, beta, one);
    CHECK(std::abs(s[0b01] - Amplitude{std::cos(2 * beta), 0.0}) < 1e-14);
    CHECK(std::abs(s[0b10] - Amplitude{0.0, -std::sin(2 * beta)}) < 1e-14);
    CHECK(std::abs(s[0b00]) == 0.0);
    CHECK(std::abs(s[0b11]) == 0.0);
  }
  // |00> and |11> are fixed.
  StateVector both = basis_state(2, 0b11);
  apply_xy_mixer(both, 0.4, one);
  CHECK(std::abs(both[0b11] - Amplitude{1.0, 0.0}) < 1e-15);
}

TEST_CASE("mixer at beta zero is the identity") {
  testutil::Rng rng(2);
  const MixerLayout layout{3, 3};
  const StateVector s = random_one_hot(rng, layout);
  StateVector t = s;
  apply_xy_mixer(t, 0.0, layout);
  for (std::size_t x = 0; x < s.size(); ++x) CHECK(std::abs(s[x] - t[x]) < 1e-15);
}

TEST_CASE("mixer preserves norm and the one-hot subspace") {
  testutil::Rng rng(17);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 2 + rng() % 3;
    const MixerLayout layout{std::max<std::size_t>(1, 12 / k - rng() % 2), k};
    StateVector s = random_one_hot(rng, layout);
    CHECK(one_hot_leakage(s, layout) < 1e-15);
    apply_xy_mixer(s, angle(rng), layout);
    CHECK(one_hot_leakage(s, layout) < 1e-10);
    CHECK(std::abs(norm2(s) - 1.0) < 1e-10);
  }
}

TEST_CASE("parallel mixer matches serial") {
  testutil::Rng rng(4);
  const MixerLayout layout{4, 4};
  StateVector a = random_one_hot(rng, layout);
  StateVector b = a;
  apply_xy_mixer(a, 0.37, layout);
  apply_xy_mixer_serial(b, 0.37, layout);
  CHECK(a == b);
  CHECK_THROWS_AS(apply_xy_mixer(a, 0.1, MixerLayout{3, 4}), InputError);
}

TEST_CASE("phase then zero-angle mixer keeps the warm-start energy") {
  testutil::Rng rng(8);
  const RestrictedModel rm = improvable(rng, 4, 3);
  const QuboModel q = build_qubo(rm, {}, PenaltyMode::Search);
  const auto diag = qubo_diagonal(q);
  const std::uint64_t warm = q.encode(rm.warm_start);
  for (double gamma : {0.0, 0.4, 2.5}) {
    CHECK(qaoa_p1_energy(q, diag, warm, gamma, 0.0) == doctest::Approx(diag[warm]));
  }
}

TEST_CASE("gate counts and schedule") {
  CHECK(mixer_gate_count(3, 1).blocks == 3);
  CHECK(mixer_gate_count(3, 1).depth_layers == 3);
  CHECK(mixer_gate_count(2, 1).blocks == 1);
  CHECK(mixer_gate_count(2, 1).depth_layers == 1);
  CHECK(mixer_gate_count(6, 10).blocks == 150);
  CHECK(mixer_gate_count(6, 10).depth_layers == 5);
  CHECK_THROWS_AS(mixer_gate_count(1, 1), InputError);

  for (std::size_t k = 2; k <= 9; ++k) {
    const auto layers = mixer_schedule(k);
    CHECK(layers.size() == mixer_gate_count(k, 1).depth_layers);
    std::set<std::pair<int, int>> seen;
    for (const auto& layer : layers) {
      std::set<int> used;
      for (const auto& [g, h] : layer) {
        CHECK(g < h);
        CHECK(used.insert(g).second);
        CHECK(used.insert(h).second);
        seen.emplace(g, h);
      }
    }
    CHECK(seen.size() == k * (k - 1) / 2);
  }
}

TEST_CASE("flat landscape keeps the warm start") {
  RestrictedModel rm;
  rm.k = 2;
  rm.subset = {0, 1};
  rm.current = {0, 1};
  rm.warm_start = {0, 1};
  rm.candidates = {{0, 1}, {0, 1}};
  rm.deltas.assign(4, 0.0);
  rm.external_forbidden.resize(2);
  rm.internal_cl = {{0, 1}};
  const QuboModel q = build_qubo(rm, {}, PenaltyMode::Evaluate);
  const std::uint64_t warm = q.encode(rm.warm_start);
  const QaoaRun run = run_qaoa_p1(q, warm, 256, 3);
  CHECK(run.expected_energy == doctest::Approx(0.0));
  CHECK(run.best == warm);
  CHECK(run.best_energy == 0.0);
  CHECK(std::abs(norm2(run.statevector) - 1.0) < 1e-10);
}

TEST_CASE("depth one improves on the warm start") {
  testutil::Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t k = 2 + trial % 2;
    const RestrictedModel rm = improvable(rng, 8 / k + 1, k);
    const QuboModel q = build_qubo(rm, {}, PenaltyMode::Search);
    const double limit = search_lambda_limit(rm, {});
    CHECK(q.lambda <= limit * (1 + 1e-12));
    const QaoaRun run = run_qaoa_p1(q, q.encode(rm.warm_start), 512, trial);
    CHECK(run.expected_energy < run.warm_energy);
    CHECK(run.warm_energy == doctest::Approx(0.0));
    std::size_t total = 0;
    for (const auto& [bits, count] : run.samples) total += count;
    CHECK(total == 512);
    if (run.best_from_samples) {
      CHECK(q.feasible(run.best));
      CHECK(run.best_energy < run.warm_energy);
    }
  }
}

TEST_CASE("sampling is seeded") {
  testutil::Rng rng(6);
  const RestrictedModel rm = improvable(rng, 4, 2);
  const QuboModel q = build_qubo(rm, {}, PenaltyMode::Search);
  const std::uint64_t warm = q.encode(rm.warm_start);
  const QaoaRun a = run_qaoa_p1(q, warm, 300, 42);
  const QaoaRun b = run_qaoa_p1(q, warm, 300, 42);
  CHECK(a.samples == b.samples);
  CHECK(a.best == b.best);
  CHECK(a.gammas == b.gammas);
}

TEST_CASE("preconditions") {
  testutil::Rng rng(1);
  const RestrictedModel rm = improvable(rng, 2, 2);
  const QuboModel q = build_qubo(rm, {}, PenaltyMode::Evaluate);
  CHECK_THROWS_AS(run_qaoa_p1(q, 0b0000, 10, 0), InputError);
  const RestrictedModel big = improvable(rng, 7, 3);
  const QuboModel qb = build_qubo(big, {}, PenaltyMode::Evaluate);
  CHECK_THROWS_AS(run_qaoa_p1(qb, qb.encode(big.warm_start), 10, 0), InputError);
  CHECK_THROWS_AS(basis_state(21, 0), InputError);
}
