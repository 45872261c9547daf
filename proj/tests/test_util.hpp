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

// Random instance generators and brute-force oracles shared by the tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "pass/data_model.hpp"
#include "pass/kernels.hpp"
#include "pass/restricted.hpp"

namespace testutil {

using Rng = std::mt19937_64;

inline pass::Dataset random_dataset(Rng& rng, std::size_t n, std::size_t d,
                                    bool weighted = false, double scale = 5.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::uniform_real_distribution<double> w(0.5, 3.0);
  std::vector<double> v(n * d);
  for (auto& x : v) x = u(rng);
  std::vector<double> ws;
  if (weighted) {
    ws.resize(n);
    for (auto& x : ws) x = w(rng);
  }
  return pass::Dataset(n, d, std::move(v), std::move(ws));
}

inline pass::CentroidModel random_centroids(Rng& rng, std::size_t k, std::size_t d,
                                            double scale = 5.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> v(k * d);
  for (auto& x : v) x = u(rng);
  return pass::CentroidModel(k, d, std::move(v));
}

inline std::vector<int> random_labels(Rng& rng, std::size_t n, std::size_t k) {
  std::uniform_int_distribution<int> g(0, static_cast<int>(k) - 1);
  std::vector<int> out(n);
  for (auto& x : out) x = g(rng);
  return out;
}

/// Random pairs with probability p each, as (a, b) with a < b.
inline std::vector<pass::Pair> random_pairs(Rng& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<pass::Pair> out;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (coin(rng)) out.emplace_back(a, b);
    }
  }
  return out;
}

inline double brute_sse(const pass::Dataset& data, const pass::CentroidModel& m,
                        const std::vector<int>& labels) {
  double s = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double d2 = 0.0;
    for (std::size_t c = 0; c < data.dim(); ++c) {
      const double diff = data.row(i)[c] - m.row(labels[i])[c];
      d2 += diff * diff;
    }
    s += data.weight(i) * d2;
  }
  return s;
}

/// Restricted model with random deltas (zero at the current label), random
/// candidate sets containing the current label, and random internal CL.
inline pass::RestrictedModel random_restricted(Rng& rng, std::size_t m,
                                               std::size_t k, double cl_p) {
  pass::RestrictedModel rm;
  rm.k = k;
  rm.subset.resize(m);
  rm.current = random_labels(rng, m, k);
  rm.candidates.resize(m);
  rm.external_forbidden.resize(m);
  rm.deltas.resize(m * k);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::bernoulli_distribution keep(0.7);
  for (std::size_t i = 0; i < m; ++i) {
    rm.subset[i] = i;
    for (std::size_t g = 0; g < k; ++g) {
      rm.deltas[i * k + g] = static_cast<int>(g) == rm.current[i] ? 0.0 : u(rng);
      if (static_cast<int>(g) == rm.current[i] || keep(rng)) {
        rm.candidates[i].push_back(static_cast<int>(g));
      }
    }
  }
  rm.internal_cl = random_pairs(rng, m, cl_p);
  rm.warm_start = rm.current;
  return rm;
}

/// Minimum objective over all k^m labelings, or nullopt if none is feasible.
inline std::optional<double> brute_restricted(const pass::RestrictedModel& rm) {
  const std::size_t m = rm.size();
  std::vector<int> lab(m, 0);
  std::optional<double> best;
  while (true) {
    if (rm.feasible(lab)) {
      const double f = rm.objective(lab);
      if (!best || f < *best) best = f;
    }
    std::size_t i = 0;
    while (i < m && ++lab[i] == static_cast<int>(rm.k)) lab[i++] = 0;
    if (i == m) break;
  }
  return best;
}

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace testutil
