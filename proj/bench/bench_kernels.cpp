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

// Serial references vs the OpenMP kernels. Each pair runs on the same input;
// the thread count comes from OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <vector>

#include "pass/centroids.hpp"
#include "pass/kernels.hpp"
#include "pass/qaoa.hpp"
#include "pass/qubo.hpp"
#include "pass/report.hpp"

using namespace pass;

namespace {

struct Fixture {
  Dataset data;
  CentroidModel model;
  std::vector<int> labels;

  explicit Fixture(std::size_t n) {
    data = make_blobs(n, 8, 16, 1.0, 7).first;
    model = kmeanspp(data, 8, 7);
    labels.resize(n);
    std::vector<double> dist(n);
    kernels::assign_nearest(data, model, labels, dist);
  }
};

const Fixture& fixture(std::size_t n) {
  static std::map<std::size_t, Fixture> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, Fixture(n)).first;
  return it->second;
}

// Dense restricted model with a CL chain, m points and k clusters.
QuboModel dense_qubo(std::size_t m, std::size_t k) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  RestrictedModel rm;
  rm.k = k;
  for (std::size_t i = 0; i < m; ++i) {
    rm.subset.push_back(i);
    rm.current.push_back(static_cast<int>(i % k));
    rm.candidates.emplace_back();
    for (std::size_t g = 0; g < k; ++g) {
      rm.candidates.back().push_back(static_cast<int>(g));
      rm.deltas.push_back(static_cast<int>(g) == rm.current.back() ? 0.0 : u(rng));
    }
    if (i > 0) rm.internal_cl.emplace_back(i - 1, i);
  }
  rm.warm_start = rm.current;
  rm.external_forbidden.resize(m);
  return build_qubo(rm, {}, PenaltyMode::Evaluate);
}

constexpr std::size_t kSmall = 1 << 14;
constexpr std::size_t kLarge = 1 << 18;

}  // namespace

template <bool Parallel>
void BM_AssignNearest(benchmark::State& st) {
  const Fixture& f = fixture(static_cast<std::size_t>(st.range(0)));
  std::vector<int> labels(f.data.size());
  std::vector<double> dist(f.data.size());
  for (auto _ : st) {
    benchmark::DoNotOptimize(Parallel ? kernels::assign_nearest(f.data, f.model, labels, dist)
                                      : kernels::serial::assign_nearest(f.data, f.model, labels,
                                                                        dist));
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void BM_WeightedSse(benchmark::State& st) {
  const Fixture& f = fixture(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    benchmark::DoNotOptimize(Parallel ? kernels::weighted_sse(f.data, f.model, f.labels)
                                      : kernels::serial::weighted_sse(f.data, f.model, f.labels));
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void BM_Margins(benchmark::State& st) {
  const Fixture& f = fixture(static_cast<std::size_t>(st.range(0)));
  std::vector<double> out(f.data.size());
  for (auto _ : st) {
    if (Parallel) {
      kernels::signed_margins(f.data, f.model, f.labels, out);
    } else {
      kernels::serial::signed_margins(f.data, f.model, f.labels, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void BM_FisherRao(benchmark::State& st) {
  const Fixture& f = fixture(static_cast<std::size_t>(st.range(0)));
  std::vector<double> out(f.data.size());
  for (auto _ : st) {
    if (Parallel) {
      kernels::fisher_rao_scores(f.data, f.model, 4.0, out);
    } else {
      kernels::serial::fisher_rao_scores(f.data, f.model, 4.0, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void BM_UpdateCentroids(benchmark::State& st) {
  const Fixture& f = fixture(static_cast<std::size_t>(st.range(0)));
  const Assignment a{f.labels, static_cast<int>(f.model.k())};
  for (auto _ : st) {
    auto u = Parallel ? update_centroids(f.data, a, &f.model)
                      : update_centroids_serial(f.data, a, &f.model);
    benchmark::DoNotOptimize(u.model);
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void BM_QuboDiagonal(benchmark::State& st) {
  const QuboModel q = dense_qubo(static_cast<std::size_t>(st.range(0)), 3);
  for (auto _ : st) {
    auto d = Parallel ? qubo_diagonal(q) : qubo_diagonal_serial(q);
    benchmark::DoNotOptimize(d.data());
  }
}

template <bool Parallel>
void BM_XyMixer(benchmark::State& st) {
  const MixerLayout layout{static_cast<std::size_t>(st.range(0)), 3};
  StateVector s = basis_state(layout.n_qubits(), 0);
  for (auto _ : st) {
    if (Parallel) {
      apply_xy_mixer(s, 0.3, layout);
    } else {
      apply_xy_mixer_serial(s, 0.3, layout);
    }
    benchmark::DoNotOptimize(s.data());
  }
}

BENCHMARK(BM_AssignNearest<false>)->Arg(kSmall)->Arg(kLarge)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AssignNearest<true>)->Arg(kSmall)->Arg(kLarge)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_WeightedSse<false>)->Arg(kSmall)->Arg(kLarge)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_WeightedSse<true>)->Arg(kSmall)->Arg(kLarge)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Margins<false>)->Arg(kSmall)->Arg(kLarge)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Margins<true>)->Arg(kSmall)->Arg(kLarge)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FisherRao<false>)->Arg(kSmall)->Arg(kLarge)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FisherRao<true>)->Arg(kSmall)->Arg(kLarge)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_UpdateCentroids<false>)->Arg(kSmall)->Arg(kLarge)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_UpdateCentroids<true>)->Arg(kSmall)->Arg(kLarge)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_QuboDiagonal<false>)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_QuboDiagonal<true>)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_XyMixer<false>)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_XyMixer<true>)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
