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

#include "pass/data_model.hpp"
#include "pass/kernels.hpp"

namespace pass {

struct ClusteringState {
  CentroidModel model;
  Assignment labels;
  double sse = 0.0;
};

/// Derives the seed of restart `r` from a base seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Weighted k-means++ with greedy local trials (2 + floor(ln k) candidates per
/// step, keeping the one that lowers the potential most).
CentroidModel kmeanspp(const Dataset& data, std::size_t k, std::uint64_t seed);

struct MiniBatchOptions {
  std::size_t batch = 0;  // 0 selects min(1024, n)
  std::size_t iters = 50;
};

/// k-means++ seeding followed by `iters` mini-batch rounds. Batch points are
/// drawn with probability proportional to their weight.
CentroidModel init_minibatch(const Dataset& data, std::size_t k,
                             const MiniBatchOptions& opts, std::uint64_t seed);

/// Nearest-centroid labels and weighted SSE.
ClusteringState assign_nearest(const Dataset& data, const CentroidModel& model);

struct CentroidUpdate {
  CentroidModel model;
  std::size_t reseeded = 0;  // empty clusters moved to worst-fit points
};

/// Weighted means per label. An empty cluster keeps its centroid from
/// `previous` when given, otherwise it is re-seeded at the point with the
/// largest weighted distance to its own centroid.
CentroidUpdate update_centroids(const Dataset& data, const Assignment& labels,
                                const CentroidModel* previous = nullptr);

/// Same result as update_centroids, single-threaded.
CentroidUpdate update_centroids_serial(const Dataset& data,
                                       const Assignment& labels,
                                       const CentroidModel* previous = nullptr);

/// Plain Lloyd iterations from k-means++ seeding with derive_seed(seed, 0).
/// Empty clusters keep their previous centroid.
ClusteringState lloyd_kmeans(const Dataset& data, std::size_t k,
                             std::uint64_t seed, std::size_t max_iters = 300);

struct CopOptions {
  std::size_t restarts = 100;
  std::size_t max_iters = 300;
};

/// COP-k-means: points are assigned in index order to the nearest cluster
/// that breaks no constraint against already-assigned points. A dead end
/// fails the restart. Returns the lowest-SSE feasible run, or nullopt when
/// every restart fails. Restart r seeds with derive_seed(seed, r).
std::optional<ClusteringState> cop_kmeans(const Dataset& data,
                                          const ConstraintSet& constraints,
                                          std::size_t k, std::uint64_t seed,
                                          const CopOptions& opts = {});

}  // namespace pass
