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
#include <vector>

#include "pass/centroids.hpp"
#include "pass/collapse.hpp"
#include "pass/data_model.hpp"
#include "pass/restricted.hpp"
#include "pass/selection.hpp"

namespace pass {

enum class SolverKind { Exact, LocalSearch };

struct PassConfig {
  std::size_t k = 3;
  SelectorKind selector = SelectorKind::InfoGeometric;
  double percentile = 20.0;  // CA threshold percentile
  double alpha = 0.2;        // IG budget cap fraction
  double beta = 3.0;         // IG budget log multiplier
  double temperature = 0.0;  // <= 0: median nearest squared distance
  std::size_t candidate_width = 4;
  std::size_t max_iters = 30;
  double sse_rel_tol = 1e-3;
  std::uint64_t seed = 0;
  SolverKind solver = SolverKind::Exact;
  double time_limit = 10.0;  // seconds per restricted solve
  std::size_t local_sweeps = 100;
  MiniBatchOptions minibatch{};

  void validate() const;
};

struct IterationTrace {
  double sse = 0.0;  // full-data SSE after the centroid update
  std::size_t subset_size = 0;
  std::size_t violations = 0;  // CL violations after reassignment
  std::size_t binaries = 0;
  double objective = 0.0;  // restricted objective (<= 0 when feasible)
  SolveStatus status = SolveStatus::Optimal;
  std::size_t reseeded = 0;  // empty clusters re-seeded in this update
};

struct PhaseTimes {
  double collapse = 0.0;
  double init = 0.0;
  double selection = 0.0;
  double ilp = 0.0;
  double centroids = 0.0;
  double post = 0.0;
  double total = 0.0;
  /// total minus selection, ilp and centroids.
  double other() const { return total - selection - ilp - centroids; }
};

struct PassResult {
  Assignment labels;  // original indices
  CentroidModel centroids;
  double sse = 0.0;
  std::size_t violations = 0;     // CL pairs violated
  std::size_t ml_violations = 0;  // zero by construction
  std::size_t iterations = 0;
  std::optional<std::size_t> stabilized_at;
  std::size_t max_binaries = 0;
  PhaseTimes phase_times;
  std::vector<IterationTrace> trace;
};

/// Collapse, mini-batch initialization, iterated subset reassignment and
/// centroid updates until stabilization (zero violations and relative SSE
/// change below sse_rel_tol) or max_iters, then repair and lift. Throws
/// InfeasibleError for contradictory ML/CL input.
PassResult run_pass(const Dataset& data, const ConstraintSet& constraints,
                    const PassConfig& config);

struct PostProcessResult {
  Assignment labels;  // lifted to original indices
  Assignment pseudo_labels;
  std::size_t residual = 0;  // CL violations left unrepaired
};

/// Greedy repair of CL violations on pseudo-points: for each violated pair,
/// move whichever endpoint to whichever non-conflicting cluster raises the
/// weighted SSE least (lower endpoint, then lower cluster, on ties). Pairs
/// with no such move are left and counted. The result is lifted.
PostProcessResult post_process(const CollapsedInstance& collapsed,
                               const CentroidModel& model,
                               Assignment pseudo_labels,
                               const ConstraintSet& cl_projected);

struct Evaluation {
  double sse = 0.0;
  std::size_t ml_violations = 0;
  std::size_t cl_violations = 0;
  std::optional<double> ari;
  std::optional<double> ami;
  std::optional<double> purity;
};

/// SSE with centroids recomputed from `labels` (an empty cluster keeps its
/// centroid from `model`), constraint violations, and agreement scores
/// when truth labels are given.
Evaluation evaluate(const Assignment& labels, const Dataset& data,
                    const ConstraintSet& constraints, const CentroidModel& model,
                    const std::vector<int>* truth = nullptr);

}  // namespace pass
