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
#include <utility>
#include <vector>

#include "pass/data_model.hpp"
#include "pass/kernels.hpp"
#include "pass/selection.hpp"

namespace pass {

/// Reassignment problem on the working subset. Point i of the model is
/// dataset point subset[i]; all per-point arrays use that local index.
struct RestrictedModel {
  std::size_t k = 0;
  std::vector<std::size_t> subset;
  /// Current label of each subset point (before reassignment).
  std::vector<int> current;
  /// Allowed clusters per point, sorted ascending, external clamps removed.
  std::vector<std::vector<int>> candidates;
  /// Row-major |S| x k: w_i (||x_i - mu_g||^2 - ||x_i - mu_cur||^2), all g.
  std::vector<double> deltas;
  /// CL pairs with both endpoints in S, as local index pairs (a < b).
  std::vector<Pair> internal_cl;
  /// Clusters forbidden by CL partners outside S (their fixed labels).
  std::vector<std::vector<int>> external_forbidden;
  /// Current label when it is a candidate, else -1.
  std::vector<int> warm_start;

  std::size_t size() const { return subset.size(); }
  double delta(std::size_t i, int g) const { return deltas[i * k + g]; }
  bool allows(std::size_t i, int g) const;
  std::size_t binaries() const;
  /// Sum of deltas for a labeling in local order.
  double objective(const std::vector<int>& labels) const;
  /// One-hot over candidates and no internal CL pair sharing a cluster.
  bool feasible(const std::vector<int>& labels) const;
};

enum class SolveStatus { Optimal, FeasibleHeuristic, Infeasible };

const char* to_string(SolveStatus s);

struct RestrictedSolution {
  std::vector<int> labels;  // local order
  double objective = 0.0;
  SolveStatus status = SolveStatus::Infeasible;
  std::size_t nodes = 0;   // branch-and-bound nodes (exact solver)
  std::size_t sweeps = 0;  // local-search sweeps
};

/// Candidate sets: the G nearest centroids; every cluster for CL violators
/// and their CL neighbours; plus the current label and the CL neighbours'
/// current labels. Clusters held by CL partners outside S are removed; if
/// that empties a set it is re-expanded to all clusters not forbidden.
RestrictedModel build_model(const Dataset& data, const CentroidModel& model,
                            const Assignment& labels,
                            const ConstraintSet& cl_projected,
                            const std::vector<std::size_t>& subset,
                            std::size_t G);

/// Branch-and-bound over the connected components of the internal CL graph.
/// Branches on the point with the fewest remaining candidates (lowest index
/// on ties), bounds by the sum of per-point minimum remaining deltas, and
/// starts from the local-search incumbent. On timeout the incumbent is
/// returned as FeasibleHeuristic.
RestrictedSolution solve_exact(const RestrictedModel& model,
                               double time_limit_seconds);

/// Deterministic feasible local search: greedy CL repair in index order,
/// then sweeps of best single moves and swaps across internal CL edges.
/// Never returns an infeasible labeling as feasible.
RestrictedSolution solve_local_search(const RestrictedModel& model,
                                      std::size_t max_sweeps = 100);

}  // namespace pass
