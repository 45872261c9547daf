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
#include <span>
#include <utility>
#include <vector>

#include "pass/data_model.hpp"

namespace pass {

/// Disjoint-set forest with path compression and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t x);
  bool unite(std::size_t a, std::size_t b);

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Must-link components contracted to weighted pseudo-points.
///
/// Pseudo-point j sits at the mean of its component and carries weight t_j,
/// the component size (the summed input weights when those are not all one).
/// `offset` is the constant scatter removed by the contraction:
/// sum_j (t_j - 1) tr(Sigma_j), i.e. the within-component sum of squares.
/// Component order follows the smallest original index in each component.
struct CollapsedInstance {
  Dataset data;
  double offset = 0.0;
  std::vector<std::size_t> lift;
  std::vector<std::vector<std::size_t>> components;

  std::size_t original_size() const { return lift.size(); }
};

struct CollapseResult {
  CollapsedInstance instance;
  ConstraintSet cl_projected;  // ml() is always empty
};

/// Throws InfeasibleError when a CL pair falls inside one ML component.
CollapseResult collapse(const Dataset& dataset, const ConstraintSet& constraints);

struct CostIdentity {
  double full_sse = 0.0;
  double collapsed_sse_plus_offset = 0.0;
};

/// Both sides of the contraction identity for a given centroid set and
/// pseudo-point labels. Intended for tests, not the hot path.
CostIdentity verify_cost_identity(const Dataset& dataset,
                                  const CollapsedInstance& collapsed,
                                  std::span<const std::vector<double>> centroids,
                                  const Assignment& pseudo_labels);

Assignment lift_assignment(const CollapsedInstance& collapsed,
                           const Assignment& pseudo_labels);

}  // namespace pass
