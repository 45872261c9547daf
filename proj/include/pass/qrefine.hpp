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
#include <string>
#include <vector>

#include "pass/driver.hpp"

namespace pass {

struct QaoaRefineOptions {
  std::size_t rounds = 3;
  std::size_t shots = 2048;
  std::size_t max_vars = 12;
};

struct QaoaRefineRound {
  std::size_t subset_size = 0;
  std::size_t n_vars = 0;
  double lambda = 0.0;
  double warm_objective = 0.0;  // local-search start
  double objective = 0.0;       // accepted labeling (warm when rejected)
  double expected_energy = 0.0;
  bool accepted = false;
  bool from_samples = false;
};

struct QaoaRefineResult {
  PassResult base;  // the PASS run being refined
  Assignment labels;
  CentroidModel centroids;
  double sse = 0.0;
  std::size_t violations = 0;
  std::size_t ml_violations = 0;
  double qaoa_seconds = 0.0;
  std::vector<QaoaRefineRound> rounds;
  std::string first_qubo;  // exported text of the first round's QUBO
};

/// PASS, then a few rounds of depth-1 QAOA on the highest-scoring points
/// (at most max_vars / k of them). Each round solves a search-mode QUBO from
/// a local-search warm start and keeps the best sample only when it is
/// feasible and lowers the restricted objective.
QaoaRefineResult qaoa_refine(const Dataset& data, const ConstraintSet& constraints,
                             const PassConfig& config,
                             const QaoaRefineOptions& opts = {});

}  // namespace pass
