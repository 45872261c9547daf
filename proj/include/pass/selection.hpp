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
#include <vector>

#include "pass/data_model.hpp"
#include "pass/kernels.hpp"

namespace pass {

enum class SelectorKind { ConstraintAware, InfoGeometric };

/// Working subset S for one refinement step. `indices` and `violations` are
/// sorted ascending. Margins are filled by both selectors, scores and budget
/// only by the information-geometric one, tau only by the margin one.
struct WorkingSubset {
  SelectorKind kind = SelectorKind::ConstraintAware;
  std::vector<std::size_t> indices;
  std::vector<std::size_t> violations;
  std::vector<double> margins;
  std::vector<double> scores;
  double tau = 0.0;
  std::size_t budget = 0;
};

std::vector<double> compute_margins(const Dataset& data,
                                    const CentroidModel& model,
                                    const Assignment& labels);

/// Endpoints of every CL pair whose endpoints share a label.
std::vector<std::size_t> find_violations(const Assignment& labels,
                                         const ConstraintSet& cl);

/// Linear-interpolation percentile, p in [0, 100].
double percentile(std::vector<double> values, double p);

/// Margin-based selection: tau is the p-th percentile of the boundary gaps
/// -m(i), floored at zero, and S = V plus every point with m(i) > -tau.
WorkingSubset select_ca(const Dataset& data, const CentroidModel& model,
                        const Assignment& labels, const ConstraintSet& cl,
                        double p);

std::vector<double> soft_assignments(const Dataset& data,
                                     const CentroidModel& model,
                                     double temperature);

/// Median nearest-centroid squared distance; falls back to the mean, then 1,
/// when that is zero.
double default_temperature(const Dataset& data, const CentroidModel& model);

/// m = max(|V|, min(ceil(alpha n), |V| + ceil(beta k ln n))), capped at n.
std::size_t budget(std::size_t n, std::size_t k, std::size_t n_violations,
                   double alpha, double beta);

/// S = V plus the (m - |V|) highest-scoring points outside V, ties to the
/// lowest index.
WorkingSubset select_ig(const Dataset& data, const CentroidModel& model,
                        const Assignment& labels, const ConstraintSet& cl,
                        double temperature, double alpha, double beta);

}  // namespace pass
