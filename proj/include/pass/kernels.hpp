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
#include <vector>

#include "pass/data_model.hpp"

namespace pass {

/// k centroids of dimension d, stored row-major.
class CentroidModel {
 public:
  CentroidModel() = default;
  CentroidModel(std::size_t k, std::size_t d, std::vector<double> values);
  CentroidModel(std::size_t k, std::size_t d)
      : CentroidModel(k, d, std::vector<double>(k * d, 0.0)) {}

  std::size_t k() const { return k_; }
  std::size_t dim() const { return d_; }
  std::span<const double> row(std::size_t g) const {
    return {values_.data() + g * d_, d_};
  }
  std::span<double> row(std::size_t g) { return {values_.data() + g * d_, d_}; }
  const std::vector<double>& values() const { return values_; }

  bool operator==(const CentroidModel&) const = default;

 private:
  std::size_t k_ = 0;
  std::size_t d_ = 0;
  std::vector<double> values_;
};

inline double squared_distance(std::span<const double> a,
                               std::span<const double> b) {
  double s = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double diff = a[c] - b[c];
    s += diff * diff;
  }
  return s;
}

// Per-point kernels. The top-level functions below run the OpenMP versions;
// `kernels::serial` holds the straight-line references they are tested and
// benchmarked against. Reductions are summed over fixed-size blocks in block
// order, so results do not depend on the thread count.
namespace kernels {

/// Nearest centroid per point (ties to the lowest index); writes the label
/// and squared distance and returns the weighted SSE.
double assign_nearest(const Dataset& data, const CentroidModel& model,
                      std::span<int> labels, std::span<double> dist);

double weighted_sse(const Dataset& data, const CentroidModel& model,
                    std::span<const int> labels);

/// m(i) = d(i, label) - min over other clusters of d(i, g). Requires k >= 2.
void signed_margins(const Dataset& data, const CentroidModel& model,
                    std::span<const int> labels, std::span<double> margins);

/// Softmax over -d(i,g)/T, max-shifted. Output is n*k row-major.
void soft_assignments(const Dataset& data, const CentroidModel& model,
                      double temperature, std::span<double> probs);

/// Fisher-Rao ambiguity score per point from its soft assignment row.
void fisher_rao_scores(const Dataset& data, const CentroidModel& model,
                       double temperature, std::span<double> scores);

namespace serial {
double assign_nearest(const Dataset& data, const CentroidModel& model,
                      std::span<int> labels, std::span<double> dist);
double weighted_sse(const Dataset& data, const CentroidModel& model,
                    std::span<const int> labels);
void signed_margins(const Dataset& data, const CentroidModel& model,
                    std::span<const int> labels, std::span<double> margins);
void soft_assignments(const Dataset& data, const CentroidModel& model,
                      double temperature, std::span<double> probs);
void fisher_rao_scores(const Dataset& data, const CentroidModel& model,
                       double temperature, std::span<double> scores);
}  // namespace serial

}  // namespace kernels

/// Top-two extraction (ties to the lowest index) and the normalized
/// Fisher-Rao closeness to the uniform two-point distribution, in [0, 1].
double fisher_rao_score(std::span<const double> probs);

}  // namespace pass
