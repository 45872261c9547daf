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

#include "pass/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace pass {

CentroidModel::CentroidModel(std::size_t k, std::size_t d,
                             std::vector<double> values)
    : k_(k), d_(d), values_(std::move(values)) {
  if (k_ == 0) throw InputError("cluster count k must be >= 1");
  if (values_.size() != k_ * d_) throw InputError("centroid value count mismatch");
}

double fisher_rao_score(std::span<const double> probs) {
  std::size_t g1 = 0;
  std::size_t g2 = probs.size() > 1 ? 1 : 0;
  if (probs.size() > 1 && probs[g2] > probs[g1]) std::swap(g1, g2);
  for (std::size_t g = 2; g < probs.size(); ++g) {
    if (probs[g] > probs[g1]) {
      g2 = g1;
      g1 = g;
    } else if (probs[g] > probs[g2]) {
      g2 = g;
    }
  }
  const double total = probs[g1] + probs[g2];
  if (!(total > 0.0) || g1 == g2) return 0.0;
  const double q1 = probs[g1] / total;
  const double q2 = probs[g2] / total;
  // With sqrt(q1) = cos(phi), sqrt(q2) = sin(phi), the arccos argument
  // (sqrt(q1) + sqrt(q2)) / sqrt(2) equals cos(phi - pi/4), so the distance
  // 2 arccos(...) is 2 |phi - pi/4| without cancellation near q = (1/2, 1/2).
  const double phi = std::atan2(std::sqrt(q2), std::sqrt(q1));
  const double dist = 2.0 * std::abs(phi - std::numbers::pi / 4.0);
  return std::clamp(1.0 - 2.0 / std::numbers::pi * dist, 0.0, 1.0);
}

namespace kernels {

namespace {

constexpr std::size_t kBlock = 2048;

std::size_t block_count(std::size_t n) { return (n + kBlock - 1) / kBlock; }

void check_dims(const Dataset& data, const CentroidModel& model) {
  if (data.dim() != model.dim()) throw InputError("dimension mismatch");
}

inline int nearest(std::span<const double> x, const CentroidModel& model,
                   double& best) {
  int arg = 0;
  best = squared_distance(x, model.row(0));
  for (std::size_t g = 1; g < model.k(); ++g) {
    const double dg = squared_distance(x, model.row(g));
    if (dg < best) {
      best = dg;
      arg = static_cast<int>(g);
    }
  }
  return arg;
}

inline double margin_of(std::span<const double> x, const CentroidModel& model,
                        int label) {
  const double current = squared_distance(x, model.row(label));
  double next = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < model.k(); ++g) {
    if (static_cast<int>(g) == label) continue;
    next = std::min(next, squared_distance(x, model.row(g)));
  }
  return current - next;
}

inline void softmax_row(std::span<const double> x, const CentroidModel& model,
                        double temperature, double* out) {
  const std::size_t k = model.k();
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < k; ++g) {
    out[g] = squared_distance(x, model.row(g));
    lo = std::min(lo, out[g]);
  }
  double z = 0.0;
  for (std::size_t g = 0; g < k; ++g) {
    out[g] = std::exp(-(out[g] - lo) / temperature);
    z += out[g];
  }
  for (std::size_t g = 0; g < k; ++g) out[g] /= z;
}

void check_temperature(double t) {
  if (!(t > 0.0)) throw InputError("temperature must be positive");
}

}  // namespace

double assign_nearest(const Dataset& data, const CentroidModel& model,
                      std::span<int> labels, std::span<double> dist) {
  check_dims(data, model);
  const std::size_t n = data.size();
  const std::size_t blocks = block_count(n);
  std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    double s = 0.0;
    for (std::size_t i = b * kBlock; i < end; ++i) {
      double best = 0.0;
      labels[i] = nearest(data.row(i), model, best);
      dist[i] = best;
      s += data.weight(i) * best;
    }
    partial[b] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

double weighted_sse(const Dataset& data, const CentroidModel& model,
                    std::span<const int> labels) {
  check_dims(data, model);
  const std::size_t n = data.size();
  const std::size_t blocks = block_count(n);
  std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    double s = 0.0;
    for (std::size_t i = b * kBlock; i < end; ++i) {
      s += data.weight(i) * squared_distance(data.row(i), model.row(labels[i]));
    }
    partial[b] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

void signed_margins(const Dataset& data, const CentroidModel& model,
                    std::span<const int> labels, std::span<double> margins) {
  check_dims(data, model);
  if (model.k() < 2) throw InputError("signed margins need k >= 2");
  const auto n = static_cast<std::ptrdiff_t>(data.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    margins[i] = margin_of(data.row(i), model, labels[i]);
  }
}

void soft_assignments(const Dataset& data, const CentroidModel& model,
                      double temperature, std::span<double> probs) {
  check_dims(data, model);
  check_temperature(temperature);
  const std::size_t k = model.k();
  const auto n = static_cast<std::ptrdiff_t>(data.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    softmax_row(data.row(i), model, temperature, probs.data() + i * k);
  }
}

void fisher_rao_scores(const Dataset& data, const CentroidModel& model,
                       double temperature, std::span<double> scores) {
  check_dims(data, model);
  check_temperature(temperature);
  const std::size_t k = model.k();
  const auto n = static_cast<std::ptrdiff_t>(data.size());
#pragma omp parallel
  {
    std::vector<double> row(k);
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      softmax_row(data.row(i), model, temperature, row.data());
      scores[i] = fisher_rao_score(row);
    }
  }
}

namespace serial {

double assign_nearest(const Dataset& data, const CentroidModel& model,
                      std::span<int> labels, std::span<double> dist) {
  check_dims(data, model);
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    double best = 0.0;
    labels[i] = nearest(data.row(i), model, best);
    dist[i] = best;
    total += data.weight(i) * best;
  }
  return total;
}

double weighted_sse(const Dataset& data, const CentroidModel& model,
                    std::span<const int> labels) {
  check_dims(data, model);
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    total += data.weight(i) * squared_distance(data.row(i), model.row(labels[i]));
  }
  return total;
}

void signed_margins(const Dataset& data, const CentroidModel& model,
                    std::span<const int> labels, std::span<double> margins) {
  check_dims(data, model);
  if (model.k() < 2) throw InputError("signed margins need k >= 2");
  for (std::size_t i = 0; i < data.size(); ++i) {
    margins[i] = margin_of(data.row(i), model, labels[i]);
  }
}

void soft_assignments(const Dataset& data, const CentroidModel& model,
                      double temperature, std::span<double> probs) {
  check_dims(data, model);
  check_temperature(temperature);
  for (std::size_t i = 0; i < data.size(); ++i) {
    softmax_row(data.row(i), model, temperature, probs.data() + i * model.k());
  }
}

void fisher_rao_scores(const Dataset& data, const CentroidModel& model,
                       double temperature, std::span<double> scores) {
  check_dims(data, model);
  check_temperature(temperature);
  std::vector<double> row(model.k());
  for (std::size_t i = 0; i < data.size(); ++i) {
    softmax_row(data.row(i), model, temperature, row.data());
    scores[i] = fisher_rao_score(row);
  }
}

}  // namespace serial

}  // namespace kernels

}  // namespace pass
