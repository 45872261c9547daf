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
#include <string>
#include <utility>
#include <vector>

#include "pass/restricted.hpp"

namespace pass {

enum class PenaltyMode {
  Search,    // lambda capped for the variational search
  Evaluate,  // lambda = sum |delta| + eps, separates feasible from infeasible
};

/// Must-link data that only exists when collapse is bypassed.
struct QuboExtras {
  std::vector<Pair> ml_internal;                      // local index pairs
  std::vector<std::pair<std::size_t, int>> ml_external;  // (local u, partner label)
};

struct QuadTerm {
  std::size_t i = 0;
  std::size_t j = 0;  // i < j
  double value = 0.0;
};

/// E(x) = constant + sum_v linear[v] x_v + sum_{i<j} Q_ij x_i x_j over binary
/// x, with variable (sample s, cluster g) at index k*s + g.
///
/// Penalties: lambda (1 - sum_g x_sg)^2 per sample, lambda sum_g
/// (x_ug - x_vg)^2 per internal ML pair, lambda sum_g x_ug x_vg per internal
/// CL pair, lambda x_ug for a cluster held by an outside CL partner or not in
/// the candidate set, and lambda (sum_g x_ug - 2 x_ug* + 1) per outside ML
/// partner with label g*. Every feasible assignment therefore has energy
/// equal to its restricted objective.
struct QuboModel {
  std::size_t samples = 0;
  std::size_t k = 0;
  std::vector<double> linear;
  std::vector<QuadTerm> quadratic;  // sorted by (i, j), merged
  double constant = 0.0;
  double lambda = 0.0;
  PenaltyMode mode = PenaltyMode::Evaluate;

  // Feasibility data, kept to decode and check bitstrings.
  std::vector<double> deltas;  // samples x k
  std::vector<int> warm_labels;
  std::vector<Pair> cl_internal;
  std::vector<Pair> ml_internal;
  std::vector<std::pair<std::size_t, int>> ml_external;
  std::vector<char> clamped;  // per variable

  std::size_t n_vars() const { return samples * k; }
  std::size_t var(std::size_t sample, int g) const { return k * sample + g; }

  double energy(std::uint64_t bits) const;
  bool one_hot(std::uint64_t bits) const;
  /// One-hot, no clamped variable set, all internal CL/ML pairs respected.
  bool feasible(std::uint64_t bits) const;
  std::vector<int> decode(std::uint64_t bits) const;  // requires one_hot
  std::uint64_t encode(const std::vector<int>& labels) const;
  /// Restricted objective sum_s delta(s, label_s).
  double linear_cost(const std::vector<int>& labels) const;
};

/// Average positive margin over the subset: mean of
/// max(0, -min_{g != cur} delta(s, g)).
double mean_positive_margin(const RestrictedModel& model);

/// Search-mode cap eta_bar |S| / (32 (k-1) (|E_ML| + |E_CL|)); returns a
/// negative value when there are no internal edges (cap undefined). Search
/// mode falls back to the evaluate value when the cap is not positive.
double search_lambda_limit(const RestrictedModel& model, const QuboExtras& extras);

QuboModel build_qubo(const RestrictedModel& model, const QuboExtras& extras,
                     PenaltyMode mode);

/// Exact minimum over all bitstrings; ties go to the lexicographically
/// smallest string (x_0 first). Requires n_vars <= 20.
std::pair<std::uint64_t, double> brute_force_ground(const QuboModel& qubo);

/// Energies of every basis state, indexed by bitstring (x_v = bit v).
std::vector<double> qubo_diagonal(const QuboModel& qubo);
std::vector<double> qubo_diagonal_serial(const QuboModel& qubo);

/// Plain-text interchange: "i j value" per quadratic term, "i value" per
/// linear term, then "constant value".
std::string format_qubo(const QuboModel& qubo);
void write_qubo(const std::string& path, const QuboModel& qubo);

inline constexpr std::size_t kMaxDenseVars = 20;

}  // namespace pass
