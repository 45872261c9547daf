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

#include "pass/collapse.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace pass {

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

std::size_t UnionFind::find(std::size_t x) {
  std::size_t root = x;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[x] != root) {
    const auto next = parent_[x];
    parent_[x] = root;
    x = next;
  }
  return root;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (size_[a] < size_[b]) std::swap(a, b);
  parent_[b] = a;
  size_[a] += size_[b];
  return true;
}

CollapseResult collapse(const Dataset& dataset, const ConstraintSet& constraints) {
  const std::size_t n = dataset.size();
  const std::size_t d = dataset.dim();
  constraints.validate(n);

  UnionFind uf(n);
  for (const auto& [a, b] : constraints.ml()) uf.unite(a, b);

  // Pseudo index in order of first appearance.
  std::vector<std::size_t> root_to_pseudo(n, n);
  std::vector<std::size_t> lift(n);
  std::vector<std::vector<std::size_t>> components;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = uf.find(i);
    if (root_to_pseudo[r] == n) {
      root_to_pseudo[r] = components.size();
      components.emplace_back();
    }
    lift[i] = root_to_pseudo[r];
    components[lift[i]].push_back(i);
  }

  const std::size_t m = components.size();
  std::vector<double> values(m * d, 0.0);
  std::vector<double> weights(m, 0.0);
  std::vector<double> scatter(m, 0.0);

#pragma omp parallel for schedule(dynamic, 64)
  for (std::size_t j = 0; j < m; ++j) {
    const auto& comp = components[j];
    double* mean = values.data() + j * d;
    for (auto i : comp) {
      const auto x = dataset.row(i);
      const double w = dataset.weight(i);
      for (std::size_t c = 0; c < d; ++c) mean[c] += w * x[c];
      weights[j] += w;
    }
    for (std::size_t c = 0; c < d; ++c) mean[c] /= weights[j];
    // (t-1) tr(Sigma) with the (t-1) denominator is the plain within-component
    // sum of squares; zero for singletons.
    double ss = 0.0;
    if (comp.size() > 1) {
      for (auto i : comp) {
        const auto x = dataset.row(i);
        for (std::size_t c = 0; c < d; ++c) {
          const double diff = x[c] - mean[c];
          ss += dataset.weight(i) * diff * diff;
        }
      }
    }
    scatter[j] = ss;
  }
  double offset = 0.0;
  for (double s : scatter) offset += s;

  std::vector<Pair> cl;
  cl.reserve(constraints.cl().size());
  for (const auto& [a, b] : constraints.cl()) {
    const auto pa = lift[a];
    const auto pb = lift[b];
    if (pa == pb) {
      throw InfeasibleError("cannot-link (" + std::to_string(a) + "," +
                            std::to_string(b) +
                            ") lies inside one must-link component");
    }
    cl.push_back(canonical_pair(pa, pb));
  }

  CollapseResult out{
      CollapsedInstance{Dataset(m, d, std::move(values), std::move(weights)),
                        offset, std::move(lift), std::move(components)},
      ConstraintSet({}, std::move(cl))};
  return out;
}

CostIdentity verify_cost_identity(const Dataset& dataset,
                                  const CollapsedInstance& collapsed,
                                  std::span<const std::vector<double>> centroids,
                                  const Assignment& pseudo_labels) {
  const std::size_t d = dataset.dim();
  if (collapsed.data.dim() != d) throw InputError("dimension mismatch");
  if (pseudo_labels.size() != collapsed.data.size()) {
    throw InputError("pseudo label count mismatch");
  }
  for (const auto& c : centroids) {
    if (c.size() != d) throw InputError("centroid dimension mismatch");
  }
  pseudo_labels.validate();
  if (static_cast<std::size_t>(pseudo_labels.k) > centroids.size()) {
    throw InputError("fewer centroids than clusters");
  }

  auto sq = [d](std::span<const double> x, const std::vector<double>& mu) {
    double s = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      const double diff = x[c] - mu[c];
      s += diff * diff;
    }
    return s;
  };

  CostIdentity out;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const int g = pseudo_labels.labels[collapsed.lift[i]];
    out.full_sse += dataset.weight(i) * sq(dataset.row(i), centroids[g]);
  }
  double pseudo = 0.0;
  for (std::size_t j = 0; j < collapsed.data.size(); ++j) {
    const int g = pseudo_labels.labels[j];
    pseudo += collapsed.data.weight(j) * sq(collapsed.data.row(j), centroids[g]);
  }
  out.collapsed_sse_plus_offset = pseudo + collapsed.offset;
  return out;
}

Assignment lift_assignment(const CollapsedInstance& collapsed,
                           const Assignment& pseudo_labels) {
  if (pseudo_labels.size() != collapsed.data.size()) {
    throw InputError("pseudo label count mismatch");
  }
  pseudo_labels.validate();
  Assignment out;
  out.k = pseudo_labels.k;
  out.labels.resize(collapsed.lift.size());
  for (std::size_t i = 0; i < collapsed.lift.size(); ++i) {
    out.labels[i] = pseudo_labels.labels[collapsed.lift[i]];
  }
  return out;
}

}  // namespace pass
