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

#include "pass/centroids.hpp"

#include "pass/collapse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace pass {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

std::size_t sample_weighted(std::span<const double> w, double total,
                            std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, total);
  const double r = u(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    if (r < acc) return i;
  }
  // Rounding: fall back to the last index with positive mass.
  for (std::size_t i = w.size(); i-- > 0;) {
    if (w[i] > 0.0) return i;
  }
  return 0;
}

}  // namespace

CentroidModel kmeanspp(const Dataset& data, std::size_t k, std::uint64_t seed) {
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  if (k == 0) throw InputError("cluster count k must be >= 1");
  if (k > n) {
    throw InputError("k=" + std::to_string(k) + " exceeds point count " +
                     std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  const std::size_t trials =
      2 + static_cast<std::size_t>(std::floor(std::log(static_cast<double>(k))));

  CentroidModel model(k, d);
  std::vector<char> chosen(n, 0);
  auto place = [&](std::size_t g, std::size_t i) {
    const auto x = data.row(i);
    std::copy(x.begin(), x.end(), model.row(g).begin());
    chosen[i] = 1;
  };

  double wsum = 0.0;
  for (std::size_t i = 0; i < n; ++i) wsum += data.weight(i);
  const std::size_t first = sample_weighted(data.weights(), wsum, rng);
  place(0, first);

  std::vector<double> closest(n);
  std::vector<double> mass(n);
  double potential = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    closest[i] = squared_distance(data.row(i), data.row(first));
    mass[i] = data.weight(i) * closest[i];
    potential += mass[i];
  }

  std::vector<double> candidate_closest(n);
  std::vector<double> best_closest(n);
  for (std::size_t g = 1; g < k; ++g) {
    if (!(potential > 0.0)) {
      // Remaining points coincide with chosen centers.
      const auto it = std::find(chosen.begin(), chosen.end(), 0);
      place(g, static_cast<std::size_t>(it - chosen.begin()));
      continue;
    }
    double best_potential = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      const std::size_t cand = sample_weighted(mass, potential, rng);
      double pot = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        candidate_closest[i] =
            std::min(closest[i], squared_distance(data.row(i), data.row(cand)));
        pot += data.weight(i) * candidate_closest[i];
      }
      if (pot < best_potential) {
        best_potential = pot;
        best_index = cand;
        best_closest.swap(candidate_closest);
      }
    }
    place(g, best_index);
    closest.swap(best_closest);
    potential = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mass[i] = data.weight(i) * closest[i];
      potential += mass[i];
    }
  }
  return model;
}

CentroidModel init_minibatch(const Dataset& data, std::size_t k,
                             const MiniBatchOptions& opts, std::uint64_t seed) {
  const std::size_t n = data.size();
  CentroidModel model = kmeanspp(data, k, derive_seed(seed, 0));
  const std::size_t batch = opts.batch == 0 ? std::min<std::size_t>(1024, n)
                                            : opts.batch;
  std::mt19937_64 rng(derive_seed(seed, 1));
  std::discrete_distribution<std::size_t> pick(data.weights().begin(),
                                               data.weights().end());
  std::vector<double> counts(k, 0.0);
  std::vector<std::size_t> idx(batch);
  std::vector<int> near(batch);
  for (std::size_t it = 0; it < opts.iters; ++it) {
    for (auto& i : idx) i = pick(rng);
    for (std::size_t b = 0; b < batch; ++b) {
      const auto x = data.row(idx[b]);
      double best = squared_distance(x, model.row(0));
      int arg = 0;
      for (std::size_t g = 1; g < k; ++g) {
        const double dg = squared_distance(x, model.row(g));
        if (dg < best) {
          best = dg;
          arg = static_cast<int>(g);
        }
      }
      near[b] = arg;
    }
    for (std::size_t b = 0; b < batch; ++b) {
      const auto g = static_cast<std::size_t>(near[b]);
      counts[g] += 1.0;
      const double eta = 1.0 / counts[g];
      const auto x = data.row(idx[b]);
      auto mu = model.row(g);
      for (std::size_t c = 0; c < mu.size(); ++c) mu[c] += eta * (x[c] - mu[c]);
    }
  }
  return model;
}

ClusteringState assign_nearest(const Dataset& data, const CentroidModel& model) {
  ClusteringState state;
  state.model = model;
  state.labels.k = static_cast<int>(model.k());
  state.labels.labels.resize(data.size());
  std::vector<double> dist(data.size());
  state.sse = kernels::assign_nearest(data, model, state.labels.labels, dist);
  return state;
}

namespace {

void fill_empty(const Dataset& data, const Assignment& labels,
                const std::vector<double>& mass, const CentroidModel* previous,
                CentroidUpdate& out) {
  const std::size_t k = out.model.k();
  std::vector<char> used(data.size(), 0);
  for (std::size_t g = 0; g < k; ++g) {
    if (mass[g] > 0.0) continue;
    if (previous != nullptr) {
      const auto p = previous->row(g);
      std::copy(p.begin(), p.end(), out.model.row(g).begin());
      continue;
    }
    double worst = -1.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (used[i]) continue;
      const double cost =
          data.weight(i) *
          squared_distance(data.row(i), out.model.row(labels.labels[i]));
      if (cost > worst) {
        worst = cost;
        arg = i;
      }
    }
    used[arg] = 1;
    const auto x = data.row(arg);
    std::copy(x.begin(), x.end(), out.model.row(g).begin());
    ++out.reseeded;
  }
}

void check_update_args(const Dataset& data, const Assignment& labels,
                       const CentroidModel* previous) {
  if (labels.size() != data.size()) throw InputError("label count mismatch");
  labels.validate();
  if (previous != nullptr &&
      (previous->k() != static_cast<std::size_t>(labels.k) ||
       previous->dim() != data.dim())) {
    throw InputError("previous centroid model shape mismatch");
  }
}

}  // namespace

CentroidUpdate update_centroids(const Dataset& data, const Assignment& labels,
                                const CentroidModel* previous) {
  check_update_args(data, labels, previous);
  const std::size_t n = data.size();
  const std::size_t d = data.dim();
  const auto k = static_cast<std::size_t>(labels.k);
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  const std::size_t stride = k * (d + 1);
  std::vector<double> partial(blocks * stride, 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < blocks; ++b) {
    double* acc = partial.data() + b * stride;
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      const auto g = static_cast<std::size_t>(labels.labels[i]);
      const double w = data.weight(i);
      const auto x = data.row(i);
      double* row = acc + g * (d + 1);
      for (std::size_t c = 0; c < d; ++c) row[c] += w * x[c];
      row[d] += w;
    }
  }
  std::vector<double> sums(stride, 0.0);
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t j = 0; j < stride; ++j) sums[j] += partial[b * stride + j];
  }
  CentroidUpdate out{CentroidModel(k, d), 0};
  std::vector<double> mass(k);
  for (std::size_t g = 0; g < k; ++g) {
    mass[g] = sums[g * (d + 1) + d];
    if (mass[g] > 0.0) {
      auto mu = out.model.row(g);
      for (std::size_t c = 0; c < d; ++c) mu[c] = sums[g * (d + 1) + c] / mass[g];
    }
  }
  fill_empty(data, labels, mass, previous, out);
  return out;
}

CentroidUpdate update_centroids_serial(const Dataset& data,
                                       const Assignment& labels,
                                       const CentroidModel* previous) {
  check_update_args(data, labels, previous);
  const std::size_t d = data.dim();
  const auto k = static_cast<std::size_t>(labels.k);
  CentroidUpdate out{CentroidModel(k, d), 0};
  std::vector<double> mass(k, 0.0);
  std::vector<double> sums(k * d, 0.0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto g = static_cast<std::size_t>(labels.labels[i]);
    const auto x = data.row(i);
    for (std::size_t c = 0; c < d; ++c) sums[g * d + c] += data.weight(i) * x[c];
    mass[g] += data.weight(i);
  }
  for (std::size_t g = 0; g < k; ++g) {
    if (mass[g] > 0.0) {
      auto mu = out.model.row(g);
      for (std::size_t c = 0; c < d; ++c) mu[c] = sums[g * d + c] / mass[g];
    }
  }
  fill_empty(data, labels, mass, previous, out);
  return out;
}

ClusteringState lloyd_kmeans(const Dataset& data, std::size_t k,
                             std::uint64_t seed, std::size_t max_iters) {
  CentroidModel model = kmeanspp(data, k, derive_seed(seed, 0));
  ClusteringState state = assign_nearest(data, model);
  for (std::size_t it = 0; it < max_iters; ++it) {
    model = update_centroids(data, state.labels, &state.model).model;
    ClusteringState next = assign_nearest(data, model);
    const bool same = next.labels.labels == state.labels.labels;
    state = std::move(next);
    if (same) break;
  }
  return state;
}

namespace {

/// One COP-k-means run from fixed initial centroids.
std::optional<ClusteringState> cop_run(
    const Dataset& data, const std::vector<std::size_t>& comp_of,
    const std::vector<std::vector<std::size_t>>& cl_adj, std::size_t n_comp,
    CentroidModel model, std::size_t max_iters) {
  const std::size_t n = data.size();
  const std::size_t k = model.k();
  Assignment labels{std::vector<int>(n, 0), static_cast<int>(k)};
  std::vector<int> comp_label(n_comp);
  std::vector<std::pair<double, int>> order(k);
  for (std::size_t it = 0; it < max_iters; ++it) {
    std::fill(comp_label.begin(), comp_label.end(), -1);
    std::vector<int> next(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = comp_of[i];
      if (comp_label[c] >= 0) {
        next[i] = comp_label[c];
        continue;
      }
      for (std::size_t g = 0; g < k; ++g) {
        order[g] = {squared_distance(data.row(i), model.row(g)), static_cast<int>(g)};
      }
      std::sort(order.begin(), order.end());
      int pick = -1;
      for (const auto& [dist, g] : order) {
        bool ok = true;
        for (auto other : cl_adj[c]) {
          if (comp_label[other] == g) {
            ok = false;
            break;
          }
        }
        if (ok) {
          pick = g;
          break;
        }
      }
      if (pick < 0) return std::nullopt;
      comp_label[c] = pick;
      next[i] = pick;
    }
    const bool same = it > 0 && next == labels.labels;
    labels.labels = std::move(next);
    if (same) break;
    model = update_centroids(data, labels, &model).model;
  }
  ClusteringState state;
  state.sse = kernels::weighted_sse(data, model, labels.labels);
  state.model = std::move(model);
  state.labels = std::move(labels);
  return state;
}

}  // namespace

std::optional<ClusteringState> cop_kmeans(const Dataset& data,
                                          const ConstraintSet& constraints,
                                          std::size_t k, std::uint64_t seed,
                                          const CopOptions& opts) {
  const std::size_t n = data.size();
  constraints.validate(n);
  // Transitive ML closure as components; CL lifted between components.
  UnionFind uf(n);
  for (const auto& [a, b] : constraints.ml()) uf.unite(a, b);
  std::vector<std::size_t> comp_of(n);
  std::vector<std::size_t> root_id(n, n);
  std::size_t n_comp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = uf.find(i);
    if (root_id[r] == n) root_id[r] = n_comp++;
    comp_of[i] = root_id[r];
  }
  std::vector<std::vector<std::size_t>> cl_adj(n_comp);
  for (const auto& [a, b] : constraints.cl()) {
    const auto ca = comp_of[a];
    const auto cb = comp_of[b];
    if (ca == cb) return std::nullopt;
    cl_adj[ca].push_back(cb);
    cl_adj[cb].push_back(ca);
  }

  std::optional<ClusteringState> best;
  for (std::size_t r = 0; r < opts.restarts; ++r) {
    auto run = cop_run(data, comp_of, cl_adj, n_comp,
                       kmeanspp(data, k, derive_seed(seed, r)), opts.max_iters);
    if (run && (!best || run->sse < best->sse)) best = std::move(run);
  }
  return best;
}

}  // namespace pass
