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

#include "pass/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "pass/metrics.hpp"

namespace pass {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::size_t cl_violations(const ConstraintSet& cl, const std::vector<int>& labels) {
  std::size_t v = 0;
  for (const auto& [a, b] : cl.cl()) v += labels[a] == labels[b];
  return v;
}

}  // namespace

void PassConfig::validate() const {
  if (k < 1) throw InputError("k must be >= 1");
  if (max_iters < 1) throw InputError("max_iters must be >= 1");
  if (!(sse_rel_tol > 0.0)) throw InputError("sse_rel_tol must be positive");
  if (!(percentile > 0.0 && percentile < 100.0)) {
    throw InputError("selector percentile must be in (0, 100)");
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InputError("alpha must be in (0, 1]");
  if (!(beta > 0.0)) throw InputError("beta must be positive");
  if (candidate_width < 1) throw InputError("candidate width must be >= 1");
  if (!(time_limit > 0.0)) throw InputError("time limit must be positive");
}

PassResult run_pass(const Dataset& data, const ConstraintSet& constraints,
                    const PassConfig& config) {
  config.validate();
  const auto t_start = Clock::now();
  PassResult result;

  auto t0 = Clock::now();
  const auto [collapsed, cl] = collapse(data, constraints);
  result.phase_times.collapse = seconds_since(t0);
  const Dataset& pseudo = collapsed.data;
  const std::size_t k = config.k;
  if (k > pseudo.size()) {
    throw InputError("k=" + std::to_string(k) + " exceeds the " +
                     std::to_string(pseudo.size()) + " points left after collapse");
  }

  t0 = Clock::now();
  const CentroidModel init =
      init_minibatch(pseudo, k, config.minibatch, config.seed);
  ClusteringState state = assign_nearest(pseudo, init);
  result.phase_times.init = seconds_since(t0);

  double prev_sse = state.sse + collapsed.offset;
  for (std::size_t it = 1; it <= config.max_iters; ++it) {
    IterationTrace tr;
    if (k >= 2) {
      t0 = Clock::now();
      WorkingSubset ws;
      if (config.selector == SelectorKind::ConstraintAware) {
        ws = select_ca(pseudo, state.model, state.labels, cl, config.percentile);
      } else {
        const double temp = config.temperature > 0.0
                                ? config.temperature
                                : default_temperature(pseudo, state.model);
        ws = select_ig(pseudo, state.model, state.labels, cl, temp, config.alpha,
                       config.beta);
      }
      result.phase_times.selection += seconds_since(t0);
      tr.subset_size = ws.indices.size();

      if (!ws.indices.empty()) {
        t0 = Clock::now();
        const RestrictedModel rm = build_model(pseudo, state.model, state.labels,
                                               cl, ws.indices,
                                               config.candidate_width);
        const RestrictedSolution sol =
            config.solver == SolverKind::Exact
                ? solve_exact(rm, config.time_limit)
                : solve_local_search(rm, config.local_sweeps);
        result.phase_times.ilp += seconds_since(t0);
        tr.binaries = rm.binaries();
        tr.status = sol.status;
        // An infeasible solve keeps the warm-start labels for this round.
        if (sol.status != SolveStatus::Infeasible) {
          tr.objective = sol.objective;
          for (std::size_t li = 0; li < rm.size(); ++li) {
            state.labels.labels[rm.subset[li]] = sol.labels[li];
          }
        }
      }
    }

    t0 = Clock::now();
    CentroidUpdate upd = update_centroids(pseudo, state.labels);
    state.model = std::move(upd.model);
    state.sse = kernels::weighted_sse(pseudo, state.model, state.labels.labels);
    result.phase_times.centroids += seconds_since(t0);

    tr.reseeded = upd.reseeded;
    tr.sse = state.sse + collapsed.offset;
    tr.violations = cl_violations(cl, state.labels.labels);
    result.max_binaries = std::max(result.max_binaries, tr.binaries);
    result.trace.push_back(tr);
    result.iterations = it;

    const double rel = std::abs(prev_sse - tr.sse) /
                       std::max(std::abs(prev_sse), std::numeric_limits<double>::min());
    prev_sse = tr.sse;
    if (tr.violations == 0 && (rel < config.sse_rel_tol || k == 1)) {
      result.stabilized_at = it;
      break;
    }
    // With one cluster nothing moves after the first update.
    if (k == 1) break;
  }

  t0 = Clock::now();
  PostProcessResult post = post_process(collapsed, state.model, state.labels, cl);
  const Evaluation ev =
      evaluate(post.labels, data, constraints, state.model);
  CentroidUpdate final_model = update_centroids(data, post.labels, &state.model);
  result.phase_times.post = seconds_since(t0);

  result.labels = std::move(post.labels);
  result.centroids = std::move(final_model.model);
  result.sse = ev.sse;
  result.violations = ev.cl_violations;
  result.ml_violations = ev.ml_violations;
  result.phase_times.total = seconds_since(t_start);
  return result;
}

PostProcessResult post_process(const CollapsedInstance& collapsed,
                               const CentroidModel& model,
                               Assignment pseudo_labels,
                               const ConstraintSet& cl_projected) {
  const Dataset& pseudo = collapsed.data;
  const std::size_t n = pseudo.size();
  const std::size_t k = model.k();
  auto& lab = pseudo_labels.labels;
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [a, b] : cl_projected.cl()) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  auto free_for = [&](std::size_t e, int g) {
    for (auto j : adj[e]) {
      if (lab[j] == g) return false;
    }
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [a, b] : cl_projected.cl()) {
      if (lab[a] != lab[b]) continue;
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_e = n;
      int best_g = -1;
      for (const std::size_t e : {a, b}) {
        const double cur = squared_distance(pseudo.row(e), model.row(lab[e]));
        for (std::size_t g = 0; g < k; ++g) {
          const int gi = static_cast<int>(g);
          if (gi == lab[e] || !free_for(e, gi)) continue;
          const double cost =
              pseudo.weight(e) * (squared_distance(pseudo.row(e), model.row(g)) - cur);
          if (cost < best) {
            best = cost;
            best_e = e;
            best_g = gi;
          }
        }
      }
      if (best_g >= 0) {
        lab[best_e] = best_g;
        changed = true;
      }
    }
  }

  PostProcessResult out;
  out.residual = cl_violations(cl_projected, lab);
  out.labels = lift_assignment(collapsed, pseudo_labels);
  out.pseudo_labels = std::move(pseudo_labels);
  return out;
}

Evaluation evaluate(const Assignment& labels, const Dataset& data,
                    const ConstraintSet& constraints, const CentroidModel& model,
                    const std::vector<int>* truth) {
  if (labels.size() != data.size()) throw InputError("label count mismatch");
  Evaluation ev;
  const CentroidUpdate upd = update_centroids(data, labels, &model);
  ev.sse = kernels::weighted_sse(data, upd.model, labels.labels);
  const auto v = count_violations(constraints, labels.labels);
  ev.ml_violations = v.ml;
  ev.cl_violations = v.cl;
  if (truth != nullptr) {
    if (truth->size() != labels.size()) throw InputError("truth size mismatch");
    ev.ari = adjusted_rand_index(labels.labels, *truth);
    ev.ami = adjusted_mutual_info(labels.labels, *truth);
    ev.purity = purity(labels.labels, *truth);
  }
  return ev;
}

}  // namespace pass
