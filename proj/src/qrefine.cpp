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

#include "pass/qrefine.hpp"

#include <algorithm>
#include <chrono>

#include "pass/qaoa.hpp"
#include "pass/qubo.hpp"

namespace pass {

QaoaRefineResult qaoa_refine(const Dataset& data, const ConstraintSet& constraints,
                             const PassConfig& config,
                             const QaoaRefineOptions& opts) {
  QaoaRefineResult out;
  out.base = run_pass(data, constraints, config);
  const auto t0 = std::chrono::steady_clock::now();

  const auto [collapsed, cl] = collapse(data, constraints);
  const Dataset& pseudo = collapsed.data;
  const std::size_t k = config.k;
  Assignment labels;
  labels.k = k;
  labels.labels.resize(pseudo.size());
  for (std::size_t j = 0; j < pseudo.size(); ++j) {
    labels.labels[j] = out.base.labels.labels[collapsed.components[j].front()];
  }
  CentroidModel model = update_centroids(pseudo, labels).model;

  const std::size_t cap = k >= 2 ? std::min(opts.max_vars, kMaxDenseVars) / k : 0;
  for (std::size_t r = 0; r < opts.rounds && cap > 0; ++r) {
    const double temp = config.temperature > 0.0
                            ? config.temperature
                            : default_temperature(pseudo, model);
    const WorkingSubset ws =
        select_ig(pseudo, model, labels, cl, temp, config.alpha, config.beta);

    std::vector<std::size_t> subset(ws.violations.begin(), ws.violations.end());
    if (subset.size() > cap) subset.resize(cap);
    std::vector<char> in(pseudo.size(), 0);
    for (auto i : subset) in[i] = 1;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < pseudo.size(); ++i) {
      if (!in[i]) rest.push_back(i);
    }
    const std::size_t take = std::min(cap - subset.size(), rest.size());
    std::partial_sort(rest.begin(), rest.begin() + take, rest.end(),
                      [&](std::size_t a, std::size_t b) {
                        if (ws.scores[a] != ws.scores[b]) {
                          return ws.scores[a] > ws.scores[b];
                        }
                        return a < b;
                      });
    subset.insert(subset.end(), rest.begin(), rest.begin() + take);
    std::sort(subset.begin(), subset.end());
    if (subset.empty()) break;

    const RestrictedModel rm = build_model(pseudo, model, labels, cl, subset, k);
    const RestrictedSolution warm = solve_local_search(rm, config.local_sweeps);
    if (warm.status == SolveStatus::Infeasible) break;
    const QuboModel qubo = build_qubo(rm, {}, PenaltyMode::Search);
    if (r == 0) out.first_qubo = format_qubo(qubo);
    const QaoaRun run = run_qaoa_p1(qubo, qubo.encode(warm.labels), opts.shots,
                                    derive_seed(config.seed, 1000 + r));

    QaoaRefineRound rec;
    rec.subset_size = subset.size();
    rec.n_vars = qubo.n_vars();
    rec.lambda = qubo.lambda;
    rec.warm_objective = warm.objective;
    rec.expected_energy = run.expected_energy;
    rec.from_samples = run.best_from_samples;

    std::vector<int> chosen = warm.labels;
    if (run.best_from_samples) {
      std::vector<int> cand = qubo.decode(run.best);
      if (rm.feasible(cand) && rm.objective(cand) < warm.objective) {
        chosen = std::move(cand);
        rec.accepted = true;
      }
    }
    rec.objective = rm.objective(chosen);
    out.rounds.push_back(rec);
    if (rec.objective >= 0.0) break;
    for (std::size_t li = 0; li < rm.size(); ++li) {
      labels.labels[rm.subset[li]] = chosen[li];
    }
    model = update_centroids(pseudo, labels, &model).model;
  }

  PostProcessResult post = post_process(collapsed, model, labels, cl);
  const Evaluation ev = evaluate(post.labels, data, constraints, model);
  out.centroids = update_centroids(data, post.labels, &model).model;
  out.labels = std::move(post.labels);
  out.sse = ev.sse;
  out.violations = ev.cl_violations;
  out.ml_violations = ev.ml_violations;
  out.qaoa_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace pass
