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

#include "pass/restricted.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <numeric>

namespace pass {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::FeasibleHeuristic:
      return "feasible-heuristic";
    case SolveStatus::Infeasible:
      return "infeasible";
  }
  return "unknown";
}

bool RestrictedModel::allows(std::size_t i, int g) const {
  return std::binary_search(candidates[i].begin(), candidates[i].end(), g);
}

std::size_t RestrictedModel::binaries() const {
  std::size_t total = 0;
  for (const auto& c : candidates) total += c.size();
  return total;
}

double RestrictedModel::objective(const std::vector<int>& labels) const {
  double total = 0.0;
  for (std::size_t i = 0; i < size(); ++i) total += delta(i, labels[i]);
  return total;
}

bool RestrictedModel::feasible(const std::vector<int>& labels) const {
  if (labels.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!allows(i, labels[i])) return false;
  }
  for (const auto& [a, b] : internal_cl) {
    if (labels[a] == labels[b]) return false;
  }
  return true;
}

RestrictedModel build_model(const Dataset& data, const CentroidModel& model,
                            const Assignment& labels,
                            const ConstraintSet& cl_projected,
                            const std::vector<std::size_t>& subset,
                            std::size_t G) {
  const std::size_t n = data.size();
  const std::size_t k = model.k();
  if (k > 64) throw InputError("restricted assignment supports k <= 64");
  if (labels.size() != n) throw InputError("label count mismatch");
  const auto& cur = labels.labels;

  std::vector<std::vector<std::size_t>> adj(n);
  std::vector<char> violator(n, 0);
  for (const auto& [a, b] : cl_projected.cl()) {
    adj[a].push_back(b);
    adj[b].push_back(a);
    if (cur[a] == cur[b]) violator[a] = violator[b] = 1;
  }
  std::vector<std::size_t> local(n, n);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (subset[i] >= n) throw InputError("subset index out of range");
    local[subset[i]] = i;
  }

  RestrictedModel rm;
  rm.k = k;
  rm.subset = subset;
  const std::size_t m = subset.size();
  rm.current.resize(m);
  rm.candidates.resize(m);
  rm.external_forbidden.resize(m);
  rm.warm_start.resize(m);
  rm.deltas.resize(m * k);

#pragma omp parallel
  {
    std::vector<std::pair<double, int>> order(k);
    std::vector<char> mark(k);
    std::vector<char> forbid(k);
#pragma omp for schedule(static)
    for (std::size_t li = 0; li < m; ++li) {
      const std::size_t i = subset[li];
      const auto x = data.row(i);
      const int g_cur = cur[i];
      rm.current[li] = g_cur;
      for (std::size_t g = 0; g < k; ++g) {
        order[g] = {squared_distance(x, model.row(g)), static_cast<int>(g)};
      }
      const double c_cur = order[g_cur].first;
      for (std::size_t g = 0; g < k; ++g) {
        rm.deltas[li * k + g] = data.weight(i) * (order[g].first - c_cur);
      }
      rm.deltas[li * k + g_cur] = 0.0;

      std::fill(mark.begin(), mark.end(), 0);
      std::fill(forbid.begin(), forbid.end(), 0);
      bool expand = violator[i] != 0;
      for (auto j : adj[i]) expand = expand || violator[j] != 0;
      if (expand || G >= k) {
        std::fill(mark.begin(), mark.end(), 1);
      } else {
        std::partial_sort(order.begin(), order.begin() + G, order.end());
        for (std::size_t t = 0; t < G; ++t) mark[order[t].second] = 1;
      }
      mark[g_cur] = 1;
      for (auto j : adj[i]) {
        mark[cur[j]] = 1;
        if (local[j] == n) forbid[cur[j]] = 1;
      }
      bool any = false;
      for (std::size_t g = 0; g < k; ++g) {
        if (forbid[g]) {
          rm.external_forbidden[li].push_back(static_cast<int>(g));
          mark[g] = 0;
        }
        any = any || mark[g] != 0;
      }
      if (!any) {
        for (std::size_t g = 0; g < k; ++g) mark[g] = !forbid[g];
      }
      for (std::size_t g = 0; g < k; ++g) {
        if (mark[g]) rm.candidates[li].push_back(static_cast<int>(g));
      }
      rm.warm_start[li] = mark[g_cur] ? g_cur : -1;
    }
  }

  for (const auto& [a, b] : cl_projected.cl()) {
    if (local[a] != n && local[b] != n) {
      rm.internal_cl.push_back(canonical_pair(local[a], local[b]));
    }
  }
  std::sort(rm.internal_cl.begin(), rm.internal_cl.end());
  rm.internal_cl.erase(std::unique(rm.internal_cl.begin(), rm.internal_cl.end()),
                       rm.internal_cl.end());
  return rm;
}

namespace {

std::vector<std::vector<std::size_t>> local_adjacency(const RestrictedModel& rm) {
  std::vector<std::vector<std::size_t>> adj(rm.size());
  for (const auto& [a, b] : rm.internal_cl) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  return adj;
}

bool used_by_neighbor(const std::vector<std::size_t>& nbrs,
                      const std::vector<int>& labels, int g,
                      std::size_t skip = static_cast<std::size_t>(-1)) {
  for (auto j : nbrs) {
    if (j != skip && labels[j] == g) return true;
  }
  return false;
}

/// Cheapest candidate of i not used by its neighbours, or -1.
int cheapest_free(const RestrictedModel& rm,
                  const std::vector<std::vector<std::size_t>>& adj,
                  const std::vector<int>& labels, std::size_t i) {
  int best = -1;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int g : rm.candidates[i]) {
    if (used_by_neighbor(adj[i], labels, g)) continue;
    if (rm.delta(i, g) < best_cost) {
      best_cost = rm.delta(i, g);
      best = g;
    }
  }
  return best;
}

}  // namespace

RestrictedSolution solve_local_search(const RestrictedModel& rm,
                                      std::size_t max_sweeps) {
  const std::size_t m = rm.size();
  const auto adj = local_adjacency(rm);
  RestrictedSolution sol;
  sol.labels.resize(m);

  for (std::size_t i = 0; i < m; ++i) {
    if (rm.candidates[i].empty()) {
      sol.labels = rm.current;
      sol.objective = 0.0;
      sol.status = SolveStatus::Infeasible;
      return sol;
    }
    if (rm.warm_start[i] >= 0) {
      sol.labels[i] = rm.warm_start[i];
    } else {
      int best = rm.candidates[i].front();
      for (int g : rm.candidates[i]) {
        if (rm.delta(i, g) < rm.delta(i, best)) best = g;
      }
      sol.labels[i] = best;
    }
  }

  // Repair pass. A point that moves takes a label none of its neighbours
  // holds, so no repaired edge is broken again later in the pass.
  for (std::size_t i = 0; i < m; ++i) {
    if (!used_by_neighbor(adj[i], sol.labels, sol.labels[i])) continue;
    const int g = cheapest_free(rm, adj, sol.labels, i);
    if (g < 0) {
      sol.objective = rm.objective(sol.labels);
      sol.status = SolveStatus::Infeasible;
      return sol;
    }
    sol.labels[i] = g;
  }

  constexpr double kEps = 1e-12;
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    ++sol.sweeps;
    bool improved = false;
    for (std::size_t i = 0; i < m; ++i) {
      const int g = cheapest_free(rm, adj, sol.labels, i);
      if (g >= 0 && rm.delta(i, g) < rm.delta(i, sol.labels[i]) - kEps) {
        sol.labels[i] = g;
        improved = true;
      }
    }
    for (const auto& [u, v] : rm.internal_cl) {
      const int a = sol.labels[u];
      const int b = sol.labels[v];
      if (!rm.allows(u, b) || !rm.allows(v, a)) continue;
      if (used_by_neighbor(adj[u], sol.labels, b, v) ||
          used_by_neighbor(adj[v], sol.labels, a, u)) {
        continue;
      }
      const double before = rm.delta(u, a) + rm.delta(v, b);
      const double after = rm.delta(u, b) + rm.delta(v, a);
      if (after < before - kEps) {
        sol.labels[u] = b;
        sol.labels[v] = a;
        improved = true;
      }
    }
    if (!improved) break;
  }
  sol.objective = rm.objective(sol.labels);
  sol.status = SolveStatus::FeasibleHeuristic;
  return sol;
}

namespace {

using Clock = std::chrono::steady_clock;

class ComponentSearch {
 public:
  ComponentSearch(const RestrictedModel& rm,
                  const std::vector<std::vector<std::size_t>>& adj,
                  const std::vector<std::size_t>& members, Clock::time_point deadline)
      : rm_(rm), adj_(adj), members_(members), deadline_(deadline) {
    pos_.assign(rm.size(), static_cast<std::size_t>(-1));
    for (std::size_t t = 0; t < members.size(); ++t) pos_[members[t]] = t;
  }

  /// Returns true when the search finished (optimality or infeasibility
  /// proven); `best` holds the best labeling found, empty if none.
  bool run(std::vector<int> incumbent, double incumbent_cost) {
    best_ = std::move(incumbent);
    best_cost_ = best_.empty() ? std::numeric_limits<double>::infinity()
                               : incumbent_cost;
    std::vector<std::uint64_t> dom(members_.size(), 0);
    for (std::size_t t = 0; t < members_.size(); ++t) {
      for (int g : rm_.candidates[members_[t]]) dom[t] |= std::uint64_t{1} << g;
    }
    std::vector<int> assign(members_.size(), -1);
    dfs(dom, assign, 0.0, 0);
    return !timed_out_;
  }

  const std::vector<int>& best() const { return best_; }
  double best_cost() const { return best_cost_; }
  std::size_t nodes() const { return nodes_; }

 private:
  double min_delta(std::size_t t, std::uint64_t dom) const {
    double lo = std::numeric_limits<double>::infinity();
    while (dom) {
      const int g = std::countr_zero(dom);
      dom &= dom - 1;
      lo = std::min(lo, rm_.delta(members_[t], g));
    }
    return lo;
  }

  void dfs(const std::vector<std::uint64_t>& dom, std::vector<int>& assign,
           double cost, std::size_t depth) {
    if (timed_out_) return;
    if ((++nodes_ & 1023) == 0 && Clock::now() > deadline_) {
      timed_out_ = true;
      return;
    }
    if (depth == members_.size()) {
      if (cost < best_cost_ - 1e-12) {
        best_cost_ = cost;
        best_ = assign;
      }
      return;
    }
    double bound = cost;
    std::size_t pick = members_.size();
    int pick_size = std::numeric_limits<int>::max();
    for (std::size_t t = 0; t < members_.size(); ++t) {
      if (assign[t] >= 0) continue;
      if (dom[t] == 0) return;
      bound += min_delta(t, dom[t]);
      const int sz = std::popcount(dom[t]);
      if (sz < pick_size) {
        pick_size = sz;
        pick = t;
      }
    }
    if (bound >= best_cost_ - 1e-12) return;

    std::vector<std::pair<double, int>> values;
    for (std::uint64_t rest = dom[pick]; rest; rest &= rest - 1) {
      const int g = std::countr_zero(rest);
      values.emplace_back(rm_.delta(members_[pick], g), g);
    }
    std::sort(values.begin(), values.end());
    std::vector<std::uint64_t> next(dom.size());
    for (const auto& [dv, g] : values) {
      next = dom;
      const std::uint64_t bit = std::uint64_t{1} << g;
      bool dead = false;
      for (auto j : adj_[members_[pick]]) {
        const auto tj = pos_[j];
        if (assign[tj] >= 0) continue;
        next[tj] &= ~bit;
        if (next[tj] == 0) {
          dead = true;
          break;
        }
      }
      if (dead) continue;
      assign[pick] = g;
      dfs(next, assign, cost + dv, depth + 1);
      assign[pick] = -1;
      if (timed_out_) return;
    }
  }

  const RestrictedModel& rm_;
  const std::vector<std::vector<std::size_t>>& adj_;
  const std::vector<std::size_t>& members_;
  Clock::time_point deadline_;
  std::vector<std::size_t> pos_;
  std::vector<int> best_;
  double best_cost_ = 0.0;
  std::size_t nodes_ = 0;
  bool timed_out_ = false;
};

}  // namespace

RestrictedSolution solve_exact(const RestrictedModel& rm,
                               double time_limit_seconds) {
  const auto deadline =
      Clock::now() + std::chrono::duration_cast<Clock::duration>(
                         std::chrono::duration<double>(time_limit_seconds));
  const std::size_t m = rm.size();
  const auto adj = local_adjacency(rm);
  const RestrictedSolution seed = solve_local_search(rm);
  const bool have_seed = seed.status != SolveStatus::Infeasible;

  // Connected components of the internal CL graph, in index order.
  std::vector<std::size_t> comp(m, m);
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t s = 0; s < m; ++s) {
    if (comp[s] != m) continue;
    members.emplace_back();
    std::vector<std::size_t> stack{s};
    comp[s] = members.size() - 1;
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      members.back().push_back(u);
      for (auto v : adj[u]) {
        if (comp[v] == m) {
          comp[v] = comp[s];
          stack.push_back(v);
        }
      }
    }
    std::sort(members.back().begin(), members.back().end());
  }

  RestrictedSolution sol;
  sol.labels = have_seed ? seed.labels : rm.current;
  sol.sweeps = seed.sweeps;
  bool all_finished = true;
  bool infeasible = false;
  for (const auto& group : members) {
    std::vector<int> incumbent;
    double incumbent_cost = 0.0;
    if (have_seed) {
      for (auto u : group) {
        incumbent.push_back(seed.labels[u]);
        incumbent_cost += rm.delta(u, seed.labels[u]);
      }
    }
    if (group.size() == 1) {
      const auto u = group[0];
      if (rm.candidates[u].empty()) {
        infeasible = true;
        continue;
      }
      int best = rm.candidates[u].front();
      for (int g : rm.candidates[u]) {
        if (rm.delta(u, g) < rm.delta(u, best)) best = g;
      }
      sol.labels[u] = best;
      continue;
    }
    ComponentSearch search(rm, adj, group, deadline);
    const bool finished = search.run(std::move(incumbent), incumbent_cost);
    sol.nodes += search.nodes();
    if (search.best().empty()) {
      infeasible = true;
      all_finished = all_finished && finished;
      continue;
    }
    for (std::size_t t = 0; t < group.size(); ++t) {
      sol.labels[group[t]] = search.best()[t];
    }
    all_finished = all_finished && finished;
  }

  if (infeasible) {
    sol.labels = rm.current;
    sol.objective = 0.0;
    sol.status = SolveStatus::Infeasible;
    return sol;
  }
  sol.objective = rm.objective(sol.labels);
  sol.status = all_finished ? SolveStatus::Optimal : SolveStatus::FeasibleHeuristic;
  return sol;
}

}  // namespace pass
