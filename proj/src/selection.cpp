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

#include "pass/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pass {

namespace {

void check_selectable(const Dataset& data, const CentroidModel& model,
                      const Assignment& labels) {
  if (model.k() < 2) throw InputError("subset selection needs k >= 2");
  if (labels.size() != data.size()) throw InputError("label count mismatch");
  if (static_cast<std::size_t>(labels.k) != model.k()) {
    throw InputError("label k does not match centroid count");
  }
}

std::size_t ceil_count(double x) {
  return x <= 0.0 ? 0 : static_cast<std::size_t>(std::ceil(x - 1e-9));
}

}  // namespace

std::vector<double> compute_margins(const Dataset& data,
                                    const CentroidModel& model,
                                    const Assignment& labels) {
  check_selectable(data, model, labels);
  std::vector<double> m(data.size());
  kernels::signed_margins(data, model, labels.labels, m);
  return m;
}

std::vector<std::size_t> find_violations(const Assignment& labels,
                                         const ConstraintSet& cl) {
  std::vector<std::size_t> v;
  for (const auto& [a, b] : cl.cl()) {
    if (labels.labels[a] == labels.labels[b]) {
      v.push_back(a);
      v.push_back(b);
    }
  }
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) throw InputError("percentile of empty set");
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(p, 0.0, 100.0) / 100.0 *
                     static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

WorkingSubset select_ca(const Dataset& data, const CentroidModel& model,
                        const Assignment& labels, const ConstraintSet& cl,
                        double p) {
  if (!(p > 0.0 && p < 100.0)) throw InputError("percentile must be in (0, 100)");
  WorkingSubset ws;
  ws.kind = SelectorKind::ConstraintAware;
  ws.margins = compute_margins(data, model, labels);
  ws.violations = find_violations(labels, cl);

  std::vector<double> gaps(ws.margins.size());
  std::transform(ws.margins.begin(), ws.margins.end(), gaps.begin(),
                 [](double m) { return -m; });
  ws.tau = std::max(0.0, percentile(std::move(gaps), p));

  std::vector<char> in(data.size(), 0);
  for (auto i : ws.violations) in[i] = 1;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (ws.margins[i] > -ws.tau) in[i] = 1;
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (in[i]) ws.indices.push_back(i);
  }
  return ws;
}

std::vector<double> soft_assignments(const Dataset& data,
                                     const CentroidModel& model,
                                     double temperature) {
  std::vector<double> probs(data.size() * model.k());
  kernels::soft_assignments(data, model, temperature, probs);
  return probs;
}

double default_temperature(const Dataset& data, const CentroidModel& model) {
  std::vector<int> labels(data.size());
  std::vector<double> dist(data.size());
  kernels::assign_nearest(data, model, labels, dist);
  const double med = percentile(dist, 50.0);
  if (med > 0.0) return med;
  const double mean =
      std::accumulate(dist.begin(), dist.end(), 0.0) / static_cast<double>(dist.size());
  return mean > 0.0 ? mean : 1.0;
}

std::size_t budget(std::size_t n, std::size_t k, std::size_t n_violations,
                   double alpha, double beta) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InputError("alpha must be in (0, 1]");
  if (!(beta > 0.0)) throw InputError("beta must be positive");
  const std::size_t cap = ceil_count(alpha * static_cast<double>(n));
  const std::size_t log_term =
      n_violations +
      ceil_count(beta * static_cast<double>(k) * std::log(static_cast<double>(n)));
  const std::size_t m = std::max(n_violations, std::min(cap, log_term));
  return std::min(m, n);
}

WorkingSubset select_ig(const Dataset& data, const CentroidModel& model,
                        const Assignment& labels, const ConstraintSet& cl,
                        double temperature, double alpha, double beta) {
  WorkingSubset ws;
  ws.kind = SelectorKind::InfoGeometric;
  ws.margins = compute_margins(data, model, labels);
  ws.violations = find_violations(labels, cl);
  ws.scores.resize(data.size());
  kernels::fisher_rao_scores(data, model, temperature, ws.scores);
  ws.budget = budget(data.size(), model.k(), ws.violations.size(), alpha, beta);

  std::vector<char> in(data.size(), 0);
  for (auto i : ws.violations) in[i] = 1;
  std::vector<std::size_t> rest;
  rest.reserve(data.size() - ws.violations.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!in[i]) rest.push_back(i);
  }
  const std::size_t take = ws.budget - ws.violations.size();
  std::partial_sort(rest.begin(), rest.begin() + take, rest.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (ws.scores[a] != ws.scores[b]) {
                        return ws.scores[a] > ws.scores[b];
                      }
                      return a < b;
                    });
  for (std::size_t t = 0; t < take; ++t) in[rest[t]] = 1;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (in[i]) ws.indices.push_back(i);
  }
  return ws;
}

}  // namespace pass
