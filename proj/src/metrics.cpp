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

#include "pass/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "pass/data_model.hpp"

namespace pass {

namespace {

struct Contingency {
  std::vector<std::vector<double>> table;
  std::vector<double> rows;
  std::vector<double> cols;
  double n = 0.0;
};

Contingency contingency(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw InputError("labeling size mismatch");
  const int ra = a.empty() ? 0 : *std::max_element(a.begin(), a.end()) + 1;
  const int rb = b.empty() ? 0 : *std::max_element(b.begin(), b.end()) + 1;
  Contingency c;
  c.table.assign(ra, std::vector<double>(rb, 0.0));
  c.rows.assign(ra, 0.0);
  c.cols.assign(rb, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || b[i] < 0) throw InputError("labels must be nonnegative");
    c.table[a[i]][b[i]] += 1.0;
    c.rows[a[i]] += 1.0;
    c.cols[b[i]] += 1.0;
  }
  c.n = static_cast<double>(a.size());
  return c;
}

double comb2(double x) { return x * (x - 1.0) / 2.0; }

double entropy(const std::vector<double>& counts, double n) {
  double h = 0.0;
  for (double c : counts) {
    if (c > 0.0) h -= c / n * std::log(c / n);
  }
  return h;
}

}  // namespace

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
  const auto c = contingency(a, b);
  double index = 0.0;
  for (const auto& row : c.table) {
    for (double v : row) index += comb2(v);
  }
  double sa = 0.0;
  double sb = 0.0;
  for (double v : c.rows) sa += comb2(v);
  for (double v : c.cols) sb += comb2(v);
  const double expected = sa * sb / comb2(c.n);
  const double max_index = 0.5 * (sa + sb);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

double adjusted_mutual_info(std::span<const int> a, std::span<const int> b) {
  const auto c = contingency(a, b);
  const double n = c.n;
  double mi = 0.0;
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    for (std::size_t j = 0; j < c.cols.size(); ++j) {
      const double nij = c.table[i][j];
      if (nij > 0.0) mi += nij / n * std::log(n * nij / (c.rows[i] * c.cols[j]));
    }
  }
  // Expected MI under the hypergeometric model.
  double emi = 0.0;
  for (double ai : c.rows) {
    if (ai == 0.0) continue;
    for (double bj : c.cols) {
      if (bj == 0.0) continue;
      const double lo = std::max(1.0, ai + bj - n);
      const double hi = std::min(ai, bj);
      for (double nij = lo; nij <= hi; nij += 1.0) {
        const double term = nij / n * std::log(n * nij / (ai * bj));
        const double logp = std::lgamma(ai + 1) + std::lgamma(bj + 1) +
                            std::lgamma(n - ai + 1) + std::lgamma(n - bj + 1) -
                            std::lgamma(n + 1) - std::lgamma(nij + 1) -
                            std::lgamma(ai - nij + 1) - std::lgamma(bj - nij + 1) -
                            std::lgamma(n - ai - bj + nij + 1);
        emi += term * std::exp(logp);
      }
    }
  }
  const double ha = entropy(c.rows, n);
  const double hb = entropy(c.cols, n);
  const double denom = 0.5 * (ha + hb) - emi;
  if (std::abs(denom) < 1e-15) return 1.0;
  return (mi - emi) / denom;
}

double purity(std::span<const int> labels, std::span<const int> truth) {
  const auto c = contingency(labels, truth);
  double hits = 0.0;
  for (const auto& row : c.table) {
    if (!row.empty()) hits += *std::max_element(row.begin(), row.end());
  }
  return c.n > 0.0 ? hits / c.n : 0.0;
}

}  // namespace pass
