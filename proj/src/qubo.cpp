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

#include "pass/qubo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace pass {

namespace {

bool bit(std::uint64_t bits, std::size_t v) { return (bits >> v) & 1U; }

std::uint64_t reverse_bits(std::uint64_t x, std::size_t n) {
  std::uint64_t r = 0;
  for (std::size_t v = 0; v < n; ++v) r |= ((x >> v) & 1U) << (n - 1 - v);
  return r;
}

/// Dense symmetric coupling matrix with zero diagonal.
std::vector<double> dense_couplings(const QuboModel& q) {
  const std::size_t n = q.n_vars();
  std::vector<double> dense(n * n, 0.0);
  for (const auto& t : q.quadratic) {
    dense[t.i * n + t.j] = t.value;
    dense[t.j * n + t.i] = t.value;
  }
  return dense;
}

void check_dense(const QuboModel& q) {
  if (q.n_vars() > kMaxDenseVars) {
    throw InputError("QUBO has " + std::to_string(q.n_vars()) +
                     " variables; dense evaluation supports at most " +
                     std::to_string(kMaxDenseVars));
  }
}

}  // namespace

double QuboModel::energy(std::uint64_t bits) const {
  double e = constant;
  for (std::size_t v = 0; v < n_vars(); ++v) {
    if (bit(bits, v)) e += linear[v];
  }
  for (const auto& t : quadratic) {
    if (bit(bits, t.i) && bit(bits, t.j)) e += t.value;
  }
  return e;
}

bool QuboModel::one_hot(std::uint64_t bits) const {
  for (std::size_t s = 0; s < samples; ++s) {
    int ones = 0;
    for (std::size_t g = 0; g < k; ++g) ones += bit(bits, var(s, static_cast<int>(g)));
    if (ones != 1) return false;
  }
  return true;
}

bool QuboModel::feasible(std::uint64_t bits) const {
  if (!one_hot(bits)) return false;
  for (std::size_t v = 0; v < n_vars(); ++v) {
    if (clamped[v] && bit(bits, v)) return false;
  }
  const auto labels = decode(bits);
  for (const auto& [a, b] : cl_internal) {
    if (labels[a] == labels[b]) return false;
  }
  for (const auto& [a, b] : ml_internal) {
    if (labels[a] != labels[b]) return false;
  }
  for (const auto& [u, g] : ml_external) {
    if (labels[u] != g) return false;
  }
  return true;
}

std::vector<int> QuboModel::decode(std::uint64_t bits) const {
  std::vector<int> labels(samples, -1);
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t g = 0; g < k; ++g) {
      if (bit(bits, var(s, static_cast<int>(g)))) {
        labels[s] = static_cast<int>(g);
        break;
      }
    }
  }
  return labels;
}

std::uint64_t QuboModel::encode(const std::vector<int>& labels) const {
  if (labels.size() != samples) throw InputError("label count mismatch");
  if (n_vars() > 64) throw InputError("bitstring encoding needs <= 64 variables");
  std::uint64_t bits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    if (labels[s] < 0 || static_cast<std::size_t>(labels[s]) >= k) {
      throw InputError("label out of range");
    }
    bits |= std::uint64_t{1} << var(s, labels[s]);
  }
  return bits;
}

double QuboModel::linear_cost(const std::vector<int>& labels) const {
  double total = 0.0;
  for (std::size_t s = 0; s < samples; ++s) total += deltas[s * k + labels[s]];
  return total;
}

double mean_positive_margin(const RestrictedModel& model) {
  if (model.size() == 0 || model.k < 2) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < model.k; ++g) {
      if (static_cast<int>(g) == model.current[i]) continue;
      lo = std::min(lo, model.delta(i, static_cast<int>(g)));
    }
    total += std::max(0.0, -lo);
  }
  return total / static_cast<double>(model.size());
}

double search_lambda_limit(const RestrictedModel& model, const QuboExtras& extras) {
  const std::size_t edges = model.internal_cl.size() + extras.ml_internal.size();
  if (edges == 0 || model.k < 2) return -1.0;
  return mean_positive_margin(model) * static_cast<double>(model.size()) /
         (32.0 * static_cast<double>(model.k - 1) * static_cast<double>(edges));
}

QuboModel build_qubo(const RestrictedModel& model, const QuboExtras& extras,
                     PenaltyMode mode) {
  QuboModel q;
  q.samples = model.size();
  q.k = model.k;
  q.mode = mode;
  q.deltas = model.deltas;
  q.warm_labels = model.current;
  q.cl_internal = model.internal_cl;
  q.ml_internal = extras.ml_internal;
  q.ml_external = extras.ml_external;
  const std::size_t n = q.n_vars();

  double abs_sum = 0.0;
  for (double dv : model.deltas) abs_sum += std::abs(dv);
  const double eval_lambda = abs_sum + 1e-6 * std::max(1.0, abs_sum);
  q.lambda = eval_lambda;
  if (mode == PenaltyMode::Search) {
    const double limit = search_lambda_limit(model, extras);
    // A zero cap (no positive margin) would drop every penalty.
    if (limit > 0.0) q.lambda = std::min(eval_lambda, limit);
  }
  const double lam = q.lambda;

  q.linear.assign(n, 0.0);
  q.clamped.assign(n, 0);
  std::map<std::pair<std::size_t, std::size_t>, double> quad;
  auto add_quad = [&](std::size_t a, std::size_t b, double v) {
    if (a > b) std::swap(a, b);
    quad[{a, b}] += v;
  };

  for (std::size_t s = 0; s < q.samples; ++s) {
    for (std::size_t g = 0; g < q.k; ++g) {
      q.linear[q.var(s, static_cast<int>(g))] += model.delta(s, static_cast<int>(g));
    }
    // lambda (1 - sum x)^2 = lambda (1 - sum x + 2 sum_{g<h} x_g x_h)
    q.constant += lam;
    for (std::size_t g = 0; g < q.k; ++g) {
      q.linear[q.var(s, static_cast<int>(g))] -= lam;
      for (std::size_t h = g + 1; h < q.k; ++h) {
        add_quad(q.var(s, static_cast<int>(g)), q.var(s, static_cast<int>(h)),
                 2.0 * lam);
      }
    }
    for (std::size_t g = 0; g < q.k; ++g) {
      if (!model.allows(s, static_cast<int>(g))) {
        const auto v = q.var(s, static_cast<int>(g));
        q.clamped[v] = 1;
        q.linear[v] += lam;
      }
    }
  }
  for (const auto& [u, v] : model.internal_cl) {
    for (std::size_t g = 0; g < q.k; ++g) {
      add_quad(q.var(u, static_cast<int>(g)), q.var(v, static_cast<int>(g)), lam);
    }
  }
  for (const auto& [u, v] : extras.ml_internal) {
    for (std::size_t g = 0; g < q.k; ++g) {
      q.linear[q.var(u, static_cast<int>(g))] += lam;
      q.linear[q.var(v, static_cast<int>(g))] += lam;
      add_quad(q.var(u, static_cast<int>(g)), q.var(v, static_cast<int>(g)),
               -2.0 * lam);
    }
  }
  for (const auto& [u, g_fixed] : extras.ml_external) {
    // The +lambda constant makes a matching assignment cost zero.
    q.constant += lam;
    for (std::size_t g = 0; g < q.k; ++g) q.linear[q.var(u, static_cast<int>(g))] += lam;
    q.linear[q.var(u, g_fixed)] -= 2.0 * lam;
  }

  for (const auto& [key, value] : quad) {
    if (value != 0.0) q.quadratic.push_back({key.first, key.second, value});
  }
  return q;
}

std::vector<double> qubo_diagonal_serial(const QuboModel& qubo) {
  check_dense(qubo);
  const std::uint64_t dim = std::uint64_t{1} << qubo.n_vars();
  std::vector<double> diag(dim);
  for (std::uint64_t x = 0; x < dim; ++x) diag[x] = qubo.energy(x);
  return diag;
}

std::vector<double> qubo_diagonal(const QuboModel& qubo) {
  check_dense(qubo);
  const std::size_t n = qubo.n_vars();
  const std::uint64_t dim = std::uint64_t{1} << n;
  const auto dense = dense_couplings(qubo);
  std::vector<double> diag(dim);
  // Blocks share their high bits; inside a block E(x) follows from E(x
  // without its lowest set bit) in O(n).
  const std::size_t low_bits = std::min<std::size_t>(n, 10);
  const std::uint64_t block = std::uint64_t{1} << low_bits;
  const auto blocks = static_cast<std::int64_t>(dim / block);
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::uint64_t base = static_cast<std::uint64_t>(b) * block;
    diag[base] = qubo.energy(base);
    for (std::uint64_t l = 1; l < block; ++l) {
      const std::uint64_t x = base | l;
      const auto v = static_cast<std::size_t>(std::countr_zero(l));
      const std::uint64_t prev = x & (x - 1);
      double e = diag[prev] + qubo.linear[v];
      for (std::uint64_t rest = prev; rest; rest &= rest - 1) {
        e += dense[static_cast<std::size_t>(std::countr_zero(rest)) * n + v];
      }
      diag[x] = e;
    }
  }
  return diag;
}

std::pair<std::uint64_t, double> brute_force_ground(const QuboModel& qubo) {
  const auto diag = qubo_diagonal(qubo);
  const std::size_t n = qubo.n_vars();
  std::uint64_t best = 0;
  for (std::uint64_t x = 1; x < diag.size(); ++x) {
    if (diag[x] < diag[best] ||
        (diag[x] == diag[best] && reverse_bits(x, n) < reverse_bits(best, n))) {
      best = x;
    }
  }
  return {best, diag[best]};
}

std::string format_qubo(const QuboModel& qubo) {
  std::ostringstream out;
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const auto& t : qubo.quadratic) {
    out << t.i << ' ' << t.j << ' ' << num(t.value) << '\n';
  }
  for (std::size_t v = 0; v < qubo.linear.size(); ++v) {
    out << v << ' ' << num(qubo.linear[v]) << '\n';
  }
  out << "constant " << num(qubo.constant) << '\n';
  return out.str();
}

void write_qubo(const std::string& path, const QuboModel& qubo) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << format_qubo(qubo);
}

}  // namespace pass
