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

#include "pass/qaoa.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

namespace pass {

namespace {

/// Spreads `base` over the qubit positions other than lo < hi.
inline std::uint64_t insert_zeros(std::uint64_t base, std::size_t lo,
                                  std::size_t hi) {
  const std::uint64_t lo_mask = (std::uint64_t{1} << lo) - 1;
  base = ((base & ~lo_mask) << 1) | (base & lo_mask);
  const std::uint64_t hi_mask = (std::uint64_t{1} << hi) - 1;
  return ((base & ~hi_mask) << 1) | (base & hi_mask);
}

void check_state(const StateVector& state, const MixerLayout& layout) {
  if (state.size() != (std::uint64_t{1} << layout.n_qubits())) {
    throw InputError("state vector dimension does not match the mixer layout");
  }
}

template <bool Parallel>
void mixer_impl(StateVector& state, double beta, const MixerLayout& layout) {
  check_state(state, layout);
  const double c = std::cos(2.0 * beta);
  const Amplitude minus_is{0.0, -std::sin(2.0 * beta)};
  const std::size_t n = layout.n_qubits();
  if (n < 2) return;
  const auto quarter = static_cast<std::int64_t>(std::uint64_t{1} << (n - 2));
  for (std::size_t s = 0; s < layout.samples; ++s) {
    for (std::size_t g = 0; g < layout.k; ++g) {
      for (std::size_t h = g + 1; h < layout.k; ++h) {
        const std::size_t a = layout.k * s + g;
        const std::size_t b = layout.k * s + h;
        const std::uint64_t bit_a = std::uint64_t{1} << a;
        const std::uint64_t bit_b = std::uint64_t{1} << b;
#pragma omp parallel for schedule(static) if (Parallel)
        for (std::int64_t base = 0; base < quarter; ++base) {
          const std::uint64_t z = insert_zeros(static_cast<std::uint64_t>(base), a, b);
          const std::uint64_t x = z | bit_a;
          const std::uint64_t y = z | bit_b;
          const Amplitude ax = state[x];
          const Amplitude ay = state[y];
          state[x] = c * ax + minus_is * ay;
          state[y] = c * ay + minus_is * ax;
        }
      }
    }
  }
}

}  // namespace

StateVector basis_state(std::size_t n_qubits, std::uint64_t bits) {
  if (n_qubits > kMaxDenseVars) throw InputError("too many qubits for a dense state");
  StateVector state(std::uint64_t{1} << n_qubits, Amplitude{0.0, 0.0});
  state.at(bits) = 1.0;
  return state;
}

void apply_phase(StateVector& state, const std::vector<double>& diagonal,
                 double gamma) {
  if (diagonal.size() != state.size()) throw InputError("diagonal size mismatch");
  const auto dim = static_cast<std::int64_t>(state.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < dim; ++x) {
    state[x] *= std::polar(1.0, -gamma * diagonal[x]);
  }
}

void apply_xy_mixer(StateVector& state, double beta, const MixerLayout& layout) {
  mixer_impl<true>(state, beta, layout);
}

void apply_xy_mixer_serial(StateVector& state, double beta,
                           const MixerLayout& layout) {
  mixer_impl<false>(state, beta, layout);
}

double expectation(const StateVector& state, const std::vector<double>& diagonal) {
  if (diagonal.size() != state.size()) throw InputError("diagonal size mismatch");
  double e = 0.0;
  for (std::size_t x = 0; x < state.size(); ++x) e += std::norm(state[x]) * diagonal[x];
  return e;
}

double one_hot_leakage(const StateVector& state, const MixerLayout& layout) {
  check_state(state, layout);
  const std::uint64_t group = (std::uint64_t{1} << layout.k) - 1;
  double leak = 0.0;
  for (std::uint64_t x = 0; x < state.size(); ++x) {
    bool ok = true;
    for (std::size_t s = 0; s < layout.samples && ok; ++s) {
      ok = std::popcount((x >> (layout.k * s)) & group) == 1;
    }
    if (!ok) leak += std::norm(state[x]);
  }
  return leak;
}

GateCount mixer_gate_count(std::size_t k, std::size_t samples) {
  if (k < 2) throw InputError("mixer needs k >= 2");
  return {samples * k * (k - 1) / 2, k % 2 == 0 ? k - 1 : k};
}

std::vector<std::vector<std::pair<int, int>>> mixer_schedule(std::size_t k) {
  if (k < 2) throw InputError("mixer needs k >= 2");
  // Circle method on an even vertex count; the extra vertex for odd k is a
  // bye and its edges are dropped.
  const std::size_t m = k % 2 == 0 ? k : k + 1;
  std::vector<std::vector<std::pair<int, int>>> layers(m - 1);
  for (std::size_t r = 0; r + 1 < m; ++r) {
    for (std::size_t t = 0; t < m / 2; ++t) {
      const std::size_t u = t == 0 ? m - 1 : (r + t) % (m - 1);
      const std::size_t v = (r + m - 1 - t) % (m - 1);
      if (u >= k || v >= k) continue;
      layers[r].emplace_back(static_cast<int>(std::min(u, v)),
                             static_cast<int>(std::max(u, v)));
    }
    std::sort(layers[r].begin(), layers[r].end());
  }
  return layers;
}

double qaoa_p1_energy(const QuboModel& qubo, const std::vector<double>& diagonal,
                      std::uint64_t warm_start, double gamma, double beta) {
  StateVector state = basis_state(qubo.n_vars(), warm_start);
  apply_phase(state, diagonal, gamma);
  apply_xy_mixer(state, beta, MixerLayout{qubo.samples, qubo.k});
  return expectation(state, diagonal);
}

QaoaRun run_qaoa_p1(const QuboModel& qubo, std::uint64_t warm_start,
                    std::size_t shots, std::uint64_t seed,
                    const QaoaOptions& opts) {
  if (qubo.n_vars() > kMaxDenseVars) {
    throw InputError("QAOA simulation supports at most " +
                     std::to_string(kMaxDenseVars) + " variables");
  }
  if (!qubo.feasible(warm_start)) throw InputError("QAOA warm start is infeasible");
  const auto diag = qubo_diagonal(qubo);
  const MixerLayout layout{qubo.samples, qubo.k};

  auto energy_at = [&](double gamma, double beta) {
    return qaoa_p1_energy(qubo, diag, warm_start, gamma, beta);
  };

  double best_gamma = 0.0;
  double best_beta = 0.0;
  double best_e = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < opts.gamma_points; ++a) {
    const double gamma = std::numbers::pi * static_cast<double>(a) /
                         static_cast<double>(opts.gamma_points);
    for (std::size_t b = 0; b < opts.beta_points; ++b) {
      const double beta = std::numbers::pi / 4.0 * static_cast<double>(b + 1) /
                          static_cast<double>(opts.beta_points);
      const double e = energy_at(gamma, beta);
      if (e < best_e) {
        best_e = e;
        best_gamma = gamma;
        best_beta = beta;
      }
    }
  }

  // Nelder-Mead from the grid optimum.
  {
    using Point = std::array<double, 2>;
    const double step_g = std::numbers::pi / static_cast<double>(2 * opts.gamma_points);
    const double step_b = std::numbers::pi / static_cast<double>(8 * opts.beta_points);
    std::array<Point, 3> p{Point{best_gamma, best_beta},
                           Point{best_gamma + step_g, best_beta},
                           Point{best_gamma, best_beta + step_b}};
    std::array<double, 3> f{best_e, energy_at(p[1][0], p[1][1]),
                            energy_at(p[2][0], p[2][1])};
    std::size_t evals = 2;
    auto eval = [&](const Point& q) {
      ++evals;
      return energy_at(q[0], q[1]);
    };
    while (evals < opts.refine_evals) {
      std::array<std::size_t, 3> o{0, 1, 2};
      std::sort(o.begin(), o.end(), [&](auto i, auto j) { return f[i] < f[j]; });
      const Point& lo = p[o[0]];
      const Point& mid = p[o[1]];
      const std::size_t worst = o[2];
      const Point centroid{(lo[0] + mid[0]) / 2.0, (lo[1] + mid[1]) / 2.0};
      auto along = [&](double t) {
        return Point{centroid[0] + t * (p[worst][0] - centroid[0]),
                     centroid[1] + t * (p[worst][1] - centroid[1])};
      };
      const Point refl = along(-1.0);
      const double fr = eval(refl);
      if (fr < f[o[0]]) {
        const Point exp = along(-2.0);
        const double fe = eval(exp);
        if (fe < fr) {
          p[worst] = exp;
          f[worst] = fe;
        } else {
          p[worst] = refl;
          f[worst] = fr;
        }
      } else if (fr < f[o[1]]) {
        p[worst] = refl;
        f[worst] = fr;
      } else {
        const Point con = along(0.5);
        const double fc = eval(con);
        if (fc < f[worst]) {
          p[worst] = con;
          f[worst] = fc;
        } else {
          for (auto i : {o[1], o[2]}) {
            p[i] = Point{(p[i][0] + lo[0]) / 2.0, (p[i][1] + lo[1]) / 2.0};
            f[i] = eval(p[i]);
          }
        }
      }
    }
    for (std::size_t i = 0; i < 3; ++i) {
      if (f[i] < best_e) {
        best_e = f[i];
        best_gamma = p[i][0];
        best_beta = p[i][1];
      }
    }
  }

  QaoaRun run;
  run.gammas = {best_gamma};
  run.betas = {best_beta};
  run.expected_energy = best_e;
  run.warm_energy = diag[warm_start];
  run.shots = shots;
  run.statevector = basis_state(qubo.n_vars(), warm_start);
  apply_phase(run.statevector, diag, best_gamma);
  apply_xy_mixer(run.statevector, best_beta, layout);

  std::vector<double> cumulative(run.statevector.size());
  double acc = 0.0;
  for (std::size_t x = 0; x < cumulative.size(); ++x) {
    acc += std::norm(run.statevector[x]);
    cumulative[x] = acc;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, acc);
  std::map<std::uint64_t, std::size_t> counts;
  for (std::size_t s = 0; s < shots; ++s) {
    const double r = u(rng);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
    if (it == cumulative.end()) --it;
    ++counts[static_cast<std::uint64_t>(it - cumulative.begin())];
  }
  run.samples.assign(counts.begin(), counts.end());

  run.best = warm_start;
  run.best_energy = diag[warm_start];
  for (const auto& [bits, count] : run.samples) {
    if (qubo.feasible(bits) && diag[bits] < run.best_energy) {
      run.best = bits;
      run.best_energy = diag[bits];
      run.best_from_samples = true;
    }
  }
  return run;
}

}  // namespace pass
