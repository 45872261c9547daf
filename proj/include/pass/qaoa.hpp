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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "pass/qubo.hpp"

namespace pass {

using Amplitude = std::complex<double>;
using StateVector = std::vector<Amplitude>;

/// Which qubits belong to which sample: qubit k*s + g.
struct MixerLayout {
  std::size_t samples = 0;
  std::size_t k = 0;
  std::size_t n_qubits() const { return samples * k; }
};

StateVector basis_state(std::size_t n_qubits, std::uint64_t bits);

/// amp[x] *= exp(-i gamma E(x)).
void apply_phase(StateVector& state, const std::vector<double>& diagonal,
                 double gamma);

/// exp(-i beta (X_a X_b + Y_a Y_b)) for every sample and cluster pair g < h,
/// samples ascending then pairs lexicographic. On each (a, b) pair subspace
/// |01>, |10> rotate by 2 beta and |00>, |11> are untouched.
void apply_xy_mixer(StateVector& state, double beta, const MixerLayout& layout);
void apply_xy_mixer_serial(StateVector& state, double beta,
                           const MixerLayout& layout);

double expectation(const StateVector& state, const std::vector<double>& diagonal);

/// Probability mass on basis states that are not one-hot per sample.
double one_hot_leakage(const StateVector& state, const MixerLayout& layout);

struct GateCount {
  std::size_t blocks = 0;
  std::size_t depth_layers = 0;
};

/// k(k-1)/2 XY blocks per sample; k-1 layers for even k, k for odd k.
GateCount mixer_gate_count(std::size_t k, std::size_t samples);

/// Proper edge colouring of the complete graph on k clusters (circle
/// method); each layer is a set of disjoint (g, h) pairs.
std::vector<std::vector<std::pair<int, int>>> mixer_schedule(std::size_t k);

struct QaoaOptions {
  std::size_t gamma_points = 32;  // over [0, pi)
  std::size_t beta_points = 32;   // over (0, pi/4]
  std::size_t refine_evals = 80;  // Nelder-Mead budget
};

struct QaoaRun {
  std::vector<double> gammas;  // depth 1
  std::vector<double> betas;
  double expected_energy = 0.0;
  double warm_energy = 0.0;
  std::size_t shots = 0;
  StateVector statevector;
  std::vector<std::pair<std::uint64_t, std::size_t>> samples;  // sorted by bits
  std::uint64_t best = 0;
  double best_energy = 0.0;
  bool best_from_samples = false;
};

/// Depth-1 QAOA from a feasible warm start: phase then XY mixer, angles from
/// a fixed grid refined by one Nelder-Mead descent, then `shots` samples from
/// |psi|^2. `best` is the lowest-energy feasible sample, or the warm start.
QaoaRun run_qaoa_p1(const QuboModel& qubo, std::uint64_t warm_start,
                    std::size_t shots, std::uint64_t seed,
                    const QaoaOptions& opts = {});

/// <psi_1|H|psi_1> at fixed angles.
double qaoa_p1_energy(const QuboModel& qubo, const std::vector<double>& diagonal,
                      std::uint64_t warm_start, double gamma, double beta);

}  // namespace pass
