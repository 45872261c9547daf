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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pass {

/// Malformed input files, bad arguments, or inconsistent sizes.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The constraint system admits no feasible labeling (e.g. a cannot-link
/// pair inside one must-link component).
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Points stored row-major, n rows of dimension d, with positive weights.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::size_t n, std::size_t d, std::vector<double> values,
          std::vector<double> weights = {});

  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * d_, d_};
  }
  double weight(std::size_t i) const { return weights_[i]; }

  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> values_;
  std::vector<double> weights_;
};

using Pair = std::pair<std::size_t, std::size_t>;

inline Pair canonical_pair(std::size_t a, std::size_t b) {
  return a < b ? Pair{a, b} : Pair{b, a};
}

/// Must-link and cannot-link pairs, each kept sorted, unique and in
/// canonical (min, max) order.
class ConstraintSet {
 public:
  ConstraintSet() = default;
  ConstraintSet(std::vector<Pair> ml, std::vector<Pair> cl);

  const std::vector<Pair>& ml() const { return ml_; }
  const std::vector<Pair>& cl() const { return cl_; }
  bool empty() const { return ml_.empty() && cl_.empty(); }

  /// Throws InputError if any index is >= n.
  void validate(std::size_t n) const;

  bool operator==(const ConstraintSet&) const = default;

 private:
  std::vector<Pair> ml_;
  std::vector<Pair> cl_;
};

/// Integer cluster labels in [0, k).
struct Assignment {
  std::vector<int> labels;
  int k = 1;

  std::size_t size() const { return labels.size(); }
  void validate() const;
};

struct CsvOptions {
  bool header = false;
};

Dataset load_dataset(const std::string& path, const CsvOptions& opts = {});
Dataset parse_dataset(const std::string& text, const CsvOptions& opts = {});

/// One integer per line (blank lines ignored).
std::vector<int> load_labels(const std::string& path);

ConstraintSet load_constraints(const std::string& path);
ConstraintSet parse_constraints(const std::string& text);
std::string format_constraints(const ConstraintSet& cs);
void write_constraints(const std::string& path, const ConstraintSet& cs);

/// Random-pair sampling. With truth labels, a drawn pair becomes ML when
/// the labels agree and CL otherwise, until both quotas are filled. Pairs
/// are drawn without replacement from one shared universe.
ConstraintSet sample_constraints(std::size_t n,
                                 const std::optional<std::vector<int>>& truth,
                                 std::size_t n_ml, std::size_t n_cl,
                                 std::uint64_t seed);

/// Number of violated ML and CL pairs under `labels`.
struct ViolationCount {
  std::size_t ml = 0;
  std::size_t cl = 0;
  std::size_t total() const { return ml + cl; }
};
ViolationCount count_violations(const ConstraintSet& cs,
                                std::span<const int> labels);

}  // namespace pass
