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

#include "pass/data_model.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_set>

namespace pass {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<Pair> canonicalize(std::vector<Pair> pairs, const char* kind) {
  for (auto& p : pairs) {
    if (p.first == p.second) {
      throw InputError(std::string(kind) + " self-pair (" +
                       std::to_string(p.first) + "," +
                       std::to_string(p.second) + ")");
    }
    p = canonical_pair(p.first, p.second);
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

}  // namespace

Dataset::Dataset(std::size_t n, std::size_t d, std::vector<double> values,
                 std::vector<double> weights)
    : n_(n), d_(d), values_(std::move(values)), weights_(std::move(weights)) {
  if (n_ == 0) throw InputError("empty dataset");
  if (d_ == 0) throw InputError("dataset dimension must be >= 1");
  if (values_.size() != n_ * d_) throw InputError("dataset value count mismatch");
  if (weights_.empty()) weights_.assign(n_, 1.0);
  if (weights_.size() != n_) throw InputError("dataset weight count mismatch");
  for (double w : weights_) {
    if (!(w > 0.0)) throw InputError("dataset weights must be positive");
  }
}

ConstraintSet::ConstraintSet(std::vector<Pair> ml, std::vector<Pair> cl)
    : ml_(canonicalize(std::move(ml), "ML")),
      cl_(canonicalize(std::move(cl), "CL")) {
  std::vector<Pair> both;
  std::set_intersection(ml_.begin(), ml_.end(), cl_.begin(), cl_.end(),
                        std::back_inserter(both));
  if (!both.empty()) {
    throw InputError("pair (" + std::to_string(both[0].first) + "," +
                     std::to_string(both[0].second) +
                     ") is both must-link and cannot-link");
  }
}

void ConstraintSet::validate(std::size_t n) const {
  for (const auto* list : {&ml_, &cl_}) {
    for (const auto& [a, b] : *list) {
      if (b >= n) {
        throw InputError("constraint index " + std::to_string(b) +
                         " out of range for n=" + std::to_string(n));
      }
      (void)a;
    }
  }
}

void Assignment::validate() const {
  if (k < 1) throw InputError("cluster count k must be >= 1");
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= k) {
      throw InputError("label " + std::to_string(labels[i]) + " at index " +
                       std::to_string(i) + " outside [0," +
                       std::to_string(k) + ")");
    }
  }
}

Dataset parse_dataset(const std::string& text, const CsvOptions& opts) {
  std::vector<double> values;
  std::size_t d = 0;
  std::size_t n = 0;
  std::size_t line_no = 0;
  bool skipped_header = !opts.header;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    if (!skipped_header) {
      skipped_header = true;
      continue;
    }
    std::size_t cols = 0;
    std::size_t pos = 0;
    while (true) {
      const auto comma = body.find(',', pos);
      const auto cell = trim(body.substr(
          pos, comma == std::string_view::npos ? std::string_view::npos
                                               : comma - pos));
      double v = 0.0;
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || res.ec != std::errc() ||
          res.ptr != cell.data() + cell.size()) {
        throw InputError("non-numeric cell at row " + std::to_string(line_no) +
                         ", column " + std::to_string(cols + 1) + ": '" +
                         std::string(cell) + "'");
      }
      values.push_back(v);
      ++cols;
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (n == 0) {
      d = cols;
    } else if (cols != d) {
      throw InputError("ragged row " + std::to_string(line_no) + ": expected " +
                       std::to_string(d) + " columns, found " +
                       std::to_string(cols));
    }
    ++n;
  }
  if (n == 0) throw InputError("empty dataset");
  return Dataset(n, d, std::move(values));
}

Dataset load_dataset(const std::string& path, const CsvOptions& opts) {
  return parse_dataset(read_file(path), opts);
}

std::vector<int> load_labels(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<int> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty()) continue;
    int v = 0;
    const auto res = std::from_chars(body.data(), body.data() + body.size(), v);
    if (res.ec != std::errc() || res.ptr != body.data() + body.size() || v < 0) {
      throw InputError("bad label at line " + std::to_string(line_no));
    }
    labels.push_back(v);
  }
  return labels;
}

ConstraintSet parse_constraints(const std::string& text) {
  std::vector<Pair> ml;
  std::vector<Pair> cl;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    if (trim(line).empty()) continue;
    std::istringstream fields(line);
    std::string tag;
    long long a = -1;
    long long b = -1;
    std::string rest;
    if (!(fields >> tag >> a >> b) || (fields >> rest)) {
      throw InputError("malformed constraint at line " + std::to_string(line_no));
    }
    if (a < 0 || b < 0) {
      throw InputError("negative index at line " + std::to_string(line_no));
    }
    if (a == b) {
      throw InputError("self-pair at line " + std::to_string(line_no));
    }
    const Pair p{static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
    if (tag == "ML") {
      ml.push_back(p);
    } else if (tag == "CL") {
      cl.push_back(p);
    } else {
      throw InputError("unknown tag '" + tag + "' at line " +
                       std::to_string(line_no));
    }
  }
  return ConstraintSet(std::move(ml), std::move(cl));
}

ConstraintSet load_constraints(const std::string& path) {
  return parse_constraints(read_file(path));
}

std::string format_constraints(const ConstraintSet& cs) {
  std::ostringstream out;
  for (const auto& [a, b] : cs.ml()) out << "ML " << a << ' ' << b << '\n';
  for (const auto& [a, b] : cs.cl()) out << "CL " << a << ' ' << b << '\n';
  return out.str();
}

void write_constraints(const std::string& path, const ConstraintSet& cs) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << format_constraints(cs);
}

ConstraintSet sample_constraints(std::size_t n,
                                 const std::optional<std::vector<int>>& truth,
                                 std::size_t n_ml, std::size_t n_cl,
                                 std::uint64_t seed) {
  if (truth && truth->size() != n) {
    throw InputError("truth label count does not match dataset size");
  }
  const std::size_t universe = n * (n - 1) / 2;
  if (n_ml + n_cl > universe) {
    throw InputError("constraint quotas exceed the number of distinct pairs");
  }
  if (truth) {
    std::vector<std::size_t> counts;
    for (int t : *truth) {
      if (t < 0) throw InputError("truth labels must be nonnegative");
      if (static_cast<std::size_t>(t) >= counts.size()) counts.resize(t + 1, 0);
      ++counts[t];
    }
    std::size_t same = 0;
    for (auto c : counts) same += c * (c - 1) / 2;
    if (n_ml > same || n_cl > universe - same) {
      throw InputError("constraint quotas unsatisfiable under the truth labels");
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<Pair> ml;
  std::vector<Pair> cl;
  // Without truth labels the first n_ml draws are ML and the rest CL.
  auto accept = [&](Pair p) {
    const bool want_ml = truth ? (*truth)[p.first] == (*truth)[p.second]
                               : ml.size() < n_ml;
    if (want_ml && ml.size() < n_ml) {
      ml.push_back(p);
    } else if (!want_ml && cl.size() < n_cl) {
      cl.push_back(p);
    }
    return ml.size() == n_ml && cl.size() == n_cl;
  };
  if (n_ml + n_cl == 0) return {};

  if (n <= 2048) {
    std::vector<Pair> all;
    all.reserve(universe);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) all.emplace_back(i, j);
    }
    std::shuffle(all.begin(), all.end(), rng);
    for (const auto& p : all) {
      if (accept(p)) break;
    }
  } else {
    std::unordered_set<std::uint64_t> seen;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    while (true) {
      const auto a = pick(rng);
      const auto b = pick(rng);
      if (a == b) continue;
      const auto p = canonical_pair(a, b);
      if (!seen.insert(static_cast<std::uint64_t>(p.first) * n + p.second).second) {
        continue;
      }
      if (accept(p)) break;
    }
  }
  return ConstraintSet(std::move(ml), std::move(cl));
}

ViolationCount count_violations(const ConstraintSet& cs,
                                std::span<const int> labels) {
  ViolationCount v;
  for (const auto& [a, b] : cs.ml()) v.ml += labels[a] != labels[b];
  for (const auto& [a, b] : cs.cl()) v.cl += labels[a] == labels[b];
  return v;
}

}  // namespace pass
