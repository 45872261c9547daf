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

#include <span>

namespace pass {

/// Adjusted Rand index between two labelings of the same points.
double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

/// Adjusted mutual information, arithmetic-mean normalization.
double adjusted_mutual_info(std::span<const int> a, std::span<const int> b);

/// Fraction of points whose cluster's majority truth label matches theirs.
double purity(std::span<const int> labels, std::span<const int> truth);

}  // namespace pass
