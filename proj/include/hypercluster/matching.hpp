// Copyright 2026 The Hypercluster Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace hypercluster {

struct WeightedEdge {
    int u;
    int v;
    int64_t weight;
};

struct MatchingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Maximum-weight matching on a general graph (Edmonds' blossom algorithm with
/// dual variables, O(V^3)). With `max_cardinality`, the result is the heaviest
/// among the maximum-cardinality matchings. Returns mate[v], or -1.
std::vector<int> max_weight_matching(int num_vertices, std::span<const WeightedEdge> edges, bool max_cardinality);

/// Minimum-weight perfect matching; throws MatchingError if none exists.
std::vector<int> min_weight_perfect_matching(int num_vertices, std::span<const WeightedEdge> edges);

}  // namespace hypercluster
