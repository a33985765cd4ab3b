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

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hypercluster/foliation.hpp"
#include "hypercluster/pauli_sim.hpp"

namespace hypercluster {

struct DecoderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Weighted matching graph of one check type: detectors plus a virtual time
/// boundary node (id = num_detectors()), one edge per mechanism with weight
/// -ln P. Mechanisms with P = 0 are left out.
class DecodingGraph {
   public:
    struct Edge {
        int u;
        int v;
        double weight;
        double probability;
    };
    struct Arc {
        int to;
        double weight;
    };

    DecodingGraph(const DetectorErrorModel &dem, CheckType type);

    CheckType type() const {
        return type_;
    }
    int num_detectors() const {
        return num_detectors_;
    }
    int boundary() const {
        return num_detectors_;
    }
    const std::vector<Edge> &edges() const {
        return edges_;
    }
    const std::vector<Arc> &arcs(int node) const {
        return adjacency_[node];
    }
    /// Shortest-path distances from `source`; paths never pass through the
    /// boundary node, though they may end there.
    std::vector<double> distances_from(int source) const;

   private:
    CheckType type_;
    int num_detectors_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Arc>> adjacency_;
};

/// Unweighted spacetime stack of the base lattice for one check type: every
/// measured qubit of that type links its two detectors (or its one detector to
/// the boundary node), labelled with the data slot it represents, if any.
class ConnectivityStack {
   public:
    struct Arc {
        int to;
        int slot;  ///< -1 for time-like links
    };

    ConnectivityStack(const ClusterState &cluster, CheckType type);

    int num_nodes() const {
        return static_cast<int>(adjacency_.size());
    }
    int boundary() const {
        return num_nodes() - 1;
    }
    int num_slots() const {
        return num_slots_;
    }
    const std::vector<Arc> &arcs(int node) const {
        return adjacency_[node];
    }
    /// Slots along the lexicographically smallest shortest path from a to b.
    std::vector<int> shortest_path(int a, int b) const;

   private:
    int num_slots_;
    std::vector<std::vector<Arc>> adjacency_;
};

struct Matching {
    /// Matched pairs; the second entry is the boundary node id for
    /// defect-boundary pairs.
    std::vector<std::pair<int, int>> pairs;
    double weight = 0;
};

/// Exact minimum-weight matching of the defects, where any number of defects
/// may be matched to the boundary.
Matching mwpm(const DecodingGraph &graph, std::span<const int> defects);

/// E_inf: XOR of the slot labels along a shortest stack path for every pair.
BitChain correction(const Matching &matching, const ConnectivityStack &stack);

struct Verdict {
    std::vector<bool> flags;  ///< one per opposing logical
    bool failed = false;
};

/// Projects E_act + E_inf along time onto the base lattice, closes any ends on
/// the open time boundary by a minimum-weight pairing on the base lattice, and
/// pairs the resulting cycle with the opposing logicals.
Verdict judge(const BitChain &actual, const BitChain &inferred, const ClusterState &cluster, CheckType type);

/// Decoder state for one check type.
struct ChannelDecoder {
    DecodingGraph graph;
    ConnectivityStack stack;

    ChannelDecoder(const DetectorErrorModel &dem, const ClusterState &cluster, CheckType type)
        : graph(dem, type), stack(cluster, type) {
    }
    BitChain decode(std::span<const int> defects) const {
        return correction(mwpm(graph, defects), stack);
    }
};

}  // namespace hypercluster
