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

#include "hypercluster/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <tuple>

#include "hypercluster/matching.hpp"

namespace hypercluster {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
/// Matching works on integers; distances are rounded to this resolution.
constexpr double kWeightScale = 1e6;

/// BFS distances to `target` on an unweighted adjacency structure; `blocked`
/// nodes are reached but never expanded.
template <typename Adjacency>
std::vector<int> bfs_distances(const Adjacency &adj, int target, int blocked) {
    std::vector<int> dist(adj.size(), -1);
    std::deque<int> queue{target};
    dist[target] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (u == blocked && u != target) {
            continue;
        }
        for (const auto &arc : adj[u]) {
            if (dist[arc.to] < 0) {
                dist[arc.to] = dist[u] + 1;
                queue.push_back(arc.to);
            }
        }
    }
    return dist;
}

/// Slots along the lexicographically smallest shortest path from a to b, given
/// arcs sorted by (to, slot).
template <typename Adjacency>
std::vector<int> lex_path(const Adjacency &adj, int a, int b, int blocked) {
    std::vector<int> dist = bfs_distances(adj, b, blocked);
    if (dist[a] < 0) {
        throw DecoderError("no path between nodes " + std::to_string(a) + " and " + std::to_string(b));
    }
    std::vector<int> slots;
    int cur = a;
    while (cur != b) {
        bool moved = false;
        for (const auto &arc : adj[cur]) {
            if (dist[arc.to] == dist[cur] - 1 && (arc.to != blocked || arc.to == b)) {
                if (arc.slot >= 0) {
                    slots.push_back(arc.slot);
                }
                cur = arc.to;
                moved = true;
                break;
            }
        }
        if (!moved) {
            throw DecoderError("shortest path reconstruction failed");
        }
    }
    return slots;
}

struct BaseArc {
    int to;
    int slot;
};

/// The base lattice as seen by one check type: vertices joined by edges (X
/// type) or faces joined across edges (Z type).
std::vector<std::vector<BaseArc>> base_graph(const Lattice &lat, CheckType type) {
    std::vector<std::vector<BaseArc>> adj;
    if (type == CheckType::X) {
        adj.resize(static_cast<size_t>(lat.num_vertices()));
        for (int e = 0; e < lat.num_edges(); e++) {
            auto [u, v] = lat.edges[static_cast<size_t>(e)];
            adj[u].push_back({v, e});
            adj[v].push_back({u, e});
        }
    } else {
        adj.resize(static_cast<size_t>(lat.num_faces()));
        auto fe = lat.faces_of_edges();
        for (int e = 0; e < lat.num_edges(); e++) {
            int f = fe[e][0];
            int g = fe[e][1];
            adj[f].push_back({g, e});
            adj[g].push_back({f, e});
        }
    }
    for (auto &arcs : adj) {
        std::sort(arcs.begin(), arcs.end(),
                  [](const BaseArc &x, const BaseArc &y) { return std::tie(x.to, x.slot) < std::tie(y.to, y.slot); });
    }
    return adj;
}

}  // namespace

DecodingGraph::DecodingGraph(const DetectorErrorModel &dem, CheckType type)
    : type_(type), num_detectors_(dem.num_detectors[static_cast<int>(type)]) {
    adjacency_.assign(static_cast<size_t>(num_detectors_) + 1, {});
    for (const Mechanism &m : dem.of(type)) {
        if (m.probability <= 0) {
            continue;
        }
        for (int d : m.defects) {
            if (d < 0 || d >= num_detectors_) {
                throw DecoderError("mechanism refers to detector " + std::to_string(d) + " outside the model");
            }
        }
        int u = m.defects[0];
        int v = m.defects.size() == 2 ? m.defects[1] : boundary();
        double w = -std::log(m.probability);
        edges_.push_back({u, v, w, m.probability});
        adjacency_[u].push_back({v, w});
        adjacency_[v].push_back({u, w});
    }
    // Every detector must be able to reach every other, or the boundary.
    std::vector<int> comp(adjacency_.size(), -1);
    int num_comp = 0;
    bool boundary_used = !adjacency_[boundary()].empty();
    for (size_t s = 0; s < adjacency_.size(); s++) {
        if (comp[s] >= 0 || (s == static_cast<size_t>(boundary()) && !boundary_used)) {
            continue;
        }
        std::deque<int> queue{static_cast<int>(s)};
        comp[s] = num_comp;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (const Arc &a : adjacency_[u]) {
                if (comp[a.to] < 0) {
                    comp[a.to] = num_comp;
                    queue.push_back(a.to);
                }
            }
        }
        num_comp++;
    }
    if (num_comp > 1) {
        for (int d = 0; d < num_detectors_; d++) {
            if (comp[d] != comp[0]) {
                throw DecoderError(std::string("decoding graph for ") + check_type_name(type) +
                                   "-type detectors is disconnected at detector " + std::to_string(d));
            }
        }
    }
}

std::vector<double> DecodingGraph::distances_from(int source) const {
    std::vector<double> dist(adjacency_.size(), kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[source] = 0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u] || (u == boundary() && u != source)) {
            continue;
        }
        for (const Arc &a : adjacency_[u]) {
            double nd = d + a.weight;
            if (nd < dist[a.to]) {
                dist[a.to] = nd;
                heap.push({nd, a.to});
            }
        }
    }
    return dist;
}

ConnectivityStack::ConnectivityStack(const ClusterState &cluster, CheckType type)
    : num_slots_(cluster.num_slots(type)) {
    const int n = cluster.num_detectors(type);
    adjacency_.assign(static_cast<size_t>(n) + 1, {});
    for (int qb = 0; qb < cluster.num_qubits(); qb++) {
        const MeasurementRole &role = cluster.role(qb);
        if (role.type != type) {
            continue;
        }
        int u = role.detectors[0];
        int v = role.num_detectors == 2 ? role.detectors[1] : n;
        adjacency_[u].push_back({v, role.slot});
        adjacency_[v].push_back({u, role.slot});
    }
    for (auto &arcs : adjacency_) {
        std::sort(arcs.begin(), arcs.end(),
                  [](const Arc &x, const Arc &y) { return std::tie(x.to, x.slot) < std::tie(y.to, y.slot); });
    }
}

std::vector<int> ConnectivityStack::shortest_path(int a, int b) const {
    return lex_path(adjacency_, a, b, boundary());
}

Matching mwpm(const DecodingGraph &graph, std::span<const int> defects) {
    Matching result;
    const int n = static_cast<int>(defects.size());
    if (n == 0) {
        return result;
    }
    std::vector<std::vector<double>> dist;
    dist.reserve(defects.size());
    for (int d : defects) {
        if (d < 0 || d >= graph.num_detectors()) {
            throw DecoderError("defect " + std::to_string(d) + " is not a detector");
        }
        dist.push_back(graph.distances_from(d));
    }
    // Defects are 0..n-1; defect i may match its private boundary copy n+i,
    // and unused boundary copies pair among themselves at no cost.
    auto quantize = [](double w) { return static_cast<int64_t>(std::llround(w * kWeightScale)); };
    std::vector<WeightedEdge> edges;
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            double w = dist[i][defects[j]];
            if (w < kInf) {
                edges.push_back({i, j, quantize(w)});
            }
        }
        double wb = dist[i][graph.boundary()];
        if (wb < kInf) {
            edges.push_back({i, n + i, quantize(wb)});
        }
        for (int j = i + 1; j < n; j++) {
            edges.push_back({n + i, n + j, 0});
        }
    }
    std::vector<int> mate;
    try {
        mate = min_weight_perfect_matching(2 * n, edges);
    } catch (const MatchingError &) {
        throw DecoderError("defects cannot be matched (odd parity with no boundary connection)");
    }
    for (int i = 0; i < n; i++) {
        int m = mate[i];
        if (m < i && m < n) {
            continue;
        }
        if (m >= n) {
            result.pairs.push_back({defects[i], graph.boundary()});
            result.weight += dist[i][graph.boundary()];
        } else {
            result.pairs.push_back({defects[i], defects[m]});
            result.weight += dist[i][defects[m]];
        }
    }
    return result;
}

BitChain correction(const Matching &matching, const ConnectivityStack &stack) {
    BitChain out(static_cast<size_t>(stack.num_slots()));
    for (auto [a, b] : matching.pairs) {
        for (int s : stack.shortest_path(a, b)) {
            out.flip(static_cast<size_t>(s));
        }
    }
    return out;
}

Verdict judge(const BitChain &actual, const BitChain &inferred, const ClusterState &cluster, CheckType type) {
    const Lattice &lat = cluster.lattice();
    const int E = lat.num_edges();
    const int spatial = cluster.z() * E;
    BitChain residual = actual ^ inferred;

    BitChain projection(static_cast<size_t>(E));
    std::vector<int> terminals;
    for (int s : residual.ones()) {
        if (s < spatial) {
            projection.flip(static_cast<size_t>(s % E));
        } else {
            terminals.push_back(s - spatial);
        }
    }
    auto adj = base_graph(lat, type);
    std::vector<char> boundary(adj.size(), 0);
    auto fe = type == CheckType::Z ? lat.faces_of_edges() : std::vector<std::vector<int>>{};
    for (int e : projection.ones()) {
        if (type == CheckType::X) {
            boundary[lat.edges[e][0]] ^= 1;
            boundary[lat.edges[e][1]] ^= 1;
        } else {
            boundary[fe[e][0]] ^= 1;
            boundary[fe[e][1]] ^= 1;
        }
    }
    std::vector<char> expected(adj.size(), 0);
    for (int c : terminals) {
        expected[c] ^= 1;
    }
    if (boundary != expected) {
        throw DecoderError("residual chain leaves an uncleared syndrome");
    }

    // Close the ends on the open time boundary with a minimum-weight pairing.
    if (!terminals.empty()) {
        const int m = static_cast<int>(terminals.size());
        std::vector<std::vector<int>> dist;
        for (int c : terminals) {
            dist.push_back(bfs_distances(adj, c, -1));
        }
        std::vector<WeightedEdge> edges;
        for (int i = 0; i < m; i++) {
            for (int j = i + 1; j < m; j++) {
                edges.push_back({i, j, dist[i][terminals[j]]});
            }
        }
        std::vector<int> mate = min_weight_perfect_matching(m, edges);
        for (int i = 0; i < m; i++) {
            if (mate[i] > i) {
                for (int e : lex_path(adj, terminals[i], terminals[mate[i]], -1)) {
                    projection.flip(static_cast<size_t>(e));
                }
            }
        }
    }

    const auto &opposing = type == CheckType::X ? cluster.code().basis.x_logicals : cluster.code().basis.z_logicals;
    Verdict v;
    for (const BitChain &logical : opposing) {
        bool flag = pairing(projection, logical);
        v.flags.push_back(flag);
        v.failed = v.failed || flag;
    }
    return v;
}

}  // namespace hypercluster
