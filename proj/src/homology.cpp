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

#include "hypercluster/homology.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace hypercluster {

Gf2Matrix Gf2Matrix::identity(size_t n) {
    Gf2Matrix m(n, n);
    for (size_t i = 0; i < n; i++) {
        m.set(i, i);
    }
    return m;
}

Gf2Matrix Gf2Matrix::transpose() const {
    Gf2Matrix t(cols, rows.size());
    for (size_t r = 0; r < rows.size(); r++) {
        for (int c : rows[r].ones()) {
            t.set(static_cast<size_t>(c), r);
        }
    }
    return t;
}

std::string Gf2Matrix::bitmap() const {
    std::string s;
    for (const auto &row : rows) {
        s += row.str();
        s += '\n';
    }
    return s;
}

Gf2Matrix multiply(const Gf2Matrix &a, const Gf2Matrix &b) {
    if (a.cols != b.num_rows()) {
        throw std::invalid_argument("multiply: inner dimensions differ");
    }
    Gf2Matrix out(a.num_rows(), b.cols);
    for (size_t r = 0; r < a.num_rows(); r++) {
        for (int k : a.rows[r].ones()) {
            out.rows[r] ^= b.rows[static_cast<size_t>(k)];
        }
    }
    return out;
}

namespace {

/// Reduced row echelon form in place; returns the pivot column of each
/// leading row.
std::vector<size_t> rref(std::vector<BitChain> &rows, size_t cols) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows.size(); c++) {
        size_t found = r;
        while (found < rows.size() && !rows[found].get(c)) {
            found++;
        }
        if (found == rows.size()) {
            continue;
        }
        std::swap(rows[r], rows[found]);
        for (size_t i = 0; i < rows.size(); i++) {
            if (i != r && rows[i].get(c)) {
                rows[i] ^= rows[r];
            }
        }
        pivots.push_back(c);
        r++;
    }
    rows.resize(r);
    return pivots;
}

}  // namespace

size_t rank_gf2(const Gf2Matrix &m) {
    std::vector<BitChain> rows = m.rows;
    size_t rank = 0;
    for (size_t c = 0; c < m.cols && rank < rows.size(); c++) {
        size_t found = rank;
        while (found < rows.size() && !rows[found].get(c)) {
            found++;
        }
        if (found == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[found]);
        for (size_t i = rank + 1; i < rows.size(); i++) {
            if (rows[i].get(c)) {
                rows[i] ^= rows[rank];
            }
        }
        rank++;
    }
    return rank;
}

std::vector<BitChain> kernel_basis(const Gf2Matrix &m) {
    std::vector<BitChain> rows = m.rows;
    auto pivots = rref(rows, m.cols);
    std::vector<char> is_pivot(m.cols, 0);
    for (size_t c : pivots) {
        is_pivot[c] = 1;
    }
    std::vector<BitChain> basis;
    for (size_t free = 0; free < m.cols; free++) {
        if (is_pivot[free]) {
            continue;
        }
        BitChain v(m.cols);
        v.set(free);
        for (size_t r = 0; r < rows.size(); r++) {
            if (rows[r].get(free)) {
                v.set(pivots[r]);
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

Gf2Matrix inverse_gf2(const Gf2Matrix &m) {
    const size_t n = m.num_rows();
    if (m.cols != n) {
        throw std::invalid_argument("inverse_gf2: matrix is not square");
    }
    // Augment [M | I] and reduce.
    std::vector<BitChain> rows;
    for (size_t r = 0; r < n; r++) {
        BitChain row(2 * n);
        for (int c : m.rows[r].ones()) {
            row.set(static_cast<size_t>(c));
        }
        row.set(n + r);
        rows.push_back(std::move(row));
    }
    auto pivots = rref(rows, n);
    if (pivots.size() != n) {
        throw HomologyError("inverse_gf2: matrix is singular");
    }
    Gf2Matrix inv(n, n);
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            inv.set(r, c, rows[r].get(n + c));
        }
    }
    return inv;
}

bool Echelon::insert(BitChain v) {
    v = reduce(std::move(v));
    long pivot = v.first_one();
    if (pivot < 0) {
        return false;
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(static_cast<size_t>(pivot));
    return true;
}

BitChain Echelon::reduce(BitChain v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("Echelon: vector length mismatch");
    }
    for (size_t i = 0; i < rows_.size(); i++) {
        if (v.get(pivots_[i])) {
            v ^= rows_[i];
        }
    }
    return v;
}

HomologyBasis logical_basis(const Gf2Matrix &hz, const Gf2Matrix &hx) {
    if (hz.cols != hx.cols) {
        throw HomologyError("check matrices act on different numbers of qubits");
    }
    Gf2Matrix commutation = multiply(hz, hx.transpose());
    for (size_t r = 0; r < commutation.num_rows(); r++) {
        if (commutation.rows[r].any()) {
            throw HomologyError("CSS condition violated: Z check " + std::to_string(r) + " anticommutes with X check " +
                                std::to_string(commutation.rows[r].first_one()));
        }
    }
    auto quotient = [](const Gf2Matrix &kernel_of, const Gf2Matrix &modulo) {
        Echelon span(modulo.cols);
        for (const auto &row : modulo.rows) {
            span.insert(row);
        }
        std::vector<BitChain> reps;
        for (auto &v : kernel_basis(kernel_of)) {
            if (span.insert(v)) {
                reps.push_back(std::move(v));
            }
        }
        return reps;
    };
    HomologyBasis basis;
    basis.z_logicals = quotient(hx, hz);
    auto x_raw = quotient(hz, hx);
    const size_t k = basis.z_logicals.size();
    if (x_raw.size() != k) {
        throw HomologyError("homology and cohomology dimensions differ");
    }
    Gf2Matrix raw_pairing(k, k);
    for (size_t i = 0; i < k; i++) {
        for (size_t j = 0; j < k; j++) {
            raw_pairing.set(i, j, pairing(basis.z_logicals[i], x_raw[j]));
        }
    }
    // X'_j = sum_l X_l (P^-1)_{lj} makes <Z_i, X'_j> = delta_ij.
    Gf2Matrix inv = inverse_gf2(raw_pairing);
    for (size_t j = 0; j < k; j++) {
        BitChain v(hz.cols);
        for (size_t l = 0; l < k; l++) {
            if (inv.get(l, j)) {
                v ^= x_raw[l];
            }
        }
        basis.x_logicals.push_back(std::move(v));
    }
    basis.pairing_matrix = Gf2Matrix(k, k);
    for (size_t i = 0; i < k; i++) {
        for (size_t j = 0; j < k; j++) {
            basis.pairing_matrix.set(i, j, pairing(basis.z_logicals[i], basis.x_logicals[j]));
        }
    }
    return basis;
}

DistanceResult distance(const Gf2Matrix &graph_checks, std::span<const BitChain> opposing_logicals,
                        const DistanceOptions &options) {
    const size_t num_edges = graph_checks.cols;
    const size_t num_nodes = graph_checks.num_rows();
    const size_t k = opposing_logicals.size();
    if (k == 0) {
        return {0, true};
    }
    if (static_cast<long>(num_edges) > options.max_edges) {
        return {2, false};
    }
    std::vector<std::array<int, 2>> ends(num_edges, {-1, -1});
    Gf2Matrix incidence = graph_checks.transpose();
    for (size_t e = 0; e < num_edges; e++) {
        auto nodes = incidence.rows[e].ones();
        if (nodes.size() != 2) {
            throw HomologyError("distance: column " + std::to_string(e) + " has weight " +
                                std::to_string(nodes.size()) + ", expected a graph incidence matrix");
        }
        ends[e] = {nodes[0], nodes[1]};
    }
    std::vector<std::vector<std::pair<int, int>>> adj(num_nodes);
    for (size_t e = 0; e < num_edges; e++) {
        adj[ends[e][0]].push_back({ends[e][1], static_cast<int>(e)});
        adj[ends[e][1]].push_back({ends[e][0], static_cast<int>(e)});
    }
    std::vector<BitChain> edge_bits(num_edges, BitChain(k));
    for (size_t j = 0; j < k; j++) {
        for (int e : opposing_logicals[j].ones()) {
            edge_bits[e].set(j);
        }
    }

    int best = std::numeric_limits<int>::max();
    std::vector<int> dist(num_nodes);
    std::vector<BitChain> parity(num_nodes, BitChain(k));
    std::deque<int> queue;
    for (size_t root = 0; root < num_nodes; root++) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[root] = 0;
        parity[root].clear();
        queue.assign(1, static_cast<int>(root));
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            // Paths longer than half the best cycle cannot improve it.
            if (2 * dist[u] + 1 >= best) {
                continue;
            }
            for (auto [w, e] : adj[u]) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    parity[w] = parity[u] ^ edge_bits[e];
                    queue.push_back(w);
                }
            }
        }
        for (size_t e = 0; e < num_edges; e++) {
            int u = ends[e][0];
            int w = ends[e][1];
            if (dist[u] < 0 || dist[w] < 0) {
                continue;
            }
            int len = dist[u] + dist[w] + 1;
            if (len >= best) {
                continue;
            }
            BitChain cls = parity[u] ^ parity[w];
            cls ^= edge_bits[e];
            if (cls.any()) {
                best = len;
            }
        }
    }
    if (best == std::numeric_limits<int>::max()) {
        throw HomologyError("distance: no nontrivial cycle found");
    }
    return {best, true};
}

}  // namespace hypercluster
