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
#include <string>
#include <vector>

#include "hypercluster/bitchain.hpp"

namespace hypercluster {

struct HomologyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense GF(2) matrix stored as packed rows.
struct Gf2Matrix {
    size_t cols = 0;
    std::vector<BitChain> rows;

    Gf2Matrix() = default;
    Gf2Matrix(size_t num_rows, size_t num_cols) : cols(num_cols), rows(num_rows, BitChain(num_cols)) {
    }
    static Gf2Matrix identity(size_t n);

    size_t num_rows() const {
        return rows.size();
    }
    bool get(size_t r, size_t c) const {
        return rows[r].get(c);
    }
    void set(size_t r, size_t c, bool v = true) {
        rows[r].set(c, v);
    }
    Gf2Matrix transpose() const;
    /// Writes the matrix as a plain-text bitmap, one row per line.
    std::string bitmap() const;
};

Gf2Matrix multiply(const Gf2Matrix &a, const Gf2Matrix &b);

/// Rank by word-parallel Gaussian elimination.
size_t rank_gf2(const Gf2Matrix &m);

/// Basis of {x : M x = 0}.
std::vector<BitChain> kernel_basis(const Gf2Matrix &m);

/// Inverse of a square full-rank matrix; throws if singular.
Gf2Matrix inverse_gf2(const Gf2Matrix &m);

/// Incrementally built row echelon form used for span membership tests.
class Echelon {
   public:
    explicit Echelon(size_t cols) : cols_(cols) {
    }
    /// Reduces `v` against the stored rows; returns true if it was independent
    /// (in which case it is added).
    bool insert(BitChain v);
    BitChain reduce(BitChain v) const;
    bool contains(const BitChain &v) const {
        return reduce(v).none();
    }
    size_t rank() const {
        return rows_.size();
    }

   private:
    size_t cols_;
    std::vector<BitChain> rows_;
    std::vector<size_t> pivots_;
};

/// Logical representatives of a CSS code built from a 2-complex.
///
/// `z_logicals` span ker(H_X) / rowspace(H_Z) (nontrivial cycles) and
/// `x_logicals` span ker(H_Z) / rowspace(H_X) (nontrivial cocycles). The X
/// basis is chosen dual to the Z basis, so `pairing_matrix` is the identity.
struct HomologyBasis {
    std::vector<BitChain> z_logicals;
    std::vector<BitChain> x_logicals;
    Gf2Matrix pairing_matrix;

    size_t num_logicals() const {
        return z_logicals.size();
    }
};

HomologyBasis logical_basis(const Gf2Matrix &hz, const Gf2Matrix &hx);

struct DistanceResult {
    int value = 0;
    /// False when the search was skipped; `value` is then only a lower bound.
    bool exact = true;
};

struct DistanceOptions {
    /// Instances with more edges than this are not searched.
    int max_edges = 1000;
};

/// Minimum weight of a chain in ker(`graph_checks`) that pairs nontrivially
/// with at least one of `opposing_logicals`.
///
/// `graph_checks` must have exactly two ones per column (node-edge incidence
/// of a graph: H_X for Z-type distances, H_Z for X-type distances). Candidates
/// are the cycles formed by one non-tree edge closing two BFS-tree paths from a
/// common root; a shortest nontrivial cycle always occurs among them.
DistanceResult distance(const Gf2Matrix &graph_checks, std::span<const BitChain> opposing_logicals,
                        const DistanceOptions &options = {});

}  // namespace hypercluster
