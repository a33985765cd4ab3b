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

#include <array>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypercluster {

struct LatticeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A closed {p,q} lattice stored as a combinatorial map.
///
/// Edge ids double as qubit ids everywhere downstream. Edge `e` owns two darts:
/// dart `2e` leaves `edges[e][0]` and dart `2e+1` leaves `edges[e][1]`. Faces and
/// vertex rotations are cyclic edge lists in counterclockwise order, and the two
/// must agree: walking a face boundary with the face on the left turns, at each
/// vertex, to the clockwise neighbour of the incoming edge.
struct Lattice {
    int p = 0;
    int q = 0;
    std::vector<std::array<int, 2>> edges;
    std::vector<std::vector<int>> faces;
    std::vector<std::vector<int>> vertex_rotations;
    std::string label;

    int num_edges() const {
        return static_cast<int>(edges.size());
    }
    int num_faces() const {
        return static_cast<int>(faces.size());
    }
    int num_vertices() const {
        return static_cast<int>(vertex_rotations.size());
    }
    int euler_characteristic() const {
        return num_faces() - num_edges() + num_vertices();
    }
    /// Genus from the Euler characteristic, 1 - chi/2.
    int genus() const {
        return 1 - euler_characteristic() / 2;
    }
    /// Genus from 1 + E(1/2 - 1/p - 1/q); only an integer for consistent counts.
    double genus_from_counts() const;

    /// For each edge, the (up to two) faces containing it, in face-id order.
    std::vector<std::vector<int>> faces_of_edges() const;
};

struct ValidationCheck {
    std::string name;
    bool passed;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    int euler_characteristic = 0;
    int genus = 0;
    double genus_from_counts = 0;

    bool ok() const;
    /// First failed check formatted as "<name> violation: <detail>", or "".
    std::string first_failure() const;
    std::string str() const;
};

/// Checks every lattice invariant; never throws.
ValidationReport validate(const Lattice &lat);

/// Parses the line-oriented lattice format and validates the result.
Lattice parse_lattice(std::istream &in, const std::string &source_name = "<stream>");
Lattice load_lattice(const std::string &path);
void write_lattice(std::ostream &out, const Lattice &lat);

/// Square {4,4} lattice on an L x L torus. Vertex (x, y) has id y*L + x; the
/// horizontal edge leaving it eastward is 2(y*L + x) and the vertical edge
/// leaving it northward is 2(y*L + x) + 1; face (x, y) has that vertex as its
/// south-west corner.
Lattice generate_torus(int L);

/// Dual map: faces become vertices and vice versa, edge ids unchanged.
Lattice dual(const Lattice &lat);

/// Accepts either a lattice file path or "torus:L".
Lattice lattice_from_spec(const std::string &spec);

}  // namespace hypercluster
