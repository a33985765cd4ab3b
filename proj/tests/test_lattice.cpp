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

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "hypercluster/lattice.hpp"

using namespace hypercluster;

namespace {

const std::string kBolza = std::string(HYPERCLUSTER_DATA_DIR) + "/bolza_8_3_E24.lat";

Lattice parse_text(const std::string &text) {
    std::istringstream in(text);
    return parse_lattice(in, "test");
}

}  // namespace

TEST(Lattice, TorusCountsAndGenus) {
    for (int L : {2, 3, 5, 7}) {
        Lattice lat = generate_torus(L);
        EXPECT_EQ(lat.num_edges(), 2 * L * L);
        EXPECT_EQ(lat.num_faces(), L * L);
        EXPECT_EQ(lat.num_vertices(), L * L);
        EXPECT_EQ(lat.genus(), 1);
        ValidationReport r = validate(lat);
        EXPECT_TRUE(r.ok()) << r.str();
        EXPECT_EQ(lat.label, "torus:" + std::to_string(L));
    }
}

TEST(Lattice, TorusIndexing) {
    Lattice lat = generate_torus(3);
    // Face (1,1): h(1,1), v(2,1), h(1,2), v(1,1).
    int vid = 1 * 3 + 1;
    std::vector<int> expect{2 * vid, 2 * (1 * 3 + 2) + 1, 2 * (2 * 3 + 1), 2 * vid + 1};
    EXPECT_EQ(lat.faces[vid], expect);
    EXPECT_EQ(lat.edges[2 * vid][0], vid);
    EXPECT_EQ(lat.edges[2 * vid][1], 1 * 3 + 2);
}

TEST(Lattice, BolzaInstance) {
    Lattice lat = load_lattice(kBolza);
    EXPECT_EQ(lat.p, 8);
    EXPECT_EQ(lat.q, 3);
    EXPECT_EQ(lat.num_edges(), 24);
    EXPECT_EQ(lat.num_faces(), 6);
    EXPECT_EQ(lat.num_vertices(), 16);
    EXPECT_EQ(lat.genus(), 2);
    EXPECT_DOUBLE_EQ(lat.genus_from_counts(), 2.0);
}

TEST(Lattice, DualSwapsFacesAndVertices) {
    Lattice lat = load_lattice(kBolza);
    Lattice d = dual(lat);
    EXPECT_EQ(d.p, 3);
    EXPECT_EQ(d.q, 8);
    EXPECT_EQ(d.num_faces(), 16);
    EXPECT_EQ(d.num_vertices(), 6);
    EXPECT_EQ(d.num_edges(), 24);
    EXPECT_TRUE(validate(d).ok()) << validate(d).str();
    // Each dual edge joins the two faces of the primal edge.
    auto fe = lat.faces_of_edges();
    for (int e = 0; e < lat.num_edges(); e++) {
        std::set<int> ends{d.edges[e][0], d.edges[e][1]};
        EXPECT_EQ(ends, std::set<int>(fe[e].begin(), fe[e].end()));
    }
}

TEST(Lattice, DualOfDualHasOriginalCells) {
    for (const Lattice &lat : {generate_torus(4), load_lattice(kBolza)}) {
        Lattice dd = dual(dual(lat));
        ASSERT_EQ(dd.num_faces(), lat.num_faces());
        ASSERT_EQ(dd.num_vertices(), lat.num_vertices());
        for (int f = 0; f < lat.num_faces(); f++) {
            std::multiset<int> a(lat.faces[f].begin(), lat.faces[f].end());
            std::multiset<int> b(dd.faces[f].begin(), dd.faces[f].end());
            EXPECT_EQ(a, b) << "face " << f;
        }
        EXPECT_TRUE(validate(dd).ok());
    }
}

TEST(Lattice, WriteParseRoundTrip) {
    Lattice lat = load_lattice(kBolza);
    std::ostringstream out;
    write_lattice(out, lat);
    Lattice again = parse_text(out.str());
    EXPECT_EQ(again.edges, lat.edges);
    EXPECT_EQ(again.faces, lat.faces);
    EXPECT_EQ(again.vertex_rotations, lat.vertex_rotations);
}

TEST(Lattice, ValidationCatchesBrokenRotation) {
    Lattice lat = generate_torus(3);
    std::swap(lat.vertex_rotations[0][0], lat.vertex_rotations[0][1]);
    ValidationReport r = validate(lat);
    EXPECT_FALSE(r.ok());
    EXPECT_NE(r.first_failure().find("rotation consistency"), std::string::npos) << r.first_failure();
}

TEST(Lattice, ValidationCatchesWrongFaceSize) {
    Lattice lat = generate_torus(3);
    lat.faces[0].pop_back();
    ValidationReport r = validate(lat);
    EXPECT_FALSE(r.ok());
    EXPECT_NE(r.first_failure().find("face size"), std::string::npos);
}

TEST(Lattice, ValidationNeverThrowsOnGarbage) {
    Lattice lat = generate_torus(3);
    lat.faces[2][1] = 999;
    lat.edges[4] = {7, 7};
    EXPECT_NO_THROW({
        ValidationReport r = validate(lat);
        EXPECT_FALSE(r.ok());
    });
}

TEST(Lattice, MalformedFilesThrow) {
    EXPECT_THROW(parse_text("edge 0 0 1\n"), LatticeError);
    EXPECT_THROW(parse_text("pq 4 4\nedge zero 0 1\n"), LatticeError);
    EXPECT_THROW(load_lattice("/nonexistent/file.lat"), LatticeError);
    EXPECT_THROW(lattice_from_spec("torus:1"), LatticeError);
    EXPECT_THROW(lattice_from_spec("torus:x"), LatticeError);
}
