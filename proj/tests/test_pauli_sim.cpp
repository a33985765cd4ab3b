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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "hypercluster/pauli_sim.hpp"

using namespace hypercluster;

namespace {

const std::string kBolza = std::string(HYPERCLUSTER_DATA_DIR) + "/bolza_8_3_E24.lat";

/// Independent propagation: walks the gate list applying CZ conjugation
/// (X_a -> X_a Z_b, X_b -> Z_a X_b) to every gate later than the fault.
std::vector<int> walk_schedule(const ClusterState &cluster, const FaultLocation &loc) {
    std::vector<char> x(cluster.num_qubits(), 0);
    std::vector<char> z(cluster.num_qubits(), 0);
    int after = std::numeric_limits<int>::max();
    if (loc.kind == FaultKind::AfterCz) {
        const CzGate &g = cluster.schedule()[loc.site];
        int pa = loc.pauli / 4;
        int pb = loc.pauli % 4;
        x[g.a] = pa == 1 || pa == 2;
        z[g.a] = pa == 2 || pa == 3;
        x[g.b] = pb == 1 || pb == 2;
        z[g.b] = pb == 2 || pb == 3;
        after = g.time;
    } else {
        z[loc.site] = 1;
    }
    for (const CzGate &g : cluster.schedule()) {
        if (g.time <= after) {
            continue;
        }
        z[g.b] ^= x[g.a];
        z[g.a] ^= x[g.b];
    }
    std::vector<int> out;
    for (int q = 0; q < cluster.num_qubits(); q++) {
        if (z[q]) {
            out.push_back(q);
        }
    }
    return out;
}

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

/// Detectors of `type` whose parity the flips change.
std::vector<int> syndrome(const ClusterState &cluster, CheckType type, const std::vector<int> &flips) {
    std::set<int> s;
    for (int q : flips) {
        const MeasurementRole &role = cluster.role(q);
        if (role.type != type) {
            continue;
        }
        for (int i = 0; i < role.num_detectors; i++) {
            auto [it, fresh] = s.insert(role.detectors[i]);
            if (!fresh) {
                s.erase(it);
            }
        }
    }
    return {s.begin(), s.end()};
}

struct Fixture {
    ClusterState cluster;
    explicit Fixture(const Lattice &lat, int layers) : cluster(build_code(lat), layers) {
    }
};

}  // namespace

TEST(PauliSim, LocationCountAndIndexing) {
    Fixture s(generate_torus(3), 8);
    EXPECT_EQ(num_fault_locations(s.cluster), 6426);
    FaultLocation first = fault_location(s.cluster, 0);
    EXPECT_EQ(first.kind, FaultKind::AfterCz);
    EXPECT_EQ(first.site, 0);
    EXPECT_EQ(first.pauli, 1);
    FaultLocation f = fault_location(s.cluster, 15 * 7 + 14);
    EXPECT_EQ(f.site, 7);
    EXPECT_EQ(f.pauli, 15);
    FaultLocation m = fault_location(s.cluster, 15 * 414 + 3);
    EXPECT_EQ(m.kind, FaultKind::BeforeMeasurement);
    EXPECT_EQ(m.site, 3);
    EXPECT_DOUBLE_EQ(f.probability(0.03), 0.002);
    EXPECT_DOUBLE_EQ(m.probability(0.03), 0.03);
    EXPECT_THROW(fault_location(s.cluster, 6426), std::out_of_range);
}

TEST(PauliSim, ClosedFormPropagationMatchesScheduleWalk) {
    for (const Lattice &lat : {generate_torus(3), load_lattice(kBolza)}) {
        Fixture s(lat, 4);
        long long n = num_fault_locations(s.cluster);
        for (long long i = 0; i < n; i++) {
            FaultLocation loc = fault_location(s.cluster, i);
            std::vector<int> want = walk_schedule(s.cluster, loc);
            ASSERT_EQ(sorted(fault_flips(s.cluster, loc)), want) << loc.str();
        }
    }
}

TEST(PauliSim, PropagateMatchesScheduleWalk) {
    Fixture s(generate_torus(3), 4);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; trial++) {
        long long i = static_cast<long long>(rng() % (15 * s.cluster.schedule().size()));
        FaultLocation loc = fault_location(s.cluster, i);
        const CzGate &g = s.cluster.schedule()[loc.site];
        PauliFrame frame(static_cast<size_t>(s.cluster.num_qubits()));
        int pa = loc.pauli / 4;
        int pb = loc.pauli % 4;
        frame.x.set(g.a, pa == 1 || pa == 2);
        frame.z.set(g.a, pa == 2 || pa == 3);
        frame.x.set(g.b, pb == 1 || pb == 2);
        frame.z.set(g.b, pb == 2 || pb == 3);
        EXPECT_EQ(propagate(s.cluster, frame, g.time), walk_schedule(s.cluster, loc));
    }
}

TEST(PauliSim, FlipsAreLinear) {
    Fixture s(generate_torus(3), 8);
    std::mt19937_64 rng(4);
    long long n = num_fault_locations(s.cluster);
    for (int trial = 0; trial < 100; trial++) {
        std::vector<FaultLocation> both{fault_location(s.cluster, static_cast<long long>(rng() % n)),
                                        fault_location(s.cluster, static_cast<long long>(rng() % n))};
        BitChain a = forced_flips(s.cluster, std::span(both.data(), 1));
        BitChain b = forced_flips(s.cluster, std::span(both.data() + 1, 1));
        EXPECT_EQ(forced_flips(s.cluster, both), a ^ b);
    }
}

TEST(PauliSim, EverySingleFaultDecomposesIntoEdgeLikePieces) {
    for (const Lattice &lat : {generate_torus(3), load_lattice(kBolza)}) {
        Fixture s(lat, 8);
        FaultCatalog catalog(s.cluster);
        EXPECT_EQ(catalog.num_locations(), s.cluster.counts().n_f);
        for (long long i = 0; i < catalog.num_locations(); i++) {
            std::vector<int> flips = fault_flips(s.cluster, fault_location(s.cluster, i));
            BitChain flip_chain(static_cast<size_t>(s.cluster.num_qubits()));
            for (int q : flips) {
                flip_chain.flip(q);
            }
            ShotRecord rec = outcome_from_flips(s.cluster, flip_chain);
            for (CheckType type : kCheckTypes) {
                int ti = static_cast<int>(type);
                std::set<int> defects;
                BitChain slots(static_cast<size_t>(s.cluster.num_slots(type)));
                for (const Piece &p : catalog.pieces(i, type)) {
                    ASSERT_GE(p.defects.size(), 1u);
                    ASSERT_LE(p.defects.size(), 2u);
                    for (int d : p.defects) {
                        if (!defects.insert(d).second) {
                            defects.erase(d);
                        }
                    }
                    for (int sl : p.slots) {
                        slots.flip(sl);
                    }
                }
                EXPECT_EQ(std::vector<int>(defects.begin(), defects.end()), syndrome(s.cluster, type, flips));
                EXPECT_EQ(std::vector<int>(defects.begin(), defects.end()), rec.defects[ti]);
                // Pieces account for every flipped slot unless the fault is
                // invisible to this type.
                if (!rec.defects[ti].empty()) {
                    EXPECT_EQ(slots, rec.actual[ti]);
                }
            }
        }
    }
}

TEST(PauliSim, DemMechanismsTouchAtMostTwoDetectors) {
    Fixture s(generate_torus(3), 8);
    DetectorErrorModel dem = enumerate_faults(s.cluster, 0.001);
    EXPECT_EQ(dem.n_f, 6426);
    for (CheckType type : kCheckTypes) {
        ASSERT_FALSE(dem.of(type).empty());
        for (const Mechanism &m : dem.of(type)) {
            EXPECT_GE(m.defects.size(), 1u);
            EXPECT_LE(m.defects.size(), 2u);
            EXPECT_TRUE(std::is_sorted(m.defects.begin(), m.defects.end()));
            EXPECT_GT(m.probability, 0.0);
            EXPECT_LT(m.probability, 0.5);
        }
    }
}

TEST(PauliSim, DemProbabilitiesMatchIndependentGrouping) {
    Fixture s(generate_torus(3), 4);
    const double p = 0.004;
    FaultCatalog catalog(s.cluster);
    DetectorErrorModel dem = build_dem(catalog, p);
    for (CheckType type : kCheckTypes) {
        std::map<std::vector<int>, double> want;
        for (long long i = 0; i < catalog.num_locations(); i++) {
            double q = fault_location(s.cluster, i).probability(p);
            for (const Piece &piece : catalog.pieces(i, type)) {
                double &acc = want[piece.defects];
                acc = acc + q - 2 * acc * q;
            }
        }
        ASSERT_EQ(dem.of(type).size(), want.size());
        for (const Mechanism &m : dem.of(type)) {
            EXPECT_NEAR(m.probability, want.at(m.defects), 1e-15);
        }
    }
}

TEST(PauliSim, DemRoundTrip) {
    Fixture s(generate_torus(3), 4);
    DetectorErrorModel dem = enumerate_faults(s.cluster, 0.002);
    dem.lattice = "torus:3";
    std::stringstream buf;
    write_dem(buf, dem);
    DetectorErrorModel again = read_dem(buf);
    EXPECT_EQ(again.lattice, "torus:3");
    EXPECT_EQ(again.layers, 4);
    EXPECT_EQ(again.n_f, dem.n_f);
    EXPECT_EQ(again.num_detectors, dem.num_detectors);
    for (CheckType type : kCheckTypes) {
        ASSERT_EQ(again.of(type).size(), dem.of(type).size());
        for (size_t i = 0; i < dem.of(type).size(); i++) {
            EXPECT_EQ(again.of(type)[i].defects, dem.of(type)[i].defects);
            EXPECT_EQ(again.of(type)[i].footprint, dem.of(type)[i].footprint);
            EXPECT_DOUBLE_EQ(again.of(type)[i].probability, dem.of(type)[i].probability);
        }
    }
}

TEST(PauliSim, DemLineFormat) {
    Fixture s(generate_torus(3), 2);
    DetectorErrorModel dem = enumerate_faults(s.cluster, 0.01);
    std::ostringstream out;
    write_dem(out, dem);
    std::istringstream in(out.str());
    std::string line;
    int mech_lines = 0;
    while (std::getline(in, line)) {
        if (line.rfind("mech ", 0) != 0) {
            continue;
        }
        mech_lines++;
        std::istringstream ss(line);
        std::string tag, type, tok;
        ss >> tag >> type;
        EXPECT_TRUE(type == "X" || type == "Z");
        int ids = 0;
        while (ss >> tok && tok != "prob") {
            ids++;
        }
        EXPECT_TRUE(ids == 1 || ids == 2) << line;
        double prob = 0;
        ss >> prob >> tok;
        EXPECT_GT(prob, 0);
        EXPECT_EQ(tok, "footprint");
    }
    EXPECT_EQ(mech_lines, static_cast<int>(dem.of(CheckType::X).size() + dem.of(CheckType::Z).size()));
}

TEST(PauliSim, MalformedDemThrows) {
    std::istringstream in("mech Q 1 prob 0.1 footprint 0\n");
    EXPECT_ANY_THROW(read_dem(in));
}

TEST(PauliSim, RateOutsideRangeThrows) {
    Fixture s(generate_torus(3), 2);
    EXPECT_THROW(enumerate_faults(s.cluster, 0.0), std::invalid_argument);
    EXPECT_THROW(enumerate_faults(s.cluster, 0.5), std::invalid_argument);
}

TEST(PauliSim, SamplingIsReproducible) {
    Fixture s(generate_torus(3), 8);
    BitChain a = sample_flips(s.cluster, 0.02, 9, 17);
    BitChain b = sample_flips(s.cluster, 0.02, 9, 17);
    EXPECT_EQ(a, b);
    int differ = 0;
    for (uint64_t shot = 0; shot < 20; shot++) {
        differ += sample_flips(s.cluster, 0.02, 9, shot) != sample_flips(s.cluster, 0.02, 10, shot);
    }
    EXPECT_GT(differ, 10);
    ShotRecord rec = sample_shot(s.cluster, 0.02, 9, 17);
    ShotRecord want = outcome_from_flips(s.cluster, a);
    EXPECT_EQ(rec.defects, want.defects);
    EXPECT_EQ(rec.actual, want.actual);
}

TEST(PauliSim, NoiselessSamplingIsQuiet) {
    Fixture s(generate_torus(3), 8);
    for (uint64_t shot = 0; shot < 100; shot++) {
        EXPECT_TRUE(sample_flips(s.cluster, 0.0, 1, shot).none());
    }
}

TEST(PauliSim, SamplingRateMatchesSingleQubitFlipProbability) {
    // The outcome of a terminal node ancilla on the top layer is only flipped
    // by its own measurement fault and by the few CZ faults acting after its
    // last gate; compare the sampled rate to the exact single-fault sum.
    Fixture s(generate_torus(3), 2);
    const double p = 0.05;
    const int qb = s.cluster.qubit_id(QubitKind::NodeAncilla, 1, 0);
    double exact_none = 1.0;
    long long n = num_fault_locations(s.cluster);
    for (long long i = 0; i < n; i++) {
        FaultLocation loc = fault_location(s.cluster, i);
        auto flips = fault_flips(s.cluster, loc);
        if (std::find(flips.begin(), flips.end(), qb) != flips.end()) {
            exact_none *= 1 - 2 * loc.probability(p);
        }
    }
    double want = (1 - exact_none) / 2;
    const int shots = 20000;
    int hits = 0;
    for (int shot = 0; shot < shots; shot++) {
        hits += sample_flips(s.cluster, p, 5, shot).get(qb);
    }
    double got = static_cast<double>(hits) / shots;
    EXPECT_NEAR(got, want, 5 * std::sqrt(want * (1 - want) / shots));
}

TEST(PauliSim, FaceAncillaXFaultLeavesAChainWithTwoEnds) {
    // X on a face ancilla after its j-th CZ spreads Z onto the remaining
    // boundary edges of that face: a path whose two ends are the only defects.
    struct Case {
        Lattice lat;
        int after;
    };
    for (const Case &c : {Case{generate_torus(3), 2}, Case{load_lattice(kBolza), 4}}) {
        Fixture s(c.lat, 8);
        const int layer = 2;
        for (int f = 0; f < c.lat.num_faces(); f++) {
            int a = s.cluster.qubit_id(QubitKind::FaceAncilla, layer, f);
            int gate = s.cluster.gates_of(a)[c.after - 1];
            const CzGate &g = s.cluster.schedule()[gate];
            FaultLocation loc{FaultKind::AfterCz, gate, g.a == a ? 4 : 1};
            std::vector<int> flips = fault_flips(s.cluster, loc);
            ASSERT_EQ(flips.size(), static_cast<size_t>(c.lat.p - c.after));
            std::map<int, int> vertex_degree;
            for (int q : flips) {
                const ClusterQubit &cq = s.cluster.qubits()[q];
                ASSERT_EQ(cq.kind, QubitKind::PrimalData);
                ASSERT_EQ(cq.layer, layer);
                vertex_degree[c.lat.edges[cq.anchor][0]]++;
                vertex_degree[c.lat.edges[cq.anchor][1]]++;
            }
            std::vector<int> ends;
            for (auto [v, deg] : vertex_degree) {
                ASSERT_LE(deg, 2);
                if (deg == 1) {
                    ends.push_back(v);
                }
            }
            ASSERT_EQ(ends.size(), 2u);
            std::vector<int> want;
            for (int v : ends) {
                want.push_back((layer / 2) * c.lat.num_vertices() + v);
            }
            EXPECT_EQ(syndrome(s.cluster, CheckType::X, flips), want);
            EXPECT_TRUE(syndrome(s.cluster, CheckType::Z, flips).empty());
            FaultCatalog catalog(s.cluster);
            long long index = 15LL * gate + (loc.pauli - 1);
            ASSERT_EQ(catalog.pieces(index, CheckType::X).size(), 1u);
            EXPECT_EQ(catalog.pieces(index, CheckType::X)[0].defects, want);
            break;
        }
    }
}
