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
#include <random>

#include "hypercluster/decoder.hpp"

using namespace hypercluster;

namespace {

const std::string kBolza = std::string(HYPERCLUSTER_DATA_DIR) + "/bolza_8_3_E24.lat";
constexpr double kInf = std::numeric_limits<double>::infinity();

/// All-pairs distances over detectors plus boundary, never routing through
/// the boundary node.
std::vector<std::vector<double>> floyd_warshall(const DecodingGraph &g) {
    const int n = g.num_detectors() + 1;
    std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
    for (int i = 0; i < n; i++) {
        d[i][i] = 0;
    }
    for (const auto &e : g.edges()) {
        d[e.u][e.v] = std::min(d[e.u][e.v], e.weight);
        d[e.v][e.u] = std::min(d[e.v][e.u], e.weight);
    }
    for (int k = 0; k < n; k++) {
        if (k == g.boundary()) {
            continue;
        }
        for (int i = 0; i < n; i++) {
            for (int j = 0; j < n; j++) {
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
            }
        }
    }
    return d;
}

/// Minimum total weight over pairings of the defects where any defect may
/// instead go to the boundary (bitmask DP on the lowest unmatched defect).
double brute_force_matching(const std::vector<std::vector<double>> &d, const std::vector<int> &defects, int boundary) {
    const int n = static_cast<int>(defects.size());
    std::vector<double> best(size_t{1} << n, kInf);
    best[0] = 0;
    for (uint32_t mask = 1; mask < (1u << n); mask++) {
        int i = __builtin_ctz(mask);
        uint32_t rest = mask & ~(1u << i);
        double b = best[rest] + d[defects[i]][boundary];
        for (int j = i + 1; j < n; j++) {
            if (rest >> j & 1) {
                b = std::min(b, best[rest & ~(1u << j)] + d[defects[i]][defects[j]]);
            }
        }
        best[mask] = b;
    }
    return best[(1u << n) - 1];
}

struct Stack {
    ClusterState cluster;
    DetectorErrorModel dem;
    Stack(const Lattice &lat, int layers, double p) : cluster(build_code(lat), layers) {
        dem = enumerate_faults(cluster, p);
    }
};

}  // namespace

TEST(Decoder, MwpmMatchesBruteForce) {
    Stack s(generate_torus(3), 8, 0.001);
    std::mt19937_64 rng(2024);
    int agree = 0;
    for (CheckType type : kCheckTypes) {
        DecodingGraph g(s.dem, type);
        auto d = floyd_warshall(g);
        for (int trial = 0; trial < 100; trial++) {
            int count = 8 + static_cast<int>(rng() % 5);
            std::vector<int> all(g.num_detectors());
            for (int i = 0; i < g.num_detectors(); i++) {
                all[i] = i;
            }
            std::shuffle(all.begin(), all.end(), rng);
            std::vector<int> defects(all.begin(), all.begin() + count);
            std::sort(defects.begin(), defects.end());
            Matching m = mwpm(g, defects);
            double want = brute_force_matching(d, defects, g.boundary());
            EXPECT_NEAR(m.weight, want, 1e-4) << "trial " << trial;
            agree += std::abs(m.weight - want) < 1e-4;
            // Every defect appears exactly once.
            std::vector<int> seen;
            for (auto [a, b] : m.pairs) {
                seen.push_back(a);
                if (b != g.boundary()) {
                    seen.push_back(b);
                }
            }
            std::sort(seen.begin(), seen.end());
            EXPECT_EQ(seen, defects);
        }
    }
    EXPECT_EQ(agree, 200);
}

TEST(Decoder, DijkstraMatchesFloydWarshall) {
    Stack s(load_lattice(kBolza), 4, 0.003);
    for (CheckType type : kCheckTypes) {
        DecodingGraph g(s.dem, type);
        auto d = floyd_warshall(g);
        for (int src = 0; src < g.num_detectors(); src++) {
            auto got = g.distances_from(src);
            for (int t = 0; t <= g.num_detectors(); t++) {
                EXPECT_NEAR(got[t], d[src][t], 1e-9);
            }
        }
    }
}

TEST(Decoder, EmptySyndromeGivesEmptyCorrection) {
    Stack s(generate_torus(3), 8, 0.001);
    ChannelDecoder dec(s.dem, s.cluster, CheckType::X);
    EXPECT_TRUE(dec.decode({}).none());
}

TEST(Decoder, OutOfRangeDefectThrows) {
    Stack s(generate_torus(3), 2, 0.001);
    DecodingGraph g(s.dem, CheckType::X);
    std::vector<int> bad{g.num_detectors()};
    EXPECT_THROW(mwpm(g, bad), DecoderError);
}

TEST(Decoder, StackPathIsShortestAndLexicographic) {
    ClusterState cluster(build_code(generate_torus(3)), 4);
    ConnectivityStack stack(cluster, CheckType::X);
    // Detectors 0 and 1 are horizontal neighbours on the first primal layer,
    // joined by edge h(0,0) = slot 0.
    EXPECT_EQ(stack.shortest_path(0, 1), (std::vector<int>{0}));
    // Same vertex one primal layer up: a single time-like hop, no data slot.
    EXPECT_TRUE(stack.shortest_path(0, 9).empty());
    // To the boundary from the last layer: the terminal node ancilla.
    EXPECT_EQ(stack.shortest_path(9, stack.boundary()), (std::vector<int>{2 * 18 + 0}));
}

TEST(Decoder, JudgeRecognisesLogicalsAndStabilizers) {
    Lattice lat = generate_torus(3);
    ClusterState cluster(build_code(lat), 4);
    const auto &code = cluster.code();
    BitChain empty(static_cast<size_t>(cluster.num_slots(CheckType::X)));
    // A Z logical on the second primal layer flips the opposing X logical.
    BitChain logical = empty;
    for (int e : code.basis.z_logicals[0].ones()) {
        logical.flip(18 + e);
    }
    Verdict v = judge(logical, empty, cluster, CheckType::X);
    EXPECT_TRUE(v.failed);
    EXPECT_TRUE(v.flags[0]);
    EXPECT_FALSE(v.flags[1]);
    // The boundary of a face is trivial.
    BitChain face = empty;
    for (int e : lat.faces[4]) {
        face.flip(e);
    }
    EXPECT_FALSE(judge(face, empty, cluster, CheckType::X).failed);
    // A path with loose ends is not a valid residual.
    BitChain open = empty;
    open.flip(0);
    EXPECT_THROW(judge(open, empty, cluster, CheckType::X), DecoderError);
}

TEST(Decoder, JudgeClosesEndsOnTheTimeBoundary) {
    Lattice lat = generate_torus(3);
    ClusterState cluster(build_code(lat), 4);
    const int E = lat.num_edges();
    BitChain empty(static_cast<size_t>(cluster.num_slots(CheckType::X)));
    // Edge h(0,0) joins vertices 0 and 1; terminal slots of both close it.
    BitChain chain = empty;
    chain.flip(0);
    chain.flip(2 * E + 0);
    chain.flip(2 * E + 1);
    EXPECT_FALSE(judge(chain, empty, cluster, CheckType::X).failed);
}

TEST(Decoder, EverySingleDataErrorIsCorrected) {
    // Phenomenological check: one flipped data slot or measurement outcome at
    // a time, decoded with the circuit-level graph.
    for (const Lattice &lat : {generate_torus(3), generate_torus(5)}) {
        Stack s(lat, 8, 0.001);
        for (CheckType type : kCheckTypes) {
            ChannelDecoder dec(s.dem, s.cluster, type);
            for (int qb = 0; qb < s.cluster.num_qubits(); qb++) {
                const MeasurementRole &role = s.cluster.role(qb);
                if (role.type != type) {
                    continue;
                }
                BitChain flips(static_cast<size_t>(s.cluster.num_qubits()));
                flips.set(qb);
                ShotRecord rec = outcome_from_flips(s.cluster, flips);
                int ti = static_cast<int>(type);
                BitChain inferred = dec.decode(rec.defects[ti]);
                EXPECT_FALSE(judge(rec.actual[ti], inferred, s.cluster, type).failed)
                    << lat.label << " qubit " << qb;
            }
        }
    }
}

TEST(Decoder, EverySingleCircuitFaultIsCorrected) {
    Stack s(generate_torus(3), 8, 0.001);
    ChannelDecoder dx(s.dem, s.cluster, CheckType::X);
    ChannelDecoder dz(s.dem, s.cluster, CheckType::Z);
    long long n = num_fault_locations(s.cluster);
    int failures = 0;
    for (long long i = 0; i < n; i++) {
        std::vector<FaultLocation> one{fault_location(s.cluster, i)};
        ShotRecord rec = outcome_from_flips(s.cluster, forced_flips(s.cluster, one));
        for (CheckType type : kCheckTypes) {
            int ti = static_cast<int>(type);
            const ChannelDecoder &dec = type == CheckType::X ? dx : dz;
            failures += judge(rec.actual[ti], dec.decode(rec.defects[ti]), s.cluster, type).failed;
        }
    }
    EXPECT_EQ(failures, 0);
}
