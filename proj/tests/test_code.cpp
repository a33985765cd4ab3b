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

#include <bit>
#include <cmath>
#include <sstream>

#include "hypercluster/code.hpp"

using namespace hypercluster;

namespace {

const std::string kBolza = std::string(HYPERCLUSTER_DATA_DIR) + "/bolza_8_3_E24.lat";

/// Column masks of a matrix with at most 64 rows.
std::vector<uint64_t> column_masks(const std::vector<BitChain> &rows, size_t cols) {
    std::vector<uint64_t> masks(cols, 0);
    for (size_t r = 0; r < rows.size(); r++) {
        for (int c : rows[r].ones()) {
            masks[c] |= uint64_t{1} << r;
        }
    }
    return masks;
}

/// Minimum weight of x with checks * x = 0 and some opposing logical pairing
/// to one, found by walking all 2^n chains in Gray-code order.
int brute_force_distance(const Gf2Matrix &checks, const std::vector<BitChain> &opposing) {
    const size_t n = checks.cols;
    auto syn = column_masks(checks.rows, n);
    auto log = column_masks(opposing, n);
    uint64_t s = 0;
    uint64_t l = 0;
    int weight = 0;
    int best = static_cast<int>(n) + 1;
    std::vector<char> on(n, 0);
    for (uint64_t g = 1; g < (uint64_t{1} << n); g++) {
        int bit = std::countr_zero(g);
        s ^= syn[bit];
        l ^= log[bit];
        on[bit] ^= 1;
        weight += on[bit] ? 1 : -1;
        if (s == 0 && l != 0 && weight < best) {
            best = weight;
        }
    }
    return best;
}

/// Independent rank on row masks (<= 64 columns).
int mask_rank(const Gf2Matrix &m) {
    std::vector<uint64_t> rows;
    for (const BitChain &r : m.rows) {
        rows.push_back(r.words()[0]);
    }
    int rank = 0;
    for (int bit = 0; bit < 64; bit++) {
        int piv = -1;
        for (size_t i = rank; i < rows.size(); i++) {
            if (rows[i] >> bit & 1) {
                piv = static_cast<int>(i);
                break;
            }
        }
        if (piv < 0) {
            continue;
        }
        std::swap(rows[rank], rows[piv]);
        for (size_t i = 0; i < rows.size(); i++) {
            if (static_cast<int>(i) != rank && (rows[i] >> bit & 1)) {
                rows[i] ^= rows[rank];
            }
        }
        rank++;
    }
    return rank;
}

void expect_valid_basis(const CssCode &code) {
    const auto &b = code.basis;
    ASSERT_EQ(static_cast<int>(b.z_logicals.size()), code.k);
    ASSERT_EQ(static_cast<int>(b.x_logicals.size()), code.k);
    for (const BitChain &z : b.z_logicals) {
        for (const BitChain &row : code.hx.rows) {
            EXPECT_FALSE(pairing(row, z));
        }
    }
    for (const BitChain &x : b.x_logicals) {
        for (const BitChain &row : code.hz.rows) {
            EXPECT_FALSE(pairing(row, x));
        }
    }
    for (int i = 0; i < code.k; i++) {
        for (int j = 0; j < code.k; j++) {
            EXPECT_EQ(pairing(b.z_logicals[i], b.x_logicals[j]), i == j);
        }
    }
}

}  // namespace

TEST(Code, TorusParameters) {
    for (int L : {3, 5}) {
        CssCode code = build_code(generate_torus(L));
        EXPECT_EQ(code.n, 2 * L * L);
        EXPECT_EQ(code.k, 2);
        EXPECT_EQ(code.d_z.value, L);
        EXPECT_EQ(code.d_x.value, L);
        EXPECT_TRUE(code.d_z.exact && code.d_x.exact);
        std::ostringstream want;
        want << "[[" << 2 * L * L << ",2," << L << ',' << L << "]]";
        EXPECT_EQ(code.params(), want.str());
        expect_valid_basis(code);
    }
}

TEST(Code, DimensionMatchesIndependentRank) {
    for (const Lattice &lat : {generate_torus(3), generate_torus(4), load_lattice(kBolza)}) {
        CssCode code = build_code(lat);
        EXPECT_EQ(code.k, code.n - mask_rank(code.hz) - mask_rank(code.hx));
        EXPECT_EQ(code.k, 2 * lat.genus());
    }
}

TEST(Code, DistancesMatchBruteForce) {
    for (const Lattice &lat : {generate_torus(3), load_lattice(kBolza)}) {
        CssCode code = build_code(lat);
        EXPECT_EQ(code.d_z.value, brute_force_distance(code.hx, code.basis.x_logicals)) << lat.label;
        EXPECT_EQ(code.d_x.value, brute_force_distance(code.hz, code.basis.z_logicals)) << lat.label;
    }
}

TEST(Code, BolzaParameters) {
    CssCode code = build_code(load_lattice(kBolza));
    expect_valid_basis(code);
    EXPECT_EQ(code.params(), "[[24,4,6,2]]");
    EXPECT_EQ(code.rate(), Rational::make(1, 6));
}

TEST(Code, DistanceSearchSkippedAboveLimit) {
    DistanceOptions opts;
    opts.max_edges = 10;
    CssCode code = build_code(generate_torus(3), opts);
    EXPECT_FALSE(code.d_z.exact);
    EXPECT_EQ(code.params(), "[[18,2,>=2,>=2]]");
}

TEST(Code, EncodingRateTable) {
    const std::vector<std::pair<long long, double>> rows{{216, 0.0926}, {288, 0.0903}, {384, 0.0885}, {600, 0.0867}};
    for (auto [n, want] : rows) {
        double got = encoding_rate(8, 3, n).value();
        EXPECT_NEAR(std::round(got * 1e4) / 1e4, want, 1e-12) << n;
        // Independent form: k = 2 - 2n/p + n - 2n/q.
        double k = 2.0 - 2.0 * n / 8 + n - 2.0 * n / 3;
        EXPECT_NEAR(got, k / n, 1e-12);
    }
}

TEST(Code, EncodingRateRejectsInconsistentSize) {
    // n = 16 gives 2n/q = 32/3 vertices, which no closed {8,3} lattice has.
    EXPECT_THROW(encoding_rate(8, 3, 16), std::invalid_argument);
}

TEST(Code, ManifestListsChecksAndLogicals) {
    CssCode code = build_code(generate_torus(3));
    std::ostringstream out;
    write_code_manifest(out, code);
    std::string text = out.str();
    EXPECT_NE(text.find("params [[18,2,3,3]]"), std::string::npos) << text.substr(0, 200);
    EXPECT_NE(text.find("zlogical"), std::string::npos);
    EXPECT_NE(text.find("xlogical"), std::string::npos);
}

TEST(Code, ShippedHyperbolicInstances) {
    struct Want {
        std::string file;
        int edges;
        int genus;
        std::string params;
    };
    for (const Want &w : {Want{"hyperbolic_8_3_E216.lat", 216, 10, "[[216,20,12,5]]"},
                          Want{"hyperbolic_8_3_E384.lat", 384, 17, "[[384,34,12,4]]"}}) {
        Lattice lat = load_lattice(std::string(HYPERCLUSTER_DATA_DIR) + "/" + w.file);
        EXPECT_EQ(lat.num_edges(), w.edges);
        EXPECT_EQ(lat.genus(), w.genus);
        CssCode code = build_code(lat);
        EXPECT_EQ(code.params(), w.params);
        EXPECT_EQ(code.rate(), encoding_rate(8, 3, w.edges));
    }
}
