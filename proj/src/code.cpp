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

#include "hypercluster/code.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>

namespace hypercluster {

Rational Rational::make(long long num, long long den) {
    if (den == 0) {
        throw std::invalid_argument("Rational: zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

std::string Rational::str() const {
    return std::to_string(num) + "/" + std::to_string(den);
}

namespace {

std::string distance_str(const DistanceResult &d) {
    return (d.exact ? "" : ">=") + std::to_string(d.value);
}

void write_support(std::ostream &out, const char *tag, size_t index, const BitChain &row) {
    out << tag << ' ' << index;
    for (int e : row.ones()) {
        out << ' ' << e;
    }
    out << '\n';
}

}  // namespace

std::string CssCode::params() const {
    return "[[" + std::to_string(n) + "," + std::to_string(k) + "," + distance_str(d_z) + "," +
           distance_str(d_x) + "]]";
}

CssCode build_code(const Lattice &lat, const DistanceOptions &options) {
    CssCode code;
    code.lattice = lat;
    const size_t num_edges = static_cast<size_t>(lat.num_edges());
    code.hz = Gf2Matrix(static_cast<size_t>(lat.num_faces()), num_edges);
    for (size_t f = 0; f < lat.faces.size(); f++) {
        for (int e : lat.faces[f]) {
            code.hz.rows[f].flip(static_cast<size_t>(e));
        }
    }
    code.hx = Gf2Matrix(static_cast<size_t>(lat.num_vertices()), num_edges);
    for (size_t e = 0; e < num_edges; e++) {
        for (int v : lat.edges[e]) {
            code.hx.rows[static_cast<size_t>(v)].flip(e);
        }
    }
    code.basis = logical_basis(code.hz, code.hx);
    code.n = static_cast<int>(num_edges);
    code.k = static_cast<int>(code.basis.num_logicals());
    code.d_z = distance(code.hx, code.basis.x_logicals, options);
    code.d_x = distance(code.hz, code.basis.z_logicals, options);
    return code;
}

Rational encoding_rate(int p, int q, long long n) {
    if (p < 3 || q < 3 || n <= 0) {
        throw std::invalid_argument("encoding_rate: need p, q >= 3 and n > 0");
    }
    if ((2 * n) % p != 0 || (2 * n) % q != 0) {
        throw std::invalid_argument("encoding_rate: n=" + std::to_string(n) + " is inconsistent with a {" +
                                    std::to_string(p) + "," + std::to_string(q) +
                                    "} lattice (2n/p and 2n/q must be integers)");
    }
    // k = 2 - chi = 2 - F + E - V with F = 2n/p and V = 2n/q.
    long long k = 2 - 2 * n / p + n - 2 * n / q;
    return Rational::make(k, n);
}

void write_code_manifest(std::ostream &out, const CssCode &code) {
    out << "# code " << code.lattice.label << '\n';
    out << "params " << code.params() << '\n';
    out << "rate " << code.rate().str() << '\n';
    for (size_t f = 0; f < code.hz.num_rows(); f++) {
        write_support(out, "zcheck", f, code.hz.rows[f]);
    }
    for (size_t v = 0; v < code.hx.num_rows(); v++) {
        write_support(out, "xcheck", v, code.hx.rows[v]);
    }
    for (size_t i = 0; i < code.basis.z_logicals.size(); i++) {
        write_support(out, "zlogical", i, code.basis.z_logicals[i]);
    }
    for (size_t i = 0; i < code.basis.x_logicals.size(); i++) {
        write_support(out, "xlogical", i, code.basis.x_logicals[i]);
    }
}

}  // namespace hypercluster
