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

#include <iosfwd>
#include <string>

#include "hypercluster/homology.hpp"
#include "hypercluster/lattice.hpp"

namespace hypercluster {

/// Exact rational in lowest terms with positive denominator.
struct Rational {
    long long num = 0;
    long long den = 1;

    static Rational make(long long num, long long den);
    double value() const {
        return static_cast<double>(num) / static_cast<double>(den);
    }
    std::string str() const;
    bool operator==(const Rational &other) const = default;
};

/// CSS code with qubits on edges, Z checks on faces and X checks on vertices.
struct CssCode {
    Lattice lattice;
    Gf2Matrix hz;  ///< F x E, row f is the boundary of face f.
    Gf2Matrix hx;  ///< V x E, row v is the star of vertex v.
    HomologyBasis basis;
    int n = 0;
    int k = 0;
    DistanceResult d_z;
    DistanceResult d_x;

    /// "[[n,k,d_Z,d_X]]", with a '>=' prefix on any inexact distance.
    std::string params() const;
    Rational rate() const {
        return Rational::make(k, n);
    }
};

CssCode build_code(const Lattice &lat, const DistanceOptions &options = {});

/// 1 - 2/p - 2/q + 2/n for a closed {p,q} lattice with n edges. Throws
/// std::invalid_argument unless 2n/p and 2n/q are integers.
Rational encoding_rate(int p, int q, long long n);

/// Text manifest: parameters, check supports and logical supports, one per line.
void write_code_manifest(std::ostream &out, const CssCode &code);

}  // namespace hypercluster
