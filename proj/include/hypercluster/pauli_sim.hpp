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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypercluster/foliation.hpp"

namespace hypercluster {

enum class FaultKind : uint8_t { AfterCz, BeforeMeasurement };

/// One single-location fault process.
///
/// CZ sites carry a two-qubit Pauli `pauli` = 4*P_a + P_b in 1..15, with
/// I=0, X=1, Y=2, Z=3 acting on (gate.a, gate.b); it fires with probability
/// p/15. Measurement sites flip the recorded outcome of qubit `site` with
/// probability p.
struct FaultLocation {
    FaultKind kind;
    int site;
    int pauli = 0;

    double probability(double p) const {
        return kind == FaultKind::AfterCz ? p / 15.0 : p;
    }
    std::string str() const;
};

/// Locations are indexed CZ-major: index 15*s + (pauli-1) for gate s, then
/// 15*CZ + qubit for measurements.
long long num_fault_locations(const ClusterState &cluster);
FaultLocation fault_location(const ClusterState &cluster, long long index);

struct PauliFrame {
    BitChain x;
    BitChain z;

    explicit PauliFrame(size_t num_qubits) : x(num_qubits), z(num_qubits) {
    }
};

/// Conjugates `frame` through every gate with time > `after_time` and returns
/// the qubits whose X-basis outcome flips (Z component at readout), sorted.
std::vector<int> propagate(const ClusterState &cluster, PauliFrame frame, int after_time);

/// Flipped outcomes of a single fault, ordered along its propagation: the
/// directly hit qubit(s) first, then CZ partners in gate order.
std::vector<int> fault_flips(const ClusterState &cluster, const FaultLocation &loc);

/// Part of a fault's effect on one check type: at most two defects and the
/// data slots flipped along the way.
struct Piece {
    std::vector<int> defects;
    std::vector<int> slots;
};

struct DecompositionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Splits the flips of one check type into pieces of at most two defects by
/// walking them in propagation order and cutting whenever a third defect would
/// appear. Defect-free pieces are folded into a neighbour. Returns an empty list
/// when the flips touch no detector of that type.
std::vector<Piece> decompose(const ClusterState &cluster, CheckType type, std::span<const int> flips);

/// Effects of every fault location; independent of the physical error rate.
class FaultCatalog {
   public:
    explicit FaultCatalog(const ClusterState &cluster);

    const ClusterState &cluster() const {
        return *cluster_;
    }
    long long num_locations() const {
        return static_cast<long long>(offsets_[0].size()) - 1;
    }
    std::span<const Piece> pieces(long long location, CheckType type) const;
    /// Locations whose flips leave no defect of either type.
    long long num_silent() const {
        return num_silent_;
    }

   private:
    const ClusterState *cluster_;
    std::array<std::vector<Piece>, 2> pieces_;
    std::array<std::vector<size_t>, 2> offsets_;
    long long num_silent_ = 0;
};

struct Mechanism {
    std::vector<int> defects;  ///< one or two detector ids, sorted
    double probability = 0;
    std::vector<int> footprint;  ///< representative data slots
};

struct DetectorErrorModel {
    std::string lattice;
    int layers = 0;
    double p = 0;
    long long n_f = 0;
    std::array<int, 2> num_detectors = {0, 0};
    std::array<int, 2> num_slots = {0, 0};
    /// Sorted by defect set.
    std::array<std::vector<Mechanism>, 2> mechanisms;
    /// Effective flip probability P_d of each data slot.
    std::array<std::vector<double>, 2> slot_probability;

    const std::vector<Mechanism> &of(CheckType type) const {
        return mechanisms[static_cast<int>(type)];
    }
    /// -ln P_d, or +inf when P_d = 0.
    double slot_weight(CheckType type, int slot) const;
};

/// p1 + p2 - 2 p1 p2: probability that an odd number of two independent events occur.
inline double odd_combine(double a, double b) {
    return a + b - 2 * a * b;
}

DetectorErrorModel build_dem(const FaultCatalog &catalog, double p);
/// Builds the catalog and the model in one step; requires 0 < p < 1/2.
DetectorErrorModel enumerate_faults(const ClusterState &cluster, double p);

void write_dem(std::ostream &out, const DetectorErrorModel &dem);
DetectorErrorModel read_dem(std::istream &in);

/// Syndrome and actual data-slot chain of one shot, per check type.
struct ShotRecord {
    std::array<std::vector<int>, 2> defects;
    std::array<BitChain, 2> actual;
};

ShotRecord outcome_from_flips(const ClusterState &cluster, const BitChain &flips);

/// Flipped outcomes of one noisy shot. Every location fires independently; the
/// random stream depends only on (seed, shot).
BitChain sample_flips(const ClusterState &cluster, double p, uint64_t seed, uint64_t shot);
ShotRecord sample_shot(const ClusterState &cluster, double p, uint64_t seed, uint64_t shot);

/// Flipped outcomes when exactly the given locations fire.
BitChain forced_flips(const ClusterState &cluster, std::span<const FaultLocation> faults);

}  // namespace hypercluster
