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

#include "hypercluster/code.hpp"

namespace hypercluster {

enum class QubitKind : uint8_t { PrimalData, FaceAncilla, DualData, NodeAncilla };

/// X-type detectors sit on vertices of primal layers and catch Z errors (the
/// logical-Z channel); Z-type detectors sit on faces of dual layers and catch
/// X errors (the logical-X channel).
enum class CheckType : uint8_t { X = 0, Z = 1 };

inline constexpr std::array<CheckType, 2> kCheckTypes = {CheckType::X, CheckType::Z};

const char *qubit_kind_name(QubitKind kind);
char check_type_name(CheckType type);
/// Name of the logical channel decoded by detectors of this type ('Z' for X-type).
char channel_name(CheckType type);
CheckType check_type_for_channel(char channel);
CheckType parse_check_type(const std::string &name);

struct ClusterQubit {
    QubitKind kind;
    int layer;
    int anchor;  ///< edge id for data, face id for face ancillas, vertex id for node ancillas
    int id;
};

struct CzGate {
    int a;  ///< ancilla, or the lower data qubit for inter-layer gates
    int b;
    int time;
};

struct Detector {
    CheckType type;
    int center;  ///< vertex id (X-type) or face id (Z-type)
    int layer;   ///< equator layer
    std::vector<int> qubits;
};

/// A logical representative swept through the foliation. Type 'Z' surfaces
/// replicate a cycle on every primal layer; type 'X' surfaces replicate a
/// cocycle on every dual layer.
struct CorrelationSurface {
    char type;
    int logical;
    BitChain base;
};

/// How a measurement outcome enters decoding: which detectors contain the
/// qubit and which data slot (if any) its flip represents.
struct MeasurementRole {
    CheckType type;
    int num_detectors = 0;
    std::array<int, 2> detectors = {-1, -1};
    int slot = -1;
};

struct ResourceCounts {
    long long cz = 0;
    long long qubits = 0;
    long long n_f = 0;
};

/// Closed forms E(6z-1), 2Ez(1+1/p+1/q) and 15 CZ + M for a {p,q} lattice with
/// E edges and 2z layers. Throws std::invalid_argument for inconsistent E.
ResourceCounts resource_counts(int p, int q, long long num_edges, int z);

/// Foliated cluster state over 2z alternating layers (layer 0 primal).
///
/// Qubit ids are assigned layer by layer: data qubits first (by edge id), then
/// the layer's ancillas (by face id on primal layers, vertex id on dual layers).
/// Detector ids: X-type (v, primal layer 2i) is i*V + v; Z-type (f, dual layer
/// 2i+1) is i*F + f. Data slots of either type: the data qubit of edge e in the
/// i-th layer of matching parity is slot i*E + e. The ancilla at the open time
/// boundary of each center c (node ancilla on the top layer, face ancilla on
/// the bottom layer) is the terminal slot z*E + c.
class ClusterState {
   public:
    ClusterState(CssCode code, int layers);

    const CssCode &code() const {
        return code_;
    }
    const Lattice &lattice() const {
        return code_.lattice;
    }
    int layers() const {
        return layers_;
    }
    int z() const {
        return layers_ / 2;
    }
    int num_qubits() const {
        return static_cast<int>(qubits_.size());
    }
    const std::vector<ClusterQubit> &qubits() const {
        return qubits_;
    }
    int qubit_id(QubitKind kind, int layer, int anchor) const;

    /// CZ gates sorted by time; the index is the gate (fault site) id.
    const std::vector<CzGate> &schedule() const {
        return schedule_;
    }
    int num_time_steps() const {
        return num_time_steps_;
    }
    /// Gate ids touching a qubit, in time order.
    const std::vector<int> &gates_of(int qubit) const {
        return gates_of_[qubit];
    }
    int partner(int gate, int qubit) const {
        const CzGate &g = schedule_[gate];
        return g.a == qubit ? g.b : g.a;
    }

    const std::vector<Detector> &detectors(CheckType type) const {
        return detectors_[static_cast<int>(type)];
    }
    int num_detectors(CheckType type) const {
        return static_cast<int>(detectors(type).size());
    }
    /// Number of detector centers per layer: V for X-type, F for Z-type.
    int num_centers(CheckType type) const;
    int num_slots(CheckType type) const {
        return z() * lattice().num_edges() + num_centers(type);
    }
    const MeasurementRole &role(int qubit) const {
        return roles_[qubit];
    }

    const std::vector<CorrelationSurface> &correlation_surfaces() const {
        return surfaces_;
    }
    ResourceCounts counts() const;

    /// Writes the registry, schedule, detectors and correlation surfaces.
    void write_manifest(std::ostream &out) const;

   private:
    CssCode code_;
    int layers_;
    std::vector<ClusterQubit> qubits_;
    std::vector<int> layer_offset_;
    std::vector<CzGate> schedule_;
    int num_time_steps_ = 0;
    std::vector<std::vector<int>> gates_of_;
    std::array<std::vector<Detector>, 2> detectors_;
    std::vector<MeasurementRole> roles_;
    std::vector<CorrelationSurface> surfaces_;
};

/// Qubits of a correlation surface (the base chain on each layer of its parity).
std::vector<int> surface_qubits(const ClusterState &cluster, const CorrelationSurface &surface);

/// Detector counts (zV, zF) for a code foliated over 2z layers.
std::array<int, 2> detector_count(const CssCode &code, int layers);

struct SurfaceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Multiplies the cluster stabilizers of the given qubits (repeats cancel) and
/// returns the X support of the product, sorted. Throws SurfaceError if the Z
/// factors do not cancel, i.e. the set is not a closed surface.
std::vector<int> closed_surface_check(const ClusterState &cluster, std::span<const int> sites);

}  // namespace hypercluster
