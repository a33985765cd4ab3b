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

#include "hypercluster/foliation.hpp"

#include <algorithm>
#include <ostream>

namespace hypercluster {

const char *qubit_kind_name(QubitKind kind) {
    switch (kind) {
        case QubitKind::PrimalData:
            return "primal-data";
        case QubitKind::FaceAncilla:
            return "face-ancilla";
        case QubitKind::DualData:
            return "dual-data";
        case QubitKind::NodeAncilla:
            return "node-ancilla";
    }
    return "?";
}

char check_type_name(CheckType type) {
    return type == CheckType::X ? 'X' : 'Z';
}

char channel_name(CheckType type) {
    return type == CheckType::X ? 'Z' : 'X';
}

CheckType check_type_for_channel(char channel) {
    if (channel == 'Z') {
        return CheckType::X;
    }
    if (channel == 'X') {
        return CheckType::Z;
    }
    throw std::invalid_argument(std::string("unknown channel '") + channel + "'");
}

CheckType parse_check_type(const std::string &name) {
    if (name == "X") {
        return CheckType::X;
    }
    if (name == "Z") {
        return CheckType::Z;
    }
    throw std::invalid_argument("unknown check type '" + name + "'");
}

ResourceCounts resource_counts(int p, int q, long long num_edges, int z) {
    if (p < 3 || q < 3 || z < 1 || num_edges <= 0) {
        throw std::invalid_argument("resource_counts: need p, q >= 3, z >= 1 and E > 0");
    }
    if ((2 * num_edges) % p != 0 || (2 * num_edges) % q != 0) {
        throw std::invalid_argument("resource_counts: E=" + std::to_string(num_edges) +
                                    " is inconsistent with pF = 2E = qV");
    }
    const long long E = num_edges;
    const long long F = 2 * E / p;
    const long long V = 2 * E / q;
    ResourceCounts c;
    c.cz = z * (p * F + q * V) + E * (2 * z - 1);
    c.qubits = z * (F + V + 2 * E);
    c.n_f = 15 * c.cz + c.qubits;
    // Cross-check against the closed forms, cleared of denominators.
    if (c.cz != E * (6 * z - 1) || c.qubits * p * q != 2 * E * z * (p * q + q + p) ||
        c.n_f * p * q != 92 * E * z * p * q + 2 * E * z * q + 2 * E * z * p - 15 * E * p * q) {
        throw std::logic_error("resource_counts: closed forms disagree");
    }
    return c;
}

namespace {

bool is_primal(int layer) {
    return layer % 2 == 0;
}

}  // namespace

ClusterState::ClusterState(CssCode code, int layers) : code_(std::move(code)), layers_(layers) {
    if (layers < 2 || layers % 2 != 0) {
        throw std::invalid_argument("layers must be even and >= 2, got " + std::to_string(layers));
    }
    const Lattice &lat = code_.lattice;
    const int E = lat.num_edges();

    for (int t = 0; t < layers_; t++) {
        layer_offset_.push_back(static_cast<int>(qubits_.size()));
        bool primal = is_primal(t);
        for (int e = 0; e < E; e++) {
            qubits_.push_back({primal ? QubitKind::PrimalData : QubitKind::DualData, t, e,
                               static_cast<int>(qubits_.size())});
        }
        int num_anc = primal ? lat.num_faces() : lat.num_vertices();
        for (int c = 0; c < num_anc; c++) {
            qubits_.push_back({primal ? QubitKind::FaceAncilla : QubitKind::NodeAncilla, t, c,
                               static_cast<int>(qubits_.size())});
        }
    }
    layer_offset_.push_back(static_cast<int>(qubits_.size()));

    // Per layer: intra-layer rounds, round r applying each ancilla's r-th CZ in
    // rotation order, then one inter-layer round to the layer above. A data
    // qubit hit by two ancillas in the same round gets consecutive sub-steps.
    int time = 0;
    std::vector<int> hits(static_cast<size_t>(E));
    for (int t = 0; t < layers_; t++) {
        bool primal = is_primal(t);
        const auto &rotations = primal ? lat.faces : lat.vertex_rotations;
        QubitKind anc_kind = primal ? QubitKind::FaceAncilla : QubitKind::NodeAncilla;
        QubitKind data_kind = primal ? QubitKind::PrimalData : QubitKind::DualData;
        int degree = primal ? lat.p : lat.q;
        for (int r = 0; r < degree; r++) {
            std::fill(hits.begin(), hits.end(), 0);
            int width = 1;
            for (size_t c = 0; c < rotations.size(); c++) {
                int e = rotations[c][static_cast<size_t>(r)];
                int sub = hits[static_cast<size_t>(e)]++;
                width = std::max(width, sub + 1);
                schedule_.push_back(
                    {qubit_id(anc_kind, t, static_cast<int>(c)), qubit_id(data_kind, t, e), time + sub});
            }
            time += width;
        }
        if (t + 1 < layers_) {
            QubitKind above = is_primal(t + 1) ? QubitKind::PrimalData : QubitKind::DualData;
            for (int e = 0; e < E; e++) {
                schedule_.push_back({qubit_id(data_kind, t, e), qubit_id(above, t + 1, e), time});
            }
            time++;
        }
    }
    num_time_steps_ = time;
    std::stable_sort(schedule_.begin(), schedule_.end(),
                     [](const CzGate &x, const CzGate &y) { return x.time < y.time; });
    gates_of_.assign(qubits_.size(), {});
    for (size_t g = 0; g < schedule_.size(); g++) {
        gates_of_[schedule_[g].a].push_back(static_cast<int>(g));
        gates_of_[schedule_[g].b].push_back(static_cast<int>(g));
    }
    for (const auto &gates : gates_of_) {
        for (size_t i = 1; i < gates.size(); i++) {
            if (schedule_[gates[i]].time == schedule_[gates[i - 1]].time) {
                throw std::logic_error("schedule conflict: qubit used twice in one time step");
            }
        }
    }

    for (int i = 0; i < z(); i++) {
        int t = 2 * i;
        for (int v = 0; v < lat.num_vertices(); v++) {
            Detector d{CheckType::X, v, t, {}};
            for (int e : lat.vertex_rotations[static_cast<size_t>(v)]) {
                d.qubits.push_back(qubit_id(QubitKind::PrimalData, t, e));
            }
            if (t >= 1) {
                d.qubits.push_back(qubit_id(QubitKind::NodeAncilla, t - 1, v));
            }
            d.qubits.push_back(qubit_id(QubitKind::NodeAncilla, t + 1, v));
            detectors_[0].push_back(std::move(d));
        }
    }
    for (int i = 0; i < z(); i++) {
        int t = 2 * i + 1;
        for (int f = 0; f < lat.num_faces(); f++) {
            Detector d{CheckType::Z, f, t, {}};
            for (int e : lat.faces[static_cast<size_t>(f)]) {
                d.qubits.push_back(qubit_id(QubitKind::DualData, t, e));
            }
            d.qubits.push_back(qubit_id(QubitKind::FaceAncilla, t - 1, f));
            if (t + 1 < layers_) {
                d.qubits.push_back(qubit_id(QubitKind::FaceAncilla, t + 1, f));
            }
            detectors_[1].push_back(std::move(d));
        }
    }

    roles_.assign(qubits_.size(), {});
    for (const auto &q : qubits_) {
        MeasurementRole &role = roles_[q.id];
        switch (q.kind) {
            case QubitKind::PrimalData:
                role.type = CheckType::X;
                role.slot = (q.layer / 2) * E + q.anchor;
                break;
            case QubitKind::DualData:
                role.type = CheckType::Z;
                role.slot = (q.layer / 2) * E + q.anchor;
                break;
            case QubitKind::NodeAncilla:
                role.type = CheckType::X;
                if (q.layer == layers_ - 1) {
                    role.slot = z() * E + q.anchor;
                }
                break;
            case QubitKind::FaceAncilla:
                role.type = CheckType::Z;
                if (q.layer == 0) {
                    role.slot = z() * E + q.anchor;
                }
                break;
        }
    }
    for (CheckType type : kCheckTypes) {
        const auto &dets = detectors(type);
        for (size_t d = 0; d < dets.size(); d++) {
            for (int qb : dets[d].qubits) {
                MeasurementRole &role = roles_[qb];
                if (role.type != type || role.num_detectors == 2) {
                    throw std::logic_error("detector membership is inconsistent");
                }
                role.detectors[role.num_detectors++] = static_cast<int>(d);
            }
        }
    }
    for (const auto &role : roles_) {
        if (role.num_detectors == 0 || (role.num_detectors == 1) != (role.slot >= z() * E)) {
            throw std::logic_error("detector membership is inconsistent");
        }
    }

    for (size_t i = 0; i < code_.basis.z_logicals.size(); i++) {
        surfaces_.push_back({'Z', static_cast<int>(i), code_.basis.z_logicals[i]});
    }
    for (size_t i = 0; i < code_.basis.x_logicals.size(); i++) {
        surfaces_.push_back({'X', static_cast<int>(i), code_.basis.x_logicals[i]});
    }
}

int ClusterState::qubit_id(QubitKind kind, int layer, int anchor) const {
    if (layer < 0 || layer >= layers_) {
        throw std::out_of_range("layer " + std::to_string(layer) + " out of range");
    }
    bool primal = is_primal(layer);
    bool data = kind == QubitKind::PrimalData || kind == QubitKind::DualData;
    bool primal_kind = kind == QubitKind::PrimalData || kind == QubitKind::FaceAncilla;
    if (primal != primal_kind) {
        throw std::invalid_argument(std::string(qubit_kind_name(kind)) + " qubits do not exist on layer " +
                                    std::to_string(layer));
    }
    const Lattice &lat = code_.lattice;
    int limit = data ? lat.num_edges() : (primal ? lat.num_faces() : lat.num_vertices());
    if (anchor < 0 || anchor >= limit) {
        throw std::out_of_range("anchor " + std::to_string(anchor) + " out of range");
    }
    return layer_offset_[static_cast<size_t>(layer)] + (data ? 0 : lat.num_edges()) + anchor;
}

int ClusterState::num_centers(CheckType type) const {
    return type == CheckType::X ? lattice().num_vertices() : lattice().num_faces();
}

ResourceCounts ClusterState::counts() const {
    ResourceCounts c;
    c.cz = static_cast<long long>(schedule_.size());
    c.qubits = static_cast<long long>(qubits_.size());
    c.n_f = 15 * c.cz + c.qubits;
    return c;
}

void ClusterState::write_manifest(std::ostream &out) const {
    ResourceCounts c = counts();
    out << "# cluster " << lattice().label << '\n';
    out << "layers " << layers_ << '\n';
    out << "counts cz " << c.cz << " qubits " << c.qubits << " n_f " << c.n_f << '\n';
    for (const auto &q : qubits_) {
        out << "qubit " << q.id << ' ' << qubit_kind_name(q.kind) << ' ' << q.layer << ' ' << q.anchor << '\n';
    }
    for (const auto &g : schedule_) {
        out << "cz " << g.a << ' ' << g.b << " time " << g.time << '\n';
    }
    for (CheckType type : kCheckTypes) {
        const auto &dets = detectors(type);
        for (size_t d = 0; d < dets.size(); d++) {
            out << "detector " << check_type_name(type) << ' ' << d << " center " << dets[d].center << " layer "
                << dets[d].layer << " qubits";
            for (int qb : dets[d].qubits) {
                out << ' ' << qb;
            }
            out << '\n';
        }
    }
    for (const auto &s : surfaces_) {
        out << "surface " << s.type << ' ' << s.logical << " base";
        for (int e : s.base.ones()) {
            out << ' ' << e;
        }
        out << '\n';
    }
}

std::vector<int> surface_qubits(const ClusterState &cluster, const CorrelationSurface &surface) {
    std::vector<int> out;
    QubitKind kind = surface.type == 'Z' ? QubitKind::PrimalData : QubitKind::DualData;
    for (int t = surface.type == 'Z' ? 0 : 1; t < cluster.layers(); t += 2) {
        for (int e : surface.base.ones()) {
            out.push_back(cluster.qubit_id(kind, t, e));
        }
    }
    return out;
}

std::array<int, 2> detector_count(const CssCode &code, int layers) {
    int z = layers / 2;
    return {z * code.lattice.num_vertices(), z * code.lattice.num_faces()};
}

std::vector<int> closed_surface_check(const ClusterState &cluster, std::span<const int> sites) {
    BitChain x_part(static_cast<size_t>(cluster.num_qubits()));
    for (int s : sites) {
        if (s < 0 || s >= cluster.num_qubits()) {
            throw std::out_of_range("qubit " + std::to_string(s) + " out of range");
        }
        x_part.flip(static_cast<size_t>(s));
    }
    BitChain z_part(static_cast<size_t>(cluster.num_qubits()));
    for (int u : x_part.ones()) {
        for (int g : cluster.gates_of(u)) {
            z_part.flip(static_cast<size_t>(cluster.partner(g, u)));
        }
    }
    if (z_part.any()) {
        throw SurfaceError("surface is not closed: Z factor left on qubit " + std::to_string(z_part.first_one()));
    }
    return x_part.ones();
}

}  // namespace hypercluster
