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

#include "hypercluster/pauli_sim.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

namespace hypercluster {

namespace {

constexpr char kPauliNames[] = "IXYZ";

bool has_x(int pauli) {
    return pauli == 1 || pauli == 2;
}

bool has_z(int pauli) {
    return pauli == 2 || pauli == 3;
}

/// Appends the outcome flips caused by a single-qubit Pauli on `qubit` inserted
/// at time `after_time`.
void push_single(const ClusterState &cluster, int qubit, int pauli, int after_time, std::vector<int> &out) {
    if (has_z(pauli)) {
        out.push_back(qubit);
    }
    if (has_x(pauli)) {
        for (int g : cluster.gates_of(qubit)) {
            if (cluster.schedule()[g].time > after_time) {
                out.push_back(cluster.partner(g, qubit));
            }
        }
    }
}

/// Removes entries that occur an even number of times, keeping first positions.
std::vector<int> cancel_pairs(const std::vector<int> &xs) {
    std::map<int, int> count;
    for (int x : xs) {
        count[x]++;
    }
    std::vector<int> out;
    for (int x : xs) {
        auto it = count.find(x);
        if (it != count.end() && it->second % 2 == 1) {
            out.push_back(x);
            count.erase(it);
        }
    }
    return out;
}

void toggle(std::vector<int> &set, int x) {
    auto it = std::find(set.begin(), set.end(), x);
    if (it == set.end()) {
        set.push_back(x);
    } else {
        set.erase(it);
    }
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace

std::string FaultLocation::str() const {
    if (kind == FaultKind::BeforeMeasurement) {
        return "measurement flip on qubit " + std::to_string(site);
    }
    std::string s = "CZ gate ";
    s += std::to_string(site);
    s += " Pauli ";
    s += kPauliNames[pauli / 4];
    s += kPauliNames[pauli % 4];
    return s;
}

long long num_fault_locations(const ClusterState &cluster) {
    return 15LL * static_cast<long long>(cluster.schedule().size()) + cluster.num_qubits();
}

FaultLocation fault_location(const ClusterState &cluster, long long index) {
    long long num_cz = static_cast<long long>(cluster.schedule().size());
    if (index < 0 || index >= num_fault_locations(cluster)) {
        throw std::out_of_range("fault location " + std::to_string(index) + " out of range");
    }
    if (index < 15 * num_cz) {
        return {FaultKind::AfterCz, static_cast<int>(index / 15), static_cast<int>(index % 15) + 1};
    }
    return {FaultKind::BeforeMeasurement, static_cast<int>(index - 15 * num_cz), 0};
}

std::vector<int> propagate(const ClusterState &cluster, PauliFrame frame, int after_time) {
    for (const CzGate &g : cluster.schedule()) {
        if (g.time <= after_time) {
            continue;
        }
        bool xa = frame.x.get(static_cast<size_t>(g.a));
        bool xb = frame.x.get(static_cast<size_t>(g.b));
        if (xa) {
            frame.z.flip(static_cast<size_t>(g.b));
        }
        if (xb) {
            frame.z.flip(static_cast<size_t>(g.a));
        }
    }
    return frame.z.ones();
}

std::vector<int> fault_flips(const ClusterState &cluster, const FaultLocation &loc) {
    if (loc.kind == FaultKind::BeforeMeasurement) {
        return {loc.site};
    }
    const CzGate &g = cluster.schedule()[static_cast<size_t>(loc.site)];
    std::vector<int> out;
    push_single(cluster, g.a, loc.pauli / 4, g.time, out);
    push_single(cluster, g.b, loc.pauli % 4, g.time, out);
    return cancel_pairs(out);
}

std::vector<Piece> decompose(const ClusterState &cluster, CheckType type, std::span<const int> flips) {
    std::vector<Piece> pieces;
    Piece cur;
    bool cur_empty = true;
    for (int qb : flips) {
        const MeasurementRole &role = cluster.role(qb);
        if (role.type != type) {
            continue;
        }
        std::vector<int> next = cur.defects;
        for (int k = 0; k < role.num_detectors; k++) {
            toggle(next, role.detectors[static_cast<size_t>(k)]);
        }
        if (next.size() > 2) {
            pieces.push_back(std::move(cur));
            cur = Piece{};
            next.clear();
            for (int k = 0; k < role.num_detectors; k++) {
                toggle(next, role.detectors[static_cast<size_t>(k)]);
            }
        }
        cur.defects = std::move(next);
        if (role.slot >= 0) {
            toggle(cur.slots, role.slot);
        }
        cur_empty = false;
    }
    if (!cur_empty) {
        pieces.push_back(std::move(cur));
    }
    // Fold defect-free pieces into a neighbour carrying defects.
    std::vector<Piece> merged;
    std::vector<int> pending;
    for (auto &piece : pieces) {
        if (piece.defects.empty()) {
            for (int s : piece.slots) {
                toggle(pending, s);
            }
            if (!merged.empty()) {
                for (int s : pending) {
                    toggle(merged.back().slots, s);
                }
                pending.clear();
            }
            continue;
        }
        for (int s : pending) {
            toggle(piece.slots, s);
        }
        pending.clear();
        merged.push_back(std::move(piece));
    }
    for (auto &piece : merged) {
        std::sort(piece.defects.begin(), piece.defects.end());
        std::sort(piece.slots.begin(), piece.slots.end());
    }
    return merged;
}

FaultCatalog::FaultCatalog(const ClusterState &cluster) : cluster_(&cluster) {
    const long long n = num_fault_locations(cluster);
    for (auto &off : offsets_) {
        off.reserve(static_cast<size_t>(n) + 1);
        off.push_back(0);
    }
    for (long long i = 0; i < n; i++) {
        FaultLocation loc = fault_location(cluster, i);
        std::vector<int> flips = fault_flips(cluster, loc);
        bool silent = true;
        for (CheckType type : kCheckTypes) {
            int t = static_cast<int>(type);
            std::vector<Piece> ps = decompose(cluster, type, flips);
            for (auto &piece : ps) {
                if (piece.defects.size() > 2 || piece.defects.empty()) {
                    throw DecompositionError("cannot decompose " + loc.str());
                }
                silent = false;
                pieces_[t].push_back(std::move(piece));
            }
            offsets_[t].push_back(pieces_[t].size());
        }
        if (silent) {
            num_silent_++;
        }
    }
}

std::span<const Piece> FaultCatalog::pieces(long long location, CheckType type) const {
    int t = static_cast<int>(type);
    size_t lo = offsets_[t][static_cast<size_t>(location)];
    size_t hi = offsets_[t][static_cast<size_t>(location) + 1];
    return std::span<const Piece>(pieces_[t]).subspan(lo, hi - lo);
}

double DetectorErrorModel::slot_weight(CheckType type, int slot) const {
    double pd = slot_probability[static_cast<int>(type)][static_cast<size_t>(slot)];
    return pd > 0 ? -std::log(pd) : std::numeric_limits<double>::infinity();
}

DetectorErrorModel build_dem(const FaultCatalog &catalog, double p) {
    if (!(p >= 0 && p < 0.5)) {
        throw std::invalid_argument("physical error rate must lie in [0, 1/2)");
    }
    const ClusterState &cluster = catalog.cluster();
    DetectorErrorModel dem;
    dem.lattice = cluster.lattice().label;
    dem.layers = cluster.layers();
    dem.p = p;
    dem.n_f = catalog.num_locations();
    for (CheckType type : kCheckTypes) {
        int t = static_cast<int>(type);
        dem.num_detectors[t] = cluster.num_detectors(type);
        dem.num_slots[t] = cluster.num_slots(type);
        dem.slot_probability[t].assign(static_cast<size_t>(dem.num_slots[t]), 0.0);
        std::map<std::vector<int>, Mechanism> grouped;
        std::vector<int> total;
        for (long long i = 0; i < dem.n_f; i++) {
            auto pieces = catalog.pieces(i, type);
            if (pieces.empty()) {
                continue;
            }
            double prob = fault_location(cluster, i).probability(p);
            total.clear();
            for (const Piece &piece : pieces) {
                auto [it, inserted] = grouped.try_emplace(piece.defects);
                if (inserted) {
                    it->second.defects = piece.defects;
                    it->second.footprint = piece.slots;
                }
                it->second.probability = odd_combine(it->second.probability, prob);
                for (int s : piece.slots) {
                    toggle(total, s);
                }
            }
            for (int s : total) {
                double &pd = dem.slot_probability[t][static_cast<size_t>(s)];
                pd = odd_combine(pd, prob);
            }
        }
        for (auto &[key, mech] : grouped) {
            dem.mechanisms[t].push_back(std::move(mech));
        }
    }
    return dem;
}

DetectorErrorModel enumerate_faults(const ClusterState &cluster, double p) {
    if (!(p > 0 && p < 0.5)) {
        throw std::invalid_argument("physical error rate must lie in (0, 1/2)");
    }
    FaultCatalog catalog(cluster);
    return build_dem(catalog, p);
}

void write_dem(std::ostream &out, const DetectorErrorModel &dem) {
    out << "# hypercluster detector error model\n";
    out << "# lattice " << dem.lattice << '\n';
    out << "# layers " << dem.layers << '\n';
    out << "# p " << std::setprecision(17) << dem.p << '\n';
    out << "# n_f " << dem.n_f << '\n';
    out << "# detectors X " << dem.num_detectors[0] << " Z " << dem.num_detectors[1] << '\n';
    out << "# slots X " << dem.num_slots[0] << " Z " << dem.num_slots[1] << '\n';
    for (CheckType type : kCheckTypes) {
        for (const Mechanism &m : dem.of(type)) {
            out << "mech " << check_type_name(type);
            for (int d : m.defects) {
                out << ' ' << d;
            }
            out << " prob " << std::setprecision(17) << m.probability << " footprint";
            for (int s : m.footprint) {
                out << ' ' << s;
            }
            out << '\n';
        }
    }
}

DetectorErrorModel read_dem(std::istream &in) {
    DetectorErrorModel dem;
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string &why) {
        throw std::invalid_argument("dem line " + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(in, line)) {
        line_no++;
        std::istringstream ss(line);
        std::string tok;
        if (!(ss >> tok)) {
            continue;
        }
        if (tok == "#") {
            std::string key;
            ss >> key;
            if (key == "lattice") {
                std::getline(ss >> std::ws, dem.lattice);
            } else if (key == "layers") {
                ss >> dem.layers;
            } else if (key == "p") {
                ss >> dem.p;
            } else if (key == "n_f") {
                ss >> dem.n_f;
            } else if (key == "detectors" || key == "slots") {
                auto &dst = key == "detectors" ? dem.num_detectors : dem.num_slots;
                std::string name;
                int value;
                while (ss >> name >> value) {
                    dst[static_cast<int>(parse_check_type(name))] = value;
                }
            }
            continue;
        }
        if (tok[0] == '#') {
            continue;
        }
        if (tok != "mech") {
            fail("unknown record '" + tok + "'");
        }
        std::string type_name;
        if (!(ss >> type_name)) {
            fail("missing check type");
        }
        CheckType type = parse_check_type(type_name);
        Mechanism m;
        bool saw_prob = false;
        while (ss >> tok) {
            if (tok == "prob") {
                if (!(ss >> m.probability)) {
                    fail("bad probability");
                }
                saw_prob = true;
                break;
            }
            m.defects.push_back(std::stoi(tok));
        }
        if (!saw_prob || m.defects.empty() || m.defects.size() > 2) {
            fail("expected 1 or 2 defects followed by 'prob'");
        }
        if (!(ss >> tok) || tok != "footprint") {
            fail("missing footprint");
        }
        int s;
        while (ss >> s) {
            m.footprint.push_back(s);
        }
        std::sort(m.defects.begin(), m.defects.end());
        dem.mechanisms[static_cast<int>(type)].push_back(std::move(m));
    }
    for (CheckType type : kCheckTypes) {
        int t = static_cast<int>(type);
        for (const auto &m : dem.mechanisms[t]) {
            for (int d : m.defects) {
                dem.num_detectors[t] = std::max(dem.num_detectors[t], d + 1);
            }
        }
    }
    return dem;
}

ShotRecord outcome_from_flips(const ClusterState &cluster, const BitChain &flips) {
    ShotRecord rec;
    std::array<BitChain, 2> syndrome = {BitChain(static_cast<size_t>(cluster.num_detectors(CheckType::X))),
                                        BitChain(static_cast<size_t>(cluster.num_detectors(CheckType::Z)))};
    for (CheckType type : kCheckTypes) {
        rec.actual[static_cast<int>(type)] = BitChain(static_cast<size_t>(cluster.num_slots(type)));
    }
    for (int qb : flips.ones()) {
        const MeasurementRole &role = cluster.role(qb);
        int t = static_cast<int>(role.type);
        for (int k = 0; k < role.num_detectors; k++) {
            syndrome[t].flip(static_cast<size_t>(role.detectors[static_cast<size_t>(k)]));
        }
        if (role.slot >= 0) {
            rec.actual[t].flip(static_cast<size_t>(role.slot));
        }
    }
    for (int t = 0; t < 2; t++) {
        rec.defects[t] = syndrome[t].ones();
    }
    return rec;
}

BitChain sample_flips(const ClusterState &cluster, double p, uint64_t seed, uint64_t shot) {
    if (!(p >= 0 && p < 0.5)) {
        throw std::invalid_argument("physical error rate must lie in [0, 1/2)");
    }
    BitChain flips(static_cast<size_t>(cluster.num_qubits()));
    if (p == 0) {
        return flips;
    }
    std::mt19937_64 rng(splitmix64(splitmix64(seed) ^ shot));
    const long long num_cz = static_cast<long long>(cluster.schedule().size());
    const long long num_sites = num_cz + cluster.num_qubits();
    const double log_q = std::log1p(-p);
    auto uniform = [&rng]() { return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53; };
    // Geometric skipping: the gap to the next firing site.
    auto gap = [&]() {
        double g = std::floor(std::log(uniform()) / log_q);
        return g < static_cast<double>(num_sites) ? static_cast<long long>(g) : num_sites;
    };
    long long site = gap();
    std::vector<int> scratch;
    while (site < num_sites) {
        if (site < num_cz) {
            int pauli = 1 + static_cast<int>(rng() % 15);
            scratch = fault_flips(cluster, {FaultKind::AfterCz, static_cast<int>(site), pauli});
            for (int qb : scratch) {
                flips.flip(static_cast<size_t>(qb));
            }
        } else {
            flips.flip(static_cast<size_t>(site - num_cz));
        }
        site += 1 + gap();
    }
    return flips;
}

ShotRecord sample_shot(const ClusterState &cluster, double p, uint64_t seed, uint64_t shot) {
    return outcome_from_flips(cluster, sample_flips(cluster, p, seed, shot));
}

BitChain forced_flips(const ClusterState &cluster, std::span<const FaultLocation> faults) {
    BitChain flips(static_cast<size_t>(cluster.num_qubits()));
    for (const FaultLocation &loc : faults) {
        for (int qb : fault_flips(cluster, loc)) {
            flips.flip(static_cast<size_t>(qb));
        }
    }
    return flips;
}

}  // namespace hypercluster
