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

#include "hypercluster/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace hypercluster {

namespace {

/// Rotates a cyclic sequence so that it starts at its lexicographically
/// smallest rotation.
std::vector<int> canonical_cycle(const std::vector<int> &cyc) {
    std::vector<int> best = cyc;
    std::vector<int> cur = cyc;
    for (size_t r = 1; r < cyc.size(); r++) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) {
            best = cur;
        }
    }
    return best;
}

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(int n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(int a, int b) {
        parent[find(a)] = find(b);
    }
};

std::string join(const std::vector<int> &xs) {
    std::string s;
    for (size_t i = 0; i < xs.size(); i++) {
        if (i) {
            s += ' ';
        }
        s += std::to_string(xs[i]);
    }
    return s;
}

}  // namespace

double Lattice::genus_from_counts() const {
    return 1.0 + num_edges() * (0.5 - 1.0 / p - 1.0 / q);
}

std::vector<std::vector<int>> Lattice::faces_of_edges() const {
    std::vector<std::vector<int>> out(edges.size());
    for (int f = 0; f < num_faces(); f++) {
        for (int e : faces[f]) {
            if (e >= 0 && e < num_edges()) {
                out[e].push_back(f);
            }
        }
    }
    return out;
}

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck &c) { return c.passed; });
}

std::string ValidationReport::first_failure() const {
    for (const auto &c : checks) {
        if (!c.passed) {
            return c.name + " violation: " + c.detail;
        }
    }
    return "";
}

std::string ValidationReport::str() const {
    std::ostringstream ss;
    for (const auto &c : checks) {
        ss << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) {
            ss << " (" << c.detail << ")";
        }
        ss << "\n";
    }
    ss << "chi " << euler_characteristic << "\n";
    ss << "genus " << genus << "\n";
    ss << "genus_from_counts " << genus_from_counts << "\n";
    ss << (ok() ? "valid" : "invalid") << "\n";
    return ss.str();
}

ValidationReport validate(const Lattice &lat) {
    ValidationReport report;
    auto add = [&](std::string name, bool passed, std::string detail) {
        report.checks.push_back({std::move(name), passed, std::move(detail)});
        return passed;
    };
    const int E = lat.num_edges();
    const int F = lat.num_faces();
    const int V = lat.num_vertices();
    report.euler_characteristic = lat.euler_characteristic();
    report.genus = 1 - report.euler_characteristic / 2;
    report.genus_from_counts = (lat.p > 0 && lat.q > 0) ? lat.genus_from_counts() : 0;

    bool structural = add("schlafli", lat.p >= 3 && lat.q >= 3,
                          "p=" + std::to_string(lat.p) + " q=" + std::to_string(lat.q));

    {
        std::string detail;
        for (int f = 0; f < F && detail.empty(); f++) {
            if (static_cast<int>(lat.faces[f].size()) != lat.p) {
                detail = "face " + std::to_string(f) + " has " + std::to_string(lat.faces[f].size()) + " edges";
            }
            for (int e : lat.faces[f]) {
                if (detail.empty() && (e < 0 || e >= E)) {
                    detail = "face " + std::to_string(f) + " references unknown edge " + std::to_string(e);
                }
            }
        }
        structural &= add("face size", detail.empty(), detail);
    }
    {
        std::string detail;
        for (int v = 0; v < V && detail.empty(); v++) {
            if (static_cast<int>(lat.vertex_rotations[v].size()) != lat.q) {
                detail = "vertex " + std::to_string(v) + " has degree " +
                         std::to_string(lat.vertex_rotations[v].size());
            }
            for (int e : lat.vertex_rotations[v]) {
                if (detail.empty() && (e < 0 || e >= E)) {
                    detail = "vertex " + std::to_string(v) + " references unknown edge " + std::to_string(e);
                }
            }
        }
        structural &= add("vertex degree", detail.empty(), detail);
    }
    {
        std::string detail;
        for (int e = 0; e < E && detail.empty(); e++) {
            auto [a, b] = lat.edges[e];
            if (a < 0 || a >= V || b < 0 || b >= V) {
                detail = "edge " + std::to_string(e) + " references an unknown vertex";
            } else if (a == b) {
                detail = "edge " + std::to_string(e) + " is a loop at vertex " + std::to_string(a);
            }
        }
        structural &= add("edge endpoints", detail.empty(), detail);
    }
    if (!structural) {
        return report;
    }

    {
        std::string detail;
        auto fe = lat.faces_of_edges();
        for (int e = 0; e < E && detail.empty(); e++) {
            if (fe[e].size() != 2) {
                detail = "edge " + std::to_string(e) + " appears in " + std::to_string(fe[e].size()) + " faces";
            } else if (fe[e][0] == fe[e][1]) {
                detail = "edge " + std::to_string(e) + " appears twice in face " + std::to_string(fe[e][0]);
            }
        }
        structural &= add("edge incidence", detail.empty(), detail);
    }
    {
        std::string detail;
        std::vector<std::vector<int>> count(E);
        for (int v = 0; v < V && detail.empty(); v++) {
            for (int e : lat.vertex_rotations[v]) {
                if (lat.edges[e][0] != v && lat.edges[e][1] != v) {
                    detail = "vertex " + std::to_string(v) + " lists edge " + std::to_string(e) +
                             " which does not touch it";
                    break;
                }
                count[e].push_back(v);
            }
        }
        for (int e = 0; e < E && detail.empty(); e++) {
            std::vector<int> want{lat.edges[e][0], lat.edges[e][1]};
            std::sort(want.begin(), want.end());
            std::sort(count[e].begin(), count[e].end());
            if (count[e] != want) {
                detail = "edge " + std::to_string(e) + " is listed by vertices {" + join(count[e]) +
                         "} but joins {" + join(want) + "}";
            }
        }
        structural &= add("vertex incidence", detail.empty(), detail);
    }

    const long pF = static_cast<long>(lat.p) * F;
    const long qV = static_cast<long>(lat.q) * V;
    add("counting identity", pF == 2L * E && qV == 2L * E,
        "pF=" + std::to_string(pF) + " 2E=" + std::to_string(2L * E) + " qV=" + std::to_string(qV));
    const int chi = report.euler_characteristic;
    add("euler characteristic", chi % 2 == 0 && chi <= 2, "chi=" + std::to_string(chi));
    {
        // 1 - chi/2 == 1 + E(1/2 - 1/p - 1/q), cleared of denominators.
        long lhs = -static_cast<long>(chi) * lat.p * lat.q;
        long rhs = static_cast<long>(E) * (lat.p * lat.q - 2 * lat.p - 2 * lat.q);
        add("genus formula", lhs == rhs,
            "g(chi)=" + std::to_string(report.genus) + " g(E,p,q)=" + std::to_string(report.genus_from_counts));
    }

    if (structural) {
        // phi(d) = sigma^-1(alpha(d)) recovers the counterclockwise faces.
        std::vector<int> sigma_inv(2 * E, -1);
        for (int v = 0; v < V; v++) {
            const auto &rot = lat.vertex_rotations[v];
            auto out_dart = [&](int e) { return lat.edges[e][0] == v ? 2 * e : 2 * e + 1; };
            for (size_t i = 0; i < rot.size(); i++) {
                sigma_inv[out_dart(rot[(i + 1) % rot.size()])] = out_dart(rot[i]);
            }
        }
        std::vector<char> seen(2 * E, 0);
        std::vector<std::vector<int>> traced;
        for (int d0 = 0; d0 < 2 * E; d0++) {
            if (seen[d0]) {
                continue;
            }
            std::vector<int> cyc;
            int d = d0;
            while (!seen[d]) {
                seen[d] = 1;
                cyc.push_back(d / 2);
                d = sigma_inv[d ^ 1];
            }
            traced.push_back(canonical_cycle(cyc));
        }
        std::vector<std::vector<int>> declared;
        for (const auto &f : lat.faces) {
            declared.push_back(canonical_cycle(f));
        }
        std::sort(traced.begin(), traced.end());
        std::string detail;
        for (int f = 0; f < F; f++) {
            if (!std::binary_search(traced.begin(), traced.end(), declared[f])) {
                detail = "face " + std::to_string(f) + " (" + join(lat.faces[f]) +
                         ") is not traced by the vertex rotations";
                break;
            }
        }
        if (detail.empty() && static_cast<int>(traced.size()) != F) {
            detail = "vertex rotations trace " + std::to_string(traced.size()) + " faces, expected " +
                     std::to_string(F);
        }
        add("rotation consistency", detail.empty(), detail);

        DisjointSets ds(F + E);
        for (int f = 0; f < F; f++) {
            for (int e : lat.faces[f]) {
                ds.unite(f, F + e);
            }
        }
        int components = 0;
        for (int i = 0; i < F + E; i++) {
            components += ds.find(i) == i;
        }
        add("connected", components == 1, std::to_string(components) + " component(s)");
    }
    return report;
}

Lattice parse_lattice(std::istream &in, const std::string &source_name) {
    Lattice lat;
    std::map<int, std::array<int, 2>> edges;
    std::map<int, std::vector<int>> faces;
    std::map<int, std::vector<int>> verts;
    bool have_header = false;
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string &msg) {
        throw LatticeError("malformed lattice file " + source_name + ":" + std::to_string(line_no) + ": " + msg);
    };
    while (std::getline(in, line)) {
        line_no++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            if (line_no == 1 && lat.label.empty()) {
                lat.label = line.substr(hash + 1);
                lat.label.erase(0, lat.label.find_first_not_of(" \t"));
            }
            line.resize(hash);
        }
        std::istringstream ss(line);
        std::string kind;
        if (!(ss >> kind)) {
            continue;
        }
        std::vector<long> nums;
        std::string tok;
        while (ss >> tok) {
            try {
                size_t used = 0;
                long v = std::stol(tok, &used);
                if (used != tok.size()) {
                    fail("bad integer '" + tok + "'");
                }
                nums.push_back(v);
            } catch (const std::logic_error &) {
                fail("bad integer '" + tok + "'");
            }
        }
        if (kind == "pq") {
            if (have_header || nums.size() != 2) {
                fail("expected a single 'pq <p> <q>' header");
            }
            lat.p = static_cast<int>(nums[0]);
            lat.q = static_cast<int>(nums[1]);
            have_header = true;
            continue;
        }
        if (nums.empty() || nums[0] < 0) {
            fail("missing or negative id");
        }
        int id = static_cast<int>(nums[0]);
        std::vector<int> rest(nums.begin() + 1, nums.end());
        if (kind == "edge") {
            if (rest.size() != 2) {
                fail("edge lines need exactly two endpoints");
            }
            if (!edges.emplace(id, std::array<int, 2>{rest[0], rest[1]}).second) {
                fail("duplicate edge id " + std::to_string(id));
            }
        } else if (kind == "face") {
            if (!faces.emplace(id, rest).second) {
                fail("duplicate face id " + std::to_string(id));
            }
        } else if (kind == "vertex") {
            if (!verts.emplace(id, rest).second) {
                fail("duplicate vertex id " + std::to_string(id));
            }
        } else {
            fail("unknown record '" + kind + "'");
        }
    }
    if (!have_header) {
        throw LatticeError("malformed lattice file " + source_name + ": missing 'pq' header");
    }
    auto check_consecutive = [&](const auto &m, const char *what) {
        int expect = 0;
        for (const auto &[id, _] : m) {
            if (id != expect++) {
                throw LatticeError("malformed lattice file " + source_name + ": " + what +
                                   " ids are not consecutive (missing " + std::to_string(expect - 1) + ")");
            }
        }
    };
    check_consecutive(edges, "edge");
    check_consecutive(faces, "face");
    check_consecutive(verts, "vertex");
    for (auto &[_, e] : edges) {
        lat.edges.push_back(e);
    }
    for (auto &[_, f] : faces) {
        lat.faces.push_back(std::move(f));
    }
    for (auto &[_, v] : verts) {
        lat.vertex_rotations.push_back(std::move(v));
    }
    auto report = validate(lat);
    if (!report.ok()) {
        throw LatticeError(source_name + ": " + report.first_failure());
    }
    return lat;
}

Lattice load_lattice(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw LatticeError("cannot open lattice file " + path);
    }
    Lattice lat = parse_lattice(in, path);
    if (lat.label.empty()) {
        lat.label = path;
    }
    return lat;
}

void write_lattice(std::ostream &out, const Lattice &lat) {
    if (!lat.label.empty()) {
        out << "# " << lat.label << "\n";
    }
    out << "pq " << lat.p << " " << lat.q << "\n";
    for (int e = 0; e < lat.num_edges(); e++) {
        out << "edge " << e << " " << lat.edges[e][0] << " " << lat.edges[e][1] << "\n";
    }
    for (int f = 0; f < lat.num_faces(); f++) {
        out << "face " << f << " " << join(lat.faces[f]) << "\n";
    }
    for (int v = 0; v < lat.num_vertices(); v++) {
        out << "vertex " << v << " " << join(lat.vertex_rotations[v]) << "\n";
    }
}

Lattice generate_torus(int L) {
    if (L < 2) {
        throw LatticeError("torus size must be at least 2");
    }
    Lattice lat;
    lat.p = 4;
    lat.q = 4;
    lat.label = "torus:" + std::to_string(L);
    auto vid = [L](int x, int y) { return ((y + L) % L) * L + (x + L) % L; };
    auto h = [&](int x, int y) { return 2 * vid(x, y); };
    auto v = [&](int x, int y) { return 2 * vid(x, y) + 1; };
    lat.edges.resize(2 * L * L);
    lat.faces.resize(L * L);
    lat.vertex_rotations.resize(L * L);
    for (int y = 0; y < L; y++) {
        for (int x = 0; x < L; x++) {
            lat.edges[h(x, y)] = {vid(x, y), vid(x + 1, y)};
            lat.edges[v(x, y)] = {vid(x, y), vid(x, y + 1)};
            lat.faces[vid(x, y)] = {h(x, y), v(x + 1, y), h(x, y + 1), v(x, y)};
            lat.vertex_rotations[vid(x, y)] = {h(x, y), v(x, y), h(x - 1, y), v(x, y - 1)};
        }
    }
    return lat;
}

Lattice dual(const Lattice &lat) {
    Lattice out;
    out.p = lat.q;
    out.q = lat.p;
    out.label = lat.label.empty() ? "dual" : "dual of " + lat.label;
    auto fe = lat.faces_of_edges();
    out.edges.resize(lat.edges.size());
    for (int e = 0; e < lat.num_edges(); e++) {
        if (fe[e].size() != 2) {
            throw LatticeError("dual: edge " + std::to_string(e) + " is not shared by two faces");
        }
        out.edges[e] = {fe[e][0], fe[e][1]};
    }
    out.faces = lat.vertex_rotations;
    out.vertex_rotations = lat.faces;
    return out;
}

Lattice lattice_from_spec(const std::string &spec) {
    const std::string prefix = "torus:";
    if (spec.rfind(prefix, 0) == 0) {
        int L = 0;
        try {
            L = std::stoi(spec.substr(prefix.size()));
        } catch (const std::logic_error &) {
            throw LatticeError("bad torus size in '" + spec + "'");
        }
        return generate_torus(L);
    }
    return load_lattice(spec);
}

}  // namespace hypercluster
