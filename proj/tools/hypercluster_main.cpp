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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hypercluster/code.hpp"
#include "hypercluster/decoder.hpp"
#include "hypercluster/foliation.hpp"
#include "hypercluster/harness.hpp"
#include "hypercluster/lattice.hpp"
#include "hypercluster/pauli_sim.hpp"

using namespace hypercluster;

namespace {

std::ofstream open_out(const std::string &path) {
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write " + path);
    }
    return out;
}

int cmd_validate(const std::string &file) {
    Lattice lat;
    std::ifstream in(file);
    if (!in) {
        std::cerr << "cannot open " << file << "\n";
        return 1;
    }
    try {
        lat = parse_lattice(in, file);
    } catch (const LatticeError &ex) {
        std::cout << ex.what() << "\n";
        return 1;
    }
    ValidationReport report = validate(lat);
    std::cout << report.str();
    return report.ok() ? 0 : 1;
}

int cmd_build_code(const std::string &file, const std::string &manifest, int max_edges) {
    DistanceOptions opts;
    opts.max_edges = max_edges;
    CssCode code = build_code(lattice_from_spec(file), opts);
    std::cout << "code " << code.params() << "\n";
    std::cout << "rate " << code.rate().str() << " = " << code.rate().value() << "\n";
    if (!manifest.empty()) {
        auto out = open_out(manifest);
        write_code_manifest(out, code);
    }
    return 0;
}

int cmd_export_cluster(const std::string &file, int layers, const std::string &out_path) {
    ClusterState cluster(build_code(lattice_from_spec(file)), layers);
    if (out_path.empty()) {
        cluster.write_manifest(std::cout);
    } else {
        auto out = open_out(out_path);
        cluster.write_manifest(out);
    }
    return 0;
}

int cmd_enumerate(const std::string &file, int layers, double p, const std::string &out_path) {
    Lattice lat = lattice_from_spec(file);
    ClusterState cluster(build_code(lat), layers);
    FaultCatalog catalog(cluster);
    ResourceCounts expect = resource_counts(lat.p, lat.q, lat.num_edges(), cluster.z());
    bool ok = catalog.num_locations() == expect.n_f;
    std::cout << "N_F audit: enumerated " << catalog.num_locations() << " expected " << expect.n_f << " (15*"
              << expect.cz << " + " << expect.qubits << ") " << (ok ? "OK" : "MISMATCH") << "\n";
    if (!ok) {
        return kExitAudit;
    }
    DetectorErrorModel dem = build_dem(catalog, p);
    dem.lattice = file;
    for (CheckType t : kCheckTypes) {
        std::cout << check_type_name(t) << "-type mechanisms: " << dem.of(t).size() << "\n";
    }
    auto out = open_out(out_path);
    write_dem(out, dem);
    return 0;
}

/// Shots file: one line per (shot, check type):
///   shot <i> <X|Z> defects <ids...> [actual <slots...>]
int cmd_sample(const std::string &file, int layers, double p, long long shots, uint64_t seed,
               const std::string &out_path) {
    ClusterState cluster(build_code(lattice_from_spec(file)), layers);
    auto out = open_out(out_path);
    for (long long s = 0; s < shots; s++) {
        ShotRecord rec = sample_shot(cluster, p, seed, static_cast<uint64_t>(s));
        for (CheckType t : kCheckTypes) {
            int ti = static_cast<int>(t);
            out << "shot " << s << ' ' << check_type_name(t) << " defects";
            for (int d : rec.defects[ti]) {
                out << ' ' << d;
            }
            out << " actual";
            for (int slot : rec.actual[ti].ones()) {
                out << ' ' << slot;
            }
            out << '\n';
        }
    }
    return 0;
}

int cmd_decode(const std::string &dem_path, const std::string &shots_path) {
    std::ifstream dem_in(dem_path);
    if (!dem_in) {
        throw ConfigError("cannot open " + dem_path);
    }
    DetectorErrorModel dem = read_dem(dem_in);
    if (dem.lattice.empty() || dem.layers == 0) {
        throw ConfigError("detector error model lacks '# lattice' and '# layers' header lines");
    }
    ClusterState cluster(build_code(lattice_from_spec(dem.lattice)), dem.layers);
    for (CheckType t : kCheckTypes) {
        if (dem.num_detectors[static_cast<int>(t)] != cluster.num_detectors(t)) {
            throw AuditError("detector error model does not match its lattice");
        }
    }
    ChannelDecoder dx(dem, cluster, CheckType::X);
    ChannelDecoder dz(dem, cluster, CheckType::Z);
    std::ifstream in(shots_path);
    if (!in) {
        throw ConfigError("cannot open " + shots_path);
    }
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string tok, type_name, shot_id;
        if (!(ss >> tok) || tok[0] == '#') {
            continue;
        }
        if (tok != "shot" || !(ss >> shot_id >> type_name >> tok) || tok != "defects") {
            throw ConfigError("bad shots line: " + line);
        }
        CheckType type = parse_check_type(type_name);
        std::vector<int> defects;
        std::vector<int> actual;
        bool have_actual = false;
        std::vector<int> *dst = &defects;
        while (ss >> tok) {
            if (tok == "actual") {
                dst = &actual;
                have_actual = true;
                continue;
            }
            dst->push_back(std::stoi(tok));
        }
        const ChannelDecoder &dec = type == CheckType::X ? dx : dz;
        Matching m = mwpm(dec.graph, defects);
        BitChain inferred = correction(m, dec.stack);
        std::cout << "shot " << shot_id << " channel " << channel_name(type) << " defects " << defects.size()
                  << " weight " << m.weight << " correction";
        for (int s : inferred.ones()) {
            std::cout << ' ' << s;
        }
        if (have_actual) {
            BitChain act(static_cast<size_t>(cluster.num_slots(type)));
            for (int s : actual) {
                act.flip(static_cast<size_t>(s));
            }
            Verdict v = judge(act, inferred, cluster, type);
            std::cout << " verdict " << (v.failed ? "fail" : "ok");
        } else {
            std::cout << " verdict unknown";
        }
        std::cout << '\n';
    }
    return 0;
}

int cmd_run_memory(const std::string &config_path, const std::string &out_override, int threads) {
    ExperimentConfig cfg = load_config(config_path);
    if (!out_override.empty()) {
        cfg.out = out_override;
    }
    if (threads > 0) {
        cfg.threads = threads;
    }
    if (cfg.out.empty()) {
        throw ConfigError("no output path: set 'out' in the config or pass --out");
    }
    auto out = open_out(cfg.out);
    auto records = run_memory(cfg, out, &std::cerr);
    for (char ch : cfg.channels) {
        auto curves = curves_from_records(records, ch);
        if (curves.size() >= 2 && curves[0].p.size() >= 3) {
            std::cout << "channel " << ch << ": " << estimate_threshold(curves).str() << "\n";
        }
    }
    return 0;
}

int cmd_threshold(const std::string &csv_path, char channel) {
    std::ifstream in(csv_path);
    if (!in) {
        throw ConfigError("cannot open " + csv_path);
    }
    auto curves = curves_from_records(read_csv_records(in), channel);
    ThresholdEstimate est = estimate_threshold(curves);
    std::cout << "channel " << channel << ": " << est.str() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Foliated cluster-state memory experiments on closed {p,q} lattices"};
    app.require_subcommand(1);
    app.set_version_flag("--version", HYPERCLUSTER_VERSION);

    std::string file, manifest, out_path, dem_path, shots_path, config_path;
    int layers = 8;
    int max_edges = DistanceOptions{}.max_edges;
    int threads = 0;
    double p = 0.001;
    long long shots = 100;
    uint64_t seed = 1;
    std::string channel = "Z";

    auto *validate_cmd = app.add_subcommand("validate-lattice", "Check every lattice invariant");
    validate_cmd->add_option("file", file, "lattice file")->required();

    auto *code_cmd = app.add_subcommand("build-code", "Print [[n,k,d_Z,d_X]] and the encoding rate");
    code_cmd->add_option("lattice", file, "lattice file or torus:L")->required();
    code_cmd->add_option("manifest", manifest, "optional code manifest output");
    code_cmd->add_option("--max-edges", max_edges, "skip exact distance search above this many edges");

    auto *export_cmd = app.add_subcommand("export-cluster", "Write the cluster-state manifest");
    export_cmd->add_option("lattice", file, "lattice file or torus:L")->required();
    export_cmd->add_option("--layers", layers, "number of layers 2z")->required();
    export_cmd->add_option("--out", out_path, "output file (default stdout)");

    auto *enum_cmd = app.add_subcommand("enumerate-faults", "Enumerate all single faults and write the DEM");
    enum_cmd->add_option("lattice", file, "lattice file or torus:L")->required();
    enum_cmd->add_option("--layers", layers, "number of layers 2z")->required();
    enum_cmd->add_option("--p", p, "physical error rate")->required();
    enum_cmd->add_option("--out", out_path, "DEM output file")->required();

    auto *sample_cmd = app.add_subcommand("sample-shots", "Sample noisy shots into a shots file");
    sample_cmd->add_option("lattice", file, "lattice file or torus:L")->required();
    sample_cmd->add_option("--layers", layers, "number of layers 2z")->required();
    sample_cmd->add_option("--p", p, "physical error rate")->required();
    sample_cmd->add_option("--shots", shots, "number of shots");
    sample_cmd->add_option("--seed", seed, "random seed");
    sample_cmd->add_option("--out", out_path, "shots output file")->required();

    auto *decode_cmd = app.add_subcommand("decode", "Decode recorded syndromes with a DEM");
    decode_cmd->add_option("--dem", dem_path, "DEM file")->required();
    decode_cmd->add_option("--shots", shots_path, "shots file")->required();

    auto *run_cmd = app.add_subcommand("run-memory", "Run memory experiments and write CSV");
    run_cmd->add_option("--config", config_path, "config file")->required();
    run_cmd->add_option("--out", out_path, "CSV output (overrides config)");
    run_cmd->add_option("--threads", threads, "worker threads (overrides config)");

    auto *thr_cmd = app.add_subcommand("threshold", "Estimate curve crossings from a results CSV");
    thr_cmd->add_option("--csv", shots_path, "results CSV")->required();
    thr_cmd->add_option("--channel", channel, "Z or X")->check(CLI::IsMember({"Z", "X"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*validate_cmd) {
            return cmd_validate(file);
        }
        if (*code_cmd) {
            return cmd_build_code(file, manifest, max_edges);
        }
        if (*export_cmd) {
            return cmd_export_cluster(file, layers, out_path);
        }
        if (*enum_cmd) {
            return cmd_enumerate(file, layers, p, out_path);
        }
        if (*sample_cmd) {
            return cmd_sample(file, layers, p, shots, seed, out_path);
        }
        if (*decode_cmd) {
            return cmd_decode(dem_path, shots_path);
        }
        if (*run_cmd) {
            return cmd_run_memory(config_path, out_path, threads);
        }
        if (*thr_cmd) {
            return cmd_threshold(shots_path, channel[0]);
        }
    } catch (const ConfigError &ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kExitConfig;
    } catch (const LatticeError &ex) {
        std::cerr << "lattice error: " << ex.what() << "\n";
        return kExitConfig;
    } catch (const AuditError &ex) {
        std::cerr << "audit failure: " << ex.what() << "\n";
        return kExitAudit;
    } catch (const DecompositionError &ex) {
        std::cerr << "audit failure: " << ex.what() << "\n";
        return kExitAudit;
    } catch (const DecoderError &ex) {
        std::cerr << "decode error: " << ex.what() << "\n";
        return kExitDecode;
    } catch (const std::exception &ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitConfig;
    }
    return 0;
}
