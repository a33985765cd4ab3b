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

#include "hypercluster/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace hypercluster {

namespace {

std::string trim(const std::string &s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
        return "";
    }
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string &s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',' || c == ' ' || c == '\t') {
            if (!cur.empty()) {
                out.push_back(cur);
            }
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) {
        out.push_back(cur);
    }
    return out;
}

template <typename T>
T parse_number(const std::string &key, const std::string &text) {
    std::istringstream ss(text);
    T value;
    if (!(ss >> value) || !(ss >> std::ws).eof()) {
        throw ConfigError("config key '" + key + "': cannot parse '" + text + "'");
    }
    return value;
}

std::string format_g(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (lattices.empty()) {
        throw ConfigError("config: at least one lattice is required");
    }
    if (layers < 2 || layers % 2 != 0) {
        throw ConfigError("config: layers must be even and >= 2");
    }
    if (rates.empty()) {
        throw ConfigError("config: rates must not be empty");
    }
    for (double p : rates) {
        if (!(p >= 0 && p < 0.5)) {
            throw ConfigError("config: rate " + format_g(p) + " outside [0, 0.5)");
        }
    }
    if (shots < 1) {
        throw ConfigError("config: shots must be >= 1");
    }
    if (channels.empty()) {
        throw ConfigError("config: no channels selected");
    }
    if (threads < 1) {
        throw ConfigError("config: threads must be >= 1");
    }
}

ExperimentConfig parse_config(std::istream &in) {
    ExperimentConfig cfg;
    bool lattice_seen = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) {
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "lattice") {
            if (!lattice_seen) {
                cfg.lattices.clear();
                lattice_seen = true;
            }
            for (auto &item : split_list(value)) {
                cfg.lattices.push_back(item);
            }
        } else if (key == "layers") {
            cfg.layers = parse_number<int>(key, value);
        } else if (key == "rates") {
            cfg.rates.clear();
            for (auto &item : split_list(value)) {
                cfg.rates.push_back(parse_number<double>(key, item));
            }
        } else if (key == "shots") {
            cfg.shots = parse_number<long long>(key, value);
        } else if (key == "seed") {
            cfg.seed = parse_number<uint64_t>(key, value);
        } else if (key == "channels") {
            cfg.channels.clear();
            for (auto &item : split_list(value)) {
                if (item == "both") {
                    cfg.channels = {'Z', 'X'};
                } else if (item == "Z" || item == "X") {
                    cfg.channels.push_back(item[0]);
                } else {
                    throw ConfigError("config key 'channels': unknown channel '" + item + "'");
                }
            }
        } else if (key == "out") {
            cfg.out = value;
        } else if (key == "threads") {
            cfg.threads = parse_number<int>(key, value);
        } else {
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path);
    }
    return parse_config(in);
}

void audit_counts(const ClusterState &cluster, long long enumerated_faults) {
    const Lattice &lat = cluster.lattice();
    ResourceCounts expect = resource_counts(lat.p, lat.q, lat.num_edges(), cluster.z());
    ResourceCounts got = cluster.counts();
    if (got.cz != expect.cz || got.qubits != expect.qubits || enumerated_faults != expect.n_f) {
        throw AuditError("count audit failed for " + lat.label + ": CZ " + std::to_string(got.cz) + " vs " +
                         std::to_string(expect.cz) + ", qubits " + std::to_string(got.qubits) + " vs " +
                         std::to_string(expect.qubits) + ", N_F " + std::to_string(enumerated_faults) + " vs " +
                         std::to_string(expect.n_f));
    }
}

Instance::Instance(const std::string &lattice_spec, int layers, const DistanceOptions &options)
    : name_(lattice_spec) {
    Lattice lat = lattice_from_spec(lattice_spec);
    cluster_ = std::make_unique<ClusterState>(build_code(lat, options), layers);
    catalog_ = std::make_unique<FaultCatalog>(*cluster_);
    audit_counts(*cluster_, catalog_->num_locations());
}

std::vector<ChannelTally> run_point(const Instance &inst, double p, const std::vector<char> &channels,
                                    long long shots, uint64_t seed, int threads) {
    const ClusterState &cluster = inst.cluster();
    std::vector<CheckType> types;
    for (char c : channels) {
        types.push_back(check_type_for_channel(c));
    }
    // Decoding graphs need p > 0; at p = 0 no defect can occur.
    std::vector<std::unique_ptr<ChannelDecoder>> decoders;
    if (p > 0) {
        DetectorErrorModel dem = build_dem(inst.catalog(), p);
        for (CheckType t : types) {
            decoders.push_back(std::make_unique<ChannelDecoder>(dem, cluster, t));
        }
    }
    threads = static_cast<int>(std::max<long long>(1, std::min<long long>(threads, shots)));
    std::vector<std::vector<ChannelTally>> partial(static_cast<size_t>(threads));
    std::vector<std::exception_ptr> errors(static_cast<size_t>(threads));
    auto worker = [&](int w) {
        try {
            auto &tallies = partial[w];
            for (size_t c = 0; c < types.size(); c++) {
                ChannelTally t;
                t.channel = channels[c];
                tallies.push_back(t);
            }
            for (long long s = w; s < shots; s += threads) {
                ShotRecord rec = sample_shot(cluster, p, seed, static_cast<uint64_t>(s));
                for (size_t c = 0; c < types.size(); c++) {
                    int ti = static_cast<int>(types[c]);
                    const auto &defects = rec.defects[ti];
                    BitChain inferred(static_cast<size_t>(cluster.num_slots(types[c])));
                    if (!defects.empty()) {
                        if (decoders.empty()) {
                            throw DecoderError("defects observed at p = 0");
                        }
                        inferred = decoders[c]->decode(defects);
                    }
                    Verdict v = judge(rec.actual[ti], inferred, cluster, types[c]);
                    ChannelTally &t = tallies[c];
                    t.shots++;
                    t.defects += static_cast<long long>(defects.size());
                    t.failures += v.failed ? 1 : 0;
                    t.logical_failures.resize(v.flags.size(), 0);
                    for (size_t i = 0; i < v.flags.size(); i++) {
                        t.logical_failures[i] += v.flags[i] ? 1 : 0;
                    }
                }
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; w++) {
            pool.emplace_back(worker, w);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    std::vector<ChannelTally> total = partial[0];
    for (int w = 1; w < threads; w++) {
        for (size_t c = 0; c < total.size(); c++) {
            const ChannelTally &t = partial[w][c];
            total[c].shots += t.shots;
            total[c].failures += t.failures;
            total[c].defects += t.defects;
            total[c].logical_failures.resize(std::max(total[c].logical_failures.size(), t.logical_failures.size()));
            for (size_t i = 0; i < t.logical_failures.size(); i++) {
                total[c].logical_failures[i] += t.logical_failures[i];
            }
        }
    }
    return total;
}

Interval wilson_interval(long long failures, long long shots) {
    if (shots <= 0) {
        throw std::invalid_argument("wilson_interval: shots must be positive");
    }
    const double z = 1.959963984540054;
    const double n = static_cast<double>(shots);
    const double phat = static_cast<double>(failures) / n;
    const double denom = 1 + z * z / n;
    const double center = (phat + z * z / (2 * n)) / denom;
    const double half = z * std::sqrt(phat * (1 - phat) / n + z * z / (4 * n * n)) / denom;
    // The bounds are exactly 0 and 1 at the extremes; avoid rounding residue.
    double low = failures == 0 ? 0.0 : std::max(0.0, center - half);
    double high = failures == shots ? 1.0 : std::min(1.0, center + half);
    return {low, high};
}

const char *const kCsvHeader = "instance,n,k,d_Z,d_X,layers,channel,p,shots,failures,rate,ci_low,ci_high,seed,n_f_audit";

std::string csv_line(const ExperimentRecord &r) {
    std::ostringstream ss;
    ss << r.instance << ',' << r.n << ',' << r.k << ',' << r.d_z << ',' << r.d_x << ',' << r.layers << ','
       << r.channel << ',' << format_g(r.p) << ',' << r.shots << ',' << r.failures << ',' << format_g(r.rate) << ','
       << format_g(r.ci.low) << ',' << format_g(r.ci.high) << ',' << r.seed << ',' << r.n_f_audit;
    return ss.str();
}

std::vector<ExperimentRecord> run_memory(const ExperimentConfig &cfg, std::ostream &csv, std::ostream *log) {
    cfg.validate();
    std::vector<ExperimentRecord> records;
    csv << kCsvHeader << '\n' << std::flush;
    for (const std::string &spec : cfg.lattices) {
        std::unique_ptr<Instance> inst;
        try {
            inst = std::make_unique<Instance>(spec, cfg.layers);
        } catch (const LatticeError &ex) {
            throw ConfigError(ex.what());
        }
        const CssCode &code = inst->code();
        if (log) {
            *log << "instance " << spec << " " << code.params() << " N_F " << inst->catalog().num_locations()
                 << '\n';
        }
        for (double p : cfg.rates) {
            auto start = std::chrono::steady_clock::now();
            auto tallies = run_point(*inst, p, cfg.channels, cfg.shots, cfg.seed, cfg.threads);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            for (const ChannelTally &t : tallies) {
                ExperimentRecord r;
                r.instance = spec;
                r.n = code.n;
                r.k = code.k;
                r.d_z = (code.d_z.exact ? "" : ">=") + std::to_string(code.d_z.value);
                r.d_x = (code.d_x.exact ? "" : ">=") + std::to_string(code.d_x.value);
                r.layers = cfg.layers;
                r.channel = t.channel;
                r.p = p;
                r.shots = t.shots;
                r.failures = t.failures;
                r.rate = static_cast<double>(t.failures) / static_cast<double>(t.shots);
                r.ci = wilson_interval(t.failures, t.shots);
                r.seed = cfg.seed;
                r.n_f_audit = inst->catalog().num_locations();
                r.wall_seconds = secs;
                csv << csv_line(r) << '\n' << std::flush;
                if (log) {
                    *log << "  p=" << format_g(p) << " channel " << t.channel << " failures " << t.failures << "/"
                         << t.shots << " (" << format_g(secs) << " s)\n";
                }
                records.push_back(std::move(r));
            }
        }
    }
    return records;
}

std::string ThresholdEstimate::str() const {
    if (!median) {
        return "no crossing in range";
    }
    return "crossing " + format_g(*median) + " (range " + format_g(low) + " to " + format_g(high) + ")";
}

ThresholdEstimate estimate_threshold(std::vector<Curve> curves) {
    if (curves.size() < 2) {
        throw std::invalid_argument("estimate_threshold: need at least two instance sizes");
    }
    for (const Curve &c : curves) {
        if (c.p.size() < 3 || c.p.size() != c.rate.size()) {
            throw std::invalid_argument("estimate_threshold: curve '" + c.label + "' needs at least three rates");
        }
    }
    std::stable_sort(curves.begin(), curves.end(), [](const Curve &a, const Curve &b) { return a.size < b.size; });
    ThresholdEstimate est;
    std::vector<double> found;
    for (size_t i = 0; i < curves.size(); i++) {
        for (size_t j = i + 1; j < curves.size(); j++) {
            // Log-rate difference (larger minus smaller) at rates both curves share.
            std::map<double, double> small_at;
            for (size_t a = 0; a < curves[i].p.size(); a++) {
                small_at[curves[i].p[a]] = curves[i].rate[a];
            }
            std::vector<std::pair<double, double>> diff;
            for (size_t b = 0; b < curves[j].p.size(); b++) {
                auto it = small_at.find(curves[j].p[b]);
                if (it == small_at.end() || it->second <= 0 || curves[j].rate[b] <= 0) {
                    continue;
                }
                diff.push_back({curves[j].p[b], std::log(curves[j].rate[b]) - std::log(it->second)});
            }
            std::sort(diff.begin(), diff.end());
            std::optional<double> cross;
            for (size_t k = 1; k < diff.size() && !cross; k++) {
                auto [p1, d1] = diff[k - 1];
                auto [p2, d2] = diff[k];
                if (d1 < 0 && d2 >= 0) {
                    cross = p1 + (p2 - p1) * (-d1) / (d2 - d1);
                }
            }
            est.crossings.push_back(cross);
            if (cross) {
                found.push_back(*cross);
            }
        }
    }
    if (!found.empty()) {
        std::sort(found.begin(), found.end());
        size_t m = found.size();
        est.median = m % 2 ? found[m / 2] : 0.5 * (found[m / 2 - 1] + found[m / 2]);
        est.low = found.front();
        est.high = found.back();
    }
    return est;
}

std::vector<ExperimentRecord> read_csv_records(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || trim(line) != kCsvHeader) {
        throw ConfigError("CSV header does not match the harness schema");
    }
    std::vector<ExperimentRecord> out;
    while (std::getline(in, line)) {
        if (trim(line).empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            f.push_back(trim(cell));
        }
        if (f.size() != 15) {
            throw ConfigError("CSV row has " + std::to_string(f.size()) + " fields, expected 15");
        }
        ExperimentRecord r;
        r.instance = f[0];
        r.n = parse_number<int>("n", f[1]);
        r.k = parse_number<int>("k", f[2]);
        r.d_z = f[3];
        r.d_x = f[4];
        r.layers = parse_number<int>("layers", f[5]);
        r.channel = f[6].empty() ? '?' : f[6][0];
        r.p = parse_number<double>("p", f[7]);
        r.shots = parse_number<long long>("shots", f[8]);
        r.failures = parse_number<long long>("failures", f[9]);
        r.rate = parse_number<double>("rate", f[10]);
        r.ci = {parse_number<double>("ci_low", f[11]), parse_number<double>("ci_high", f[12])};
        r.seed = parse_number<uint64_t>("seed", f[13]);
        r.n_f_audit = parse_number<long long>("n_f_audit", f[14]);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Curve> curves_from_records(const std::vector<ExperimentRecord> &records, char channel) {
    std::vector<Curve> curves;
    std::map<std::string, size_t> index;
    for (const auto &r : records) {
        if (r.channel != channel) {
            continue;
        }
        auto [it, inserted] = index.try_emplace(r.instance, curves.size());
        if (inserted) {
            curves.push_back({r.instance, r.n, {}, {}});
        }
        curves[it->second].p.push_back(r.p);
        curves[it->second].rate.push_back(r.rate);
    }
    return curves;
}

}  // namespace hypercluster
