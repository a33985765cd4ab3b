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

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypercluster/decoder.hpp"
#include "hypercluster/pauli_sim.hpp"

namespace hypercluster {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AuditError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exit codes of the run-memory command.
enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitAudit = 2, kExitDecode = 3 };

struct ExperimentConfig {
    std::vector<std::string> lattices;  ///< file paths or "torus:L"
    int layers = 8;
    std::vector<double> rates = {0.001, 0.002, 0.003, 0.004, 0.005, 0.006, 0.007,
                                 0.008, 0.009, 0.010, 0.011, 0.012, 0.013, 0.014};
    long long shots = 1000;
    uint64_t seed = 1;
    std::vector<char> channels = {'Z', 'X'};
    std::string out;
    int threads = 1;

    void validate() const;
};

/// Parses "key = value" lines ('#' comments). Keys: lattice, layers, rates,
/// shots, seed, channels, out, threads. List values are comma or space
/// separated; lattice may be repeated.
ExperimentConfig parse_config(std::istream &in);
ExperimentConfig load_config(const std::string &path);

/// A lattice prepared for memory experiments: code, cluster state and the
/// p-independent fault catalog, audited against the closed-form counts.
class Instance {
   public:
    Instance(const std::string &lattice_spec, int layers, const DistanceOptions &options = {});

    const std::string &name() const {
        return name_;
    }
    const ClusterState &cluster() const {
        return *cluster_;
    }
    const FaultCatalog &catalog() const {
        return *catalog_;
    }
    const CssCode &code() const {
        return cluster_->code();
    }

   private:
    std::string name_;
    std::unique_ptr<ClusterState> cluster_;
    std::unique_ptr<FaultCatalog> catalog_;
};

/// Throws AuditError unless registry, schedule and fault counts match the
/// closed forms.
void audit_counts(const ClusterState &cluster, long long enumerated_faults);

struct ChannelTally {
    char channel;
    long long shots = 0;
    long long failures = 0;
    long long defects = 0;
    std::vector<long long> logical_failures;  ///< per opposing logical
};

/// Samples and decodes `shots` shots at rate p for each requested channel.
/// Shot s uses the random stream (seed, s); shots are strided over `threads`
/// workers and the tallies summed, so results do not depend on `threads`.
std::vector<ChannelTally> run_point(const Instance &inst, double p, const std::vector<char> &channels,
                                    long long shots, uint64_t seed, int threads);

struct Interval {
    double low;
    double high;
};

/// Wilson score interval at 95% confidence.
Interval wilson_interval(long long failures, long long shots);

struct ExperimentRecord {
    std::string instance;
    int n = 0;
    int k = 0;
    std::string d_z;
    std::string d_x;
    int layers = 0;
    char channel = 'Z';
    double p = 0;
    long long shots = 0;
    long long failures = 0;
    double rate = 0;
    Interval ci{0, 0};
    uint64_t seed = 0;
    long long n_f_audit = 0;
    double wall_seconds = 0;  ///< not written to CSV
};

extern const char *const kCsvHeader;
std::string csv_line(const ExperimentRecord &rec);

/// Runs every (instance, rate, channel) point, writing CSV lines to `csv` as
/// soon as each point completes. Progress messages go to `log` when given.
std::vector<ExperimentRecord> run_memory(const ExperimentConfig &cfg, std::ostream &csv, std::ostream *log = nullptr);

struct Curve {
    std::string label;
    int size = 0;  ///< ordering key, e.g. n
    std::vector<double> p;
    std::vector<double> rate;
};

struct ThresholdEstimate {
    /// One entry per pair of curves (i < j, ordered by size); empty when that
    /// pair does not cross inside the sampled range.
    std::vector<std::optional<double>> crossings;
    std::optional<double> median;
    double low = 0;
    double high = 0;

    std::string str() const;
};

/// Pairwise crossings: for each pair, the first rate interval where the log of
/// the larger instance's failure rate minus that of the smaller changes sign
/// from negative to positive, located by linear interpolation of that
/// difference. Points where either rate is zero are skipped.
ThresholdEstimate estimate_threshold(std::vector<Curve> curves);

/// Reads a CSV written by run_memory.
std::vector<ExperimentRecord> read_csv_records(std::istream &in);

/// Groups CSV-style records into one curve per instance for a channel.
std::vector<Curve> curves_from_records(const std::vector<ExperimentRecord> &records, char channel);

}  // namespace hypercluster
