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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hypercluster/code.hpp"
#include "hypercluster/decoder.hpp"
#include "hypercluster/foliation.hpp"
#include "hypercluster/harness.hpp"
#include "hypercluster/lattice.hpp"
#include "hypercluster/pauli_sim.hpp"

namespace py = pybind11;
using namespace hypercluster;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Foliated cluster-state memory experiments on closed {p,q} lattices";
    m.attr("__version__") = HYPERCLUSTER_VERSION;
    m.attr("CSV_HEADER") = std::string(kCsvHeader);

    py::register_exception<LatticeError>(m, "LatticeError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<AuditError>(m, "AuditError");
    py::register_exception<DecoderError>(m, "DecoderError");

    py::class_<Lattice>(m, "Lattice")
        .def_readonly("p", &Lattice::p)
        .def_readonly("q", &Lattice::q)
        .def_readonly("label", &Lattice::label)
        .def_readonly("edges", &Lattice::edges)
        .def_readonly("faces", &Lattice::faces)
        .def_readonly("vertex_rotations", &Lattice::vertex_rotations)
        .def_property_readonly("num_edges", &Lattice::num_edges)
        .def_property_readonly("num_faces", &Lattice::num_faces)
        .def_property_readonly("num_vertices", &Lattice::num_vertices)
        .def_property_readonly("genus", &Lattice::genus)
        .def("__repr__", [](const Lattice &l) {
            std::ostringstream ss;
            ss << "<Lattice {" << l.p << ',' << l.q << "} E=" << l.num_edges() << " F=" << l.num_faces()
               << " V=" << l.num_vertices() << '>';
            return ss.str();
        });

    m.def("load_lattice", &lattice_from_spec, py::arg("spec"), "Load a lattice file or build 'torus:L'.");
    m.def("generate_torus", &generate_torus, py::arg("L"));
    m.def("dual", &dual, py::arg("lattice"));
    m.def(
        "validate",
        [](const Lattice &lat) {
            ValidationReport r = validate(lat);
            return py::make_tuple(r.ok(), r.str());
        },
        py::arg("lattice"), "Returns (ok, report text).");

    py::class_<CssCode>(m, "CssCode")
        .def_readonly("n", &CssCode::n)
        .def_readonly("k", &CssCode::k)
        .def_property_readonly("d_z", [](const CssCode &c) { return c.d_z.value; })
        .def_property_readonly("d_x", [](const CssCode &c) { return c.d_x.value; })
        .def_property_readonly("distances_exact", [](const CssCode &c) { return c.d_z.exact && c.d_x.exact; })
        .def_property_readonly("rate", [](const CssCode &c) { return c.rate().value(); })
        .def("params", &CssCode::params);

    m.def(
        "build_code",
        [](const Lattice &lat, int max_edges) {
            DistanceOptions opts;
            opts.max_edges = max_edges;
            return build_code(lat, opts);
        },
        py::arg("lattice"), py::arg("max_edges") = DistanceOptions{}.max_edges);
    m.def(
        "encoding_rate", [](int p, int q, long long n) { return encoding_rate(p, q, n).value(); }, py::arg("p"),
        py::arg("q"), py::arg("n"));

    py::class_<ResourceCounts>(m, "ResourceCounts")
        .def_readonly("cz", &ResourceCounts::cz)
        .def_readonly("qubits", &ResourceCounts::qubits)
        .def_readonly("n_f", &ResourceCounts::n_f);
    m.def("resource_counts", &resource_counts, py::arg("p"), py::arg("q"), py::arg("num_edges"), py::arg("z"));

    py::class_<Instance>(m, "Instance")
        .def(py::init([](const std::string &spec, int layers) { return new Instance(spec, layers); }),
             py::arg("spec"), py::arg("layers"))
        .def_property_readonly("name", &Instance::name)
        .def_property_readonly("code", &Instance::code, py::return_value_policy::reference_internal)
        .def_property_readonly("counts", [](const Instance &i) { return i.cluster().counts(); })
        .def_property_readonly("num_fault_locations", [](const Instance &i) { return i.catalog().num_locations(); })
        .def(
            "run_point",
            [](const Instance &inst, double p, const std::string &channels, long long shots, uint64_t seed,
               int threads) {
                std::vector<char> chans(channels.begin(), channels.end());
                py::dict out;
                std::vector<ChannelTally> tallies;
                {
                    py::gil_scoped_release release;
                    tallies = run_point(inst, p, chans, shots, seed, threads);
                }
                for (const ChannelTally &t : tallies) {
                    out[py::str(std::string(1, t.channel))] = py::make_tuple(t.shots, t.failures);
                }
                return out;
            },
            py::arg("p"), py::arg("channels") = "ZX", py::arg("shots") = 1000, py::arg("seed") = 1,
            py::arg("threads") = 1, "Returns {channel: (shots, failures)}.");

    m.def(
        "wilson_interval",
        [](long long failures, long long shots) {
            Interval iv = wilson_interval(failures, shots);
            return py::make_tuple(iv.low, iv.high);
        },
        py::arg("failures"), py::arg("shots"));

    m.def(
        "run_memory",
        [](const std::string &config_text) {
            std::istringstream in(config_text);
            ExperimentConfig cfg = parse_config(in);
            std::ostringstream csv;
            {
                py::gil_scoped_release release;
                run_memory(cfg, csv);
            }
            return csv.str();
        },
        py::arg("config_text"), "Runs a memory experiment from config text and returns the CSV text.");
}
