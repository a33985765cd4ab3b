# Copyright 2026 The Hypercluster Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import pytest

import hypercluster as hc


def test_torus_code_parameters():
    code = hc.build_code(hc.generate_torus(3))
    assert (code.n, code.k, code.d_z, code.d_x) == (18, 2, 3, 3)
    assert code.params() == "[[18,2,3,3]]"
    assert code.distances_exact


def test_lattice_validation_and_dual():
    lat = hc.load_lattice("torus:4")
    ok, text = hc.validate(lat)
    assert ok, text
    d = hc.dual(lat)
    assert (d.num_faces, d.num_vertices, d.num_edges) == (16, 16, 32)


def test_resource_counts_and_rate():
    c = hc.resource_counts(8, 3, 216, 4)
    assert (c.cz, c.qubits, c.n_f) == (4968, 2520, 77040)
    assert round(hc.encoding_rate(8, 3, 216), 4) == 0.0926
    with pytest.raises(ValueError):
        hc.encoding_rate(8, 3, 16)


def test_instance_and_noiseless_point():
    inst = hc.Instance("torus:3", 8)
    assert inst.num_fault_locations == 6426
    assert inst.run_point(0.0, "ZX", 100, 1) == {"Z": (100, 0), "X": (100, 0)}


def test_run_memory_csv():
    csv = hc.run_memory("lattice = torus:3\nlayers = 2\nrates = 0.01\nshots = 20\nseed = 5\n")
    lines = csv.strip().splitlines()
    assert lines[0] == hc.CSV_HEADER
    assert len(lines) == 3
    assert lines[1].startswith("torus:3,18,2,3,3,2,Z,0.01,20,")


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        hc.load_lattice("torus:x")
    with pytest.raises(ValueError):
        hc.run_memory("layers = 3\n")
    lo, hi = hc.wilson_interval(0, 100)
    assert lo == 0.0 and 0 < hi < 0.05
