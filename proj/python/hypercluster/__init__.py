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

"""Foliated cluster-state memory experiments on closed {p,q} lattices."""

from ._core import (  # noqa: F401
    CSV_HEADER,
    AuditError,
    ConfigError,
    CssCode,
    DecoderError,
    Instance,
    Lattice,
    LatticeError,
    ResourceCounts,
    __version__,
    build_code,
    dual,
    encoding_rate,
    generate_torus,
    load_lattice,
    resource_counts,
    run_memory,
    validate,
    wilson_interval,
)
