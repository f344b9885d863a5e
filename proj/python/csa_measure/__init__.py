# Copyright 2026 The csa-measure Authors
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

"""Measurement grouping and fermionic fragment decompositions.

Thin wrapper over the compiled ``_core`` module.
"""

import json

from ._core import (
    CsaError,
    ConvergenceError,
    DecompositionError,
    DimensionError,
    IntegralTensors,
    NonHermitianError,
    ParseError,
    PauliSum,
    ValidationError,
    allocate,
    commutes,
    expectation,
    fragment_to_pauli,
    fro,
    gfro,
    ground_state,
    group,
    hf_state,
    map_hamiltonian,
    run_document,
    sector_ground_state,
    svd_factorize,
    variance,
    vgfro,
)

__version__ = "0.1.0"


def run(input, method="fc-si", **kwargs):
    """Run the pipeline and return the parsed report document."""
    return json.loads(run_document(str(input), method, **kwargs))
