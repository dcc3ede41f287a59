# Copyright 2026 The pskrx Authors
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

"""Adaptive M-PSK feedback receiver: simulation, exact evaluation and bounds."""

from pskrx._core import (
    DeviceParams,
    ReceiverConfig,
    ErrorEstimate,
    ExactResult,
    CurvePoint,
    exact_error_probability,
    run_batch,
    helstrom_psk,
    sql_psk,
    wilson_interval,
    default_photon_grid,
    run_preset,
)

__all__ = [
    "DeviceParams",
    "ReceiverConfig",
    "ErrorEstimate",
    "ExactResult",
    "CurvePoint",
    "exact_error_probability",
    "run_batch",
    "helstrom_psk",
    "sql_psk",
    "wilson_interval",
    "default_photon_grid",
    "run_preset",
]
