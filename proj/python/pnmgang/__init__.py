# Copyright 2026 The pnmgang Authors
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

"""Parallel Nash Memory for generative adversarial network games."""

from ._pnmgang import (
    ConfigError,
    NumericalError,
    derive_seed,
    epsilon_of_profile,
    make_task,
    mode_coverage,
    pnm_on_matrix,
    resolve_config,
    run_experiment,
    sample_real,
    solve_zero_sum,
    task_names,
)

__all__ = [
    "ConfigError",
    "NumericalError",
    "derive_seed",
    "epsilon_of_profile",
    "make_task",
    "mode_coverage",
    "pnm_on_matrix",
    "resolve_config",
    "run_experiment",
    "sample_real",
    "solve_zero_sum",
    "task_names",
]
