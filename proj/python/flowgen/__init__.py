# Copyright (c) 2026, the flowgen authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Synthetic optical-flow dataset generation: affine scene compositing with
exact ground-truth flow and occlusion masks."""

from ._flowgen import (
    FlowgenError,
    acc_le1,
    epe,
    fl_rate,
    flow_from_affine,
    flow_to_color,
    generate_dataset,
    generate_sample,
    inverse_warp_image,
    make_affine,
    make_demo_assets,
    read_flo,
    write_flo,
)

__all__ = [
    "FlowgenError",
    "acc_le1",
    "epe",
    "fl_rate",
    "flow_from_affine",
    "flow_to_color",
    "generate_dataset",
    "generate_sample",
    "inverse_warp_image",
    "make_affine",
    "make_demo_assets",
    "read_flo",
    "write_flo",
]
