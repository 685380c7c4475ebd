# Copyright 2026 The LCMC Authors
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
"""Layered cross-modal image codec: containers, offline encode/decode, edits."""

from ._core import (
    LcmcError,
    bits_per_pixel,
    cli,
    conditions,
    decode,
    dequantize_coord,
    edge_stencil,
    encode,
    erase_object,
    inspect,
    pose_translate,
    quantize_coord,
    texture_cells,
    texture_patch,
    texture_swap,
    truncate_to_layer,
)

__all__ = [
    "LcmcError",
    "bits_per_pixel",
    "cli",
    "conditions",
    "decode",
    "dequantize_coord",
    "edge_stencil",
    "encode",
    "erase_object",
    "inspect",
    "pose_translate",
    "quantize_coord",
    "texture_cells",
    "texture_patch",
    "texture_swap",
    "truncate_to_layer",
]
__version__ = "0.1.0"
