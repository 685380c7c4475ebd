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

import json
import pathlib

import pytest

import lcmc

FIXTURES = pathlib.Path(__file__).resolve().parents[2] / "tests" / "fixtures"


@pytest.fixture(scope="module")
def scene():
    return (FIXTURES / "corpus" / "scene_00.png").read_bytes()


@pytest.fixture(scope="module")
def edge_container(scene):
    return lcmc.encode(scene, caption="a small house", variant="edge")


def test_encode_and_inspect(edge_container):
    info = lcmc.inspect(edge_container)
    assert info["version"] == 1
    assert (info["width"], info["height"]) == (512, 512)
    assert info["structure_variant"] == "edge"
    assert [l["layer_id"] for l in info["layers"]] == [1, 2, 3]
    assert info["layers"][2]["payload_bytes"] == 195
    assert info["total_bytes"] == len(edge_container)
    assert info["bpp"] == pytest.approx(len(edge_container) * 8 / (512 * 512))


def test_truncation_is_a_prefix(edge_container):
    sizes = []
    for k in (1, 2, 3):
        t = lcmc.truncate_to_layer(edge_container, k)
        assert edge_container.startswith(t)
        assert len(lcmc.inspect(t)["layers"]) == k
        sizes.append(lcmc.bits_per_pixel(t))
    assert sizes == sorted(sizes)
    with pytest.raises(lcmc.LcmcError):
        lcmc.truncate_to_layer(edge_container, 0)


def test_pose_variant_under_budget(scene):
    pose = (FIXTURES / "corpus" / "scene_05.pose.json").read_text()
    caption = (FIXTURES / "corpus" / "scene_05.txt").read_text().strip()
    image = (FIXTURES / "corpus" / "scene_05.png").read_bytes()
    c = lcmc.encode(image, caption=caption, variant="pose", pose_json=pose)
    assert lcmc.inspect(c)["structure_variant"] == "pose"
    assert lcmc.bits_per_pixel(c) < 0.02


def test_stub_decode_is_deterministic(edge_container):
    a = lcmc.decode(edge_container, layers=2, seed=7)
    b = lcmc.decode(edge_container, layers=2, seed=7)
    assert a == b
    assert a.startswith(b"\x89PNG")
    assert lcmc.decode(edge_container, layers=2, seed=8) != a


def test_conditions(edge_container):
    c1 = lcmc.conditions(edge_container, layers=1)
    assert c1["prompt"] == "a small house"
    assert c1["structure_image"] is None and c1["texture_image"] is None
    c3 = lcmc.conditions(edge_container, layers=3)
    assert c3["structure_kind"] == "edge"
    assert c3["texture_image"].startswith(b"\x89PNG")


def test_quantization():
    assert lcmc.quantize_coord(0.12345) == 12
    assert lcmc.dequantize_coord(100) == 1.0
    with pytest.raises(lcmc.LcmcError) as err:
        lcmc.quantize_coord(1.5)
    assert err.value.code == "invalid argument"


def test_edits_touch_only_their_layers(edge_container):
    patched = lcmc.texture_patch(edge_container, [(0, 0, (255, 0, 0))])
    assert lcmc.inspect(patched)["total_bytes"] == len(edge_container)
    assert lcmc.truncate_to_layer(patched, 2) == lcmc.truncate_to_layer(edge_container, 2)

    stencil = [[False] * 256 for _ in range(256)]
    stencil[10][10] = True
    added = lcmc.edge_stencil(edge_container, stencil, "add")
    assert lcmc.truncate_to_layer(added, 1) == lcmc.truncate_to_layer(edge_container, 1)

    swapped = lcmc.texture_swap(edge_container, patched)
    assert swapped == patched

    erased = lcmc.erase_object(edge_container, (0.0, 0.0, 1.0, 1.0))
    assert lcmc.truncate_to_layer(erased, 1) == lcmc.truncate_to_layer(edge_container, 1)

    with pytest.raises(lcmc.LcmcError):
        lcmc.pose_translate(edge_container, 0, [0], 0.1, 0.0)


def test_texture_cells_of_split_image():
    golden = (FIXTURES / "golden" / "half_black_white.lcmc").read_bytes()
    erased = lcmc.erase_object(golden, (0.0, 0.0, 0.5, 1.0))
    c = lcmc.conditions(erased, layers=3, texture_upsample="nearest")
    cells = lcmc.texture_cells(c["texture_image"])
    assert cells == [(255, 255, 255)] * 64


def test_cli_inspect_matches_manifest():
    manifest = json.loads((FIXTURES / "golden" / "manifest.json").read_text())
    code, out, _ = lcmc.cli(["inspect", str(FIXTURES / "golden" / "pose_person.lcmc")])
    assert code == 0
    assert json.loads(out)["total_bytes"] == manifest["pose_person"]["total_bytes"]
    code, _, err = lcmc.cli(["inspect", "/nonexistent.lcmc"])
    assert code == 2 and "lcmc:" in err
