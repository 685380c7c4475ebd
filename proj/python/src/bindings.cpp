// Copyright 2026 The LCMC Authors
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

#include "lcmc/cli.hpp"
#include "lcmc/container.hpp"
#include "lcmc/edit_ops.hpp"
#include "lcmc/error.hpp"
#include "lcmc/image_io.hpp"
#include "lcmc/pipeline.hpp"
#include "lcmc/providers.hpp"
#include "lcmc/wire.hpp"

namespace py = pybind11;
using namespace lcmc;

namespace {

Bytes to_bytes(const py::bytes& b) {
  const std::string_view s = b;
  return Bytes(s.begin(), s.end());
}

py::bytes to_py(const Bytes& b) {
  return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
}

py::bytes to_py(const LayeredBitstream& bs) { return to_py(serialize(bs)); }

LayeredBitstream load(const py::bytes& b) { return parse(to_bytes(b)); }

VariantChoice variant_of(const std::string& v) {
  if (v == "auto") return VariantChoice::kAuto;
  if (v == "edge") return VariantChoice::kEdge;
  if (v == "pose") return VariantChoice::kPose;
  throw Error(ErrorCode::kInvalidArgument, "variant must be auto, edge or pose");
}

py::dict inspect(const py::bytes& data) {
  const Bytes bytes = to_bytes(data);
  const LayeredBitstream bs = parse(bytes);
  py::list layers;
  for (const auto& r : bs.layers) {
    py::dict d;
    d["layer_id"] = static_cast<int>(r.layer);
    d["name"] = std::string(to_string(r.layer));
    d["codec_id"] = static_cast<int>(r.codec_id);
    d["payload_bytes"] = r.payload.size();
    d["record_bytes"] = r.encoded_size();
    layers.append(d);
  }
  py::dict out;
  out["version"] = static_cast<int>(bs.header.version);
  out["width"] = bs.header.width;
  out["height"] = bs.header.height;
  out["structure_variant"] = std::string(to_string(bs.header.variant));
  out["layers"] = layers;
  out["total_bytes"] = bytes.size();
  out["bpp"] = bits_per_pixel(bytes.size(), bs.header);
  return out;
}

py::bytes encode(const py::bytes& image, const std::string& caption,
                 const std::string& variant, const std::optional<std::string>& pose_json,
                 int threshold, int level) {
  const ImageBuffer img = io::decode_image(to_bytes(image));
  std::optional<PoseMap> pose;
  if (pose_json) pose = wire::pose_from_json(nlohmann::json::parse(*pose_json));
  OfflineExtractors ex(caption, pose);
  EncodeOptions opt;
  opt.variant = variant_of(variant);
  if (threshold < 0 || threshold > 255) {
    throw Error(ErrorCode::kInvalidArgument, "threshold must be 0-255");
  }
  opt.edge_threshold = static_cast<std::uint8_t>(threshold);
  opt.zstd_level = level;
  return to_py(encode_image(img, ex, opt));
}

py::bytes decode(const py::bytes& container, int layers, std::uint64_t seed,
                 double guidance, int steps, double condition_scale,
                 const std::string& upsample) {
  const LayeredBitstream bs = load(container);
  GenerationParams params{guidance, steps, condition_scale, seed};
  StubGenerator stub;
  const TextureUpsample mode =
      upsample == "nearest" ? TextureUpsample::kNearest : TextureUpsample::kBilinear;
  const GeneratedImage g = reconstruct(decode_layers(bs, layers), bs.header.width,
                                       bs.header.height, params, stub, mode);
  return to_py(io::encode_png(g.image));
}

py::dict conditions(const py::bytes& container, int layers, const std::string& upsample) {
  const LayeredBitstream bs = load(container);
  const TextureUpsample mode =
      upsample == "nearest" ? TextureUpsample::kNearest : TextureUpsample::kBilinear;
  const ConditionSet c =
      build_conditions(decode_layers(bs, layers), bs.header.width, bs.header.height, mode);
  py::dict out;
  out["prompt"] = c.prompt;
  out["structure_kind"] = std::string(to_string(c.structure_kind));
  out["structure_image"] =
      c.structure_image ? py::object(to_py(io::encode_png(*c.structure_image))) : py::none();
  out["texture_image"] =
      c.texture_image ? py::object(to_py(io::encode_png(*c.texture_image))) : py::none();
  return out;
}

std::vector<std::tuple<int, int, int>> texture_cells(const py::bytes& image) {
  const TextureMap t = extract_texture(io::decode_image(to_bytes(image)));
  std::vector<std::tuple<int, int, int>> out;
  for (const Rgb& c : t.cells) out.emplace_back(c.r, c.g, c.b);
  return out;
}

BitGrid grid_from_rows(const std::vector<std::vector<bool>>& rows) {
  if (rows.empty()) throw Error(ErrorCode::kInvalidArgument, "stencil is empty");
  BitGrid g(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()));
  for (std::size_t y = 0; y < rows.size(); ++y) {
    if (rows[y].size() != rows[0].size()) {
      throw Error(ErrorCode::kInvalidArgument, "stencil rows differ in length");
    }
    for (std::size_t x = 0; x < rows[y].size(); ++x) {
      g.set(static_cast<int>(x), static_cast<int>(y), rows[y][x]);
    }
  }
  return g;
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> full = {"lcmc"};
  full.insert(full.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = cli::run(full, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Layered cross-modal image codec";

  // Leaked on purpose: the type must outlive interpreter teardown.
  static auto* error = new py::exception<Error>(m, "LcmcError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error->ptr())(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error->ptr(), exc.ptr());
    }
  });

  m.def("inspect", &inspect, py::arg("container"));
  m.def("truncate_to_layer",
        [](const py::bytes& b, int k) { return to_py(truncate_to_layer(to_bytes(b), k)); },
        py::arg("container"), py::arg("k"));
  m.def("bits_per_pixel", [](const py::bytes& b) { return bits_per_pixel(to_bytes(b)); },
        py::arg("container"));
  m.def("quantize_coord", &quantize_coord, py::arg("x"));
  m.def("dequantize_coord", &dequantize_coord, py::arg("q"));

  m.def("encode", &encode, "Encode PNG/PPM bytes offline with the fallback edge detector.",
        py::arg("image"), py::arg("caption") = "", py::arg("variant") = "auto",
        py::arg("pose_json") = py::none(), py::arg("threshold") = kDefaultEdgeThreshold,
        py::arg("level") = zstd::kDefaultLevel);
  m.def("decode", &decode, "Reconstruct with the deterministic stub generator; returns PNG bytes.",
        py::arg("container"), py::arg("layers") = 3, py::arg("seed") = 0,
        py::arg("guidance") = 7.5, py::arg("steps") = 50, py::arg("condition_scale") = 1.0,
        py::arg("texture_upsample") = "bilinear");
  m.def("conditions", &conditions, "Rendered condition images (PNG bytes) for the first k layers.",
        py::arg("container"), py::arg("layers") = 3, py::arg("texture_upsample") = "bilinear");
  m.def("texture_cells", &texture_cells, "8x8 colormap of an image, row-major.",
        py::arg("image"));

  m.def("pose_translate",
        [](const py::bytes& b, std::size_t person, const std::vector<std::size_t>& kps,
           double dx, double dy) { return to_py(edit::pose_translate(load(b), person, kps, dx, dy)); },
        py::arg("container"), py::arg("person"), py::arg("keypoints"), py::arg("dx") = 0.0,
        py::arg("dy") = 0.0);
  m.def("edge_stencil",
        [](const py::bytes& b, const std::vector<std::vector<bool>>& rows, const std::string& mode) {
          if (mode != "add" && mode != "subtract") {
            throw Error(ErrorCode::kInvalidArgument, "mode must be add or subtract");
          }
          return to_py(edit::edge_stencil(load(b), grid_from_rows(rows),
                                          mode == "add" ? edit::StencilMode::kAdd
                                                        : edit::StencilMode::kSubtract));
        },
        py::arg("container"), py::arg("stencil"), py::arg("mode") = "add");
  m.def("texture_patch",
        [](const py::bytes& b, const std::vector<std::tuple<int, int, std::tuple<int, int, int>>>& cells) {
          std::vector<edit::CellPatch> patches;
          for (const auto& [row, col, rgb] : cells) {
            const auto [r, g, bl] = rgb;
            for (int v : {r, g, bl}) {
              if (v < 0 || v > 255) throw Error(ErrorCode::kInvalidArgument, "channel out of 0-255");
            }
            patches.push_back({row, col, Rgb{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                                             static_cast<std::uint8_t>(bl)}});
          }
          return to_py(edit::texture_patch(load(b), patches));
        },
        py::arg("container"), py::arg("cells"));
  m.def("texture_swap",
        [](const py::bytes& b, const py::bytes& donor) {
          const Bytes d = to_bytes(donor);
          const bool is_container =
              d.size() >= kMagic.size() && std::equal(kMagic.begin(), kMagic.end(), d.begin());
          return to_py(is_container ? edit::texture_swap(load(b), parse(d))
                                    : edit::texture_swap(load(b), ByteView(d)));
        },
        py::arg("container"), py::arg("donor"));
  m.def("erase_object",
        [](const py::bytes& b, std::tuple<double, double, double, double> r) {
          const auto [x0, y0, x1, y1] = r;
          return to_py(edit::erase_object(load(b), {x0, y0, x1, y1}));
        },
        py::arg("container"), py::arg("region"));

  m.def("cli", &run_cli, "Run the lcmc command line in-process; returns (code, stdout, stderr).",
        py::arg("args"));
}
