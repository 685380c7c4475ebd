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

#include "lcmc/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lcmc/edit_ops.hpp"
#include "lcmc/error.hpp"
#include "lcmc/eval.hpp"
#include "lcmc/http_backend.hpp"
#include "lcmc/image_io.hpp"
#include "lcmc/pipeline.hpp"

namespace lcmc::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return kInputUnreadable;
    case ErrorCode::kExtractor:
    case ErrorCode::kBackend: return kBackendFailure;
    case ErrorCode::kMissingLayer: return kLayerAbsent;
    case ErrorCode::kWrongVariant: return kWrongVariant;
    case ErrorCode::kOutOfRange: return kIndexOutOfRange;
    case ErrorCode::kDimensionMismatch: return kDimensionMismatch;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kInvariantViolation: return kInvalidArgument;
    case ErrorCode::kExternalUnavailable: return kExternalCodecUnavailable;
    default: return kInvalidContainer;
  }
}

std::vector<double> parse_numbers(const std::string& text, std::size_t expected,
                                  const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string("malformed ") + what + ": \"" + text + "\"");
    }
  }
  if (expected != 0 && values.size() != expected) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + " needs " + std::to_string(expected) +
                    " comma-separated values, got \"" + text + "\"");
  }
  return values;
}

LayeredBitstream load_container(const fs::path& path) {
  return parse(io::read_file(path));
}

void save_container(const fs::path& path, const LayeredBitstream& bs) {
  io::write_file(path, serialize(bs));
}

std::string backend_url(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("LCMC_BACKEND_URL")) return env;
  return {};
}

std::unique_ptr<HttpBackend> make_backend(const std::string& url) {
  if (url.empty()) {
    throw Error(ErrorCode::kBackend,
                "no backend URL: pass --backend, set LCMC_BACKEND_URL, or run "
                "offline");
  }
  return std::make_unique<HttpBackend>(HttpBackendOptions{url});
}

std::unique_ptr<CommandEdgeCodec> make_edge_codec(const std::string& enc,
                                                  const std::string& dec) {
  if (enc.empty() && dec.empty()) return nullptr;
  return std::make_unique<CommandEdgeCodec>(enc, dec);
}

json inspect_json(ByteView bytes) {
  const LayeredBitstream bs = parse(bytes);
  json layers = json::array();
  for (const auto& r : bs.layers) {
    layers.push_back({{"layer_id", static_cast<int>(r.layer)},
                      {"name", to_string(r.layer)},
                      {"codec_id", r.codec_id},
                      {"payload_bytes", r.payload.size()},
                      {"record_bytes", r.encoded_size()}});
  }
  return {{"version", bs.header.version},
          {"width", bs.header.width},
          {"height", bs.header.height},
          {"structure_variant", to_string(bs.header.variant)},
          {"header_bytes", kHeaderSize},
          {"layers", layers},
          {"total_bytes", bytes.size()},
          {"bpp", bits_per_pixel(bytes.size(), bs.header)}};
}

void print_rate(std::ostream& out, const LayeredBitstream& bs, std::size_t total) {
  for (const auto& r : bs.layers) {
    out << "layer " << static_cast<int>(r.layer) << ' ' << to_string(r.layer)
        << " codec=" << static_cast<int>(r.codec_id)
        << " payload_bytes=" << r.payload.size()
        << " record_bytes=" << r.encoded_size() << '\n';
  }
  out << "variant=" << to_string(bs.header.variant) << " total_bytes=" << total
      << " bpp=" << std::setprecision(6) << bits_per_pixel(total, bs.header) << '\n';
}

struct EncodeArgs {
  std::string input, output, variant = "auto", backend, caption, caption_file,
      pose_file, edge_encoder;
  bool offline = false;
  int threshold = kDefaultEdgeThreshold;
  int level = zstd::kDefaultLevel;
};

int cmd_encode(const EncodeArgs& a, std::ostream& out) {
  const ImageBuffer img = io::read_image(a.input);
  EncodeOptions options;
  options.variant = a.variant == "pose"   ? VariantChoice::kPose
                    : a.variant == "edge" ? VariantChoice::kEdge
                                          : VariantChoice::kAuto;
  options.edge_threshold = static_cast<std::uint8_t>(a.threshold);
  options.zstd_level = a.level;
  auto external = make_edge_codec(a.edge_encoder, "");
  options.external_edges = external.get();

  LayeredBitstream bs;
  if (a.offline) {
    OfflineExtractors sidecars = eval::sidecar_extractors(a.input);
    std::string caption = sidecars.caption(img);
    if (!a.caption_file.empty()) {
      const Bytes raw = io::read_file(a.caption_file);
      caption.assign(raw.begin(), raw.end());
      while (!caption.empty() && (caption.back() == '\n' || caption.back() == '\r')) {
        caption.pop_back();
      }
    }
    if (!a.caption.empty()) caption = a.caption;
    std::optional<PoseMap> pose;
    if (!a.pose_file.empty()) {
      std::ifstream in(a.pose_file);
      if (!in) throw Error(ErrorCode::kIo, "cannot open " + a.pose_file);
      pose = wire::pose_from_json(json::parse(in));
    } else {
      try {
        pose = sidecars.pose(img);
      } catch (const Error&) {
      }
    }
    OfflineExtractors extractors(caption, pose);
    bs = encode_image(img, extractors, options);
  } else {
    auto backend = make_backend(backend_url(a.backend));
    bs = encode_image(img, *backend, options);
  }
  const Bytes bytes = serialize(bs);
  io::write_file(a.output, bytes);
  print_rate(out, bs, bytes.size());
  return kOk;
}

struct DecodeArgs {
  std::string input, output, backend, dump_dir, edge_decoder,
      texture_mode = "bilinear";
  int layers = 3;
  bool stub = false;
  GenerationParams params;
};

int cmd_decode(const DecodeArgs& a, std::ostream& out) {
  const LayeredBitstream bs = load_container(a.input);
  auto external = make_edge_codec("", a.edge_decoder);
  const LayeredPriors priors = decode_layers(bs, a.layers, external.get());
  const TextureUpsample mode = a.texture_mode == "nearest" ? TextureUpsample::kNearest
                                                           : TextureUpsample::kBilinear;
  if (!a.dump_dir.empty()) {
    const ConditionSet c = build_conditions(priors, bs.header.width, bs.header.height, mode);
    fs::create_directories(a.dump_dir);
    if (c.structure_image) io::write_image(fs::path(a.dump_dir) / "structure.png", *c.structure_image);
    if (c.texture_image) io::write_image(fs::path(a.dump_dir) / "texture.png", *c.texture_image);
    io::write_file(fs::path(a.dump_dir) / "prompt.txt", as_bytes(c.prompt));
  }
  std::unique_ptr<GeneratorProvider> generator;
  if (a.stub) {
    generator = std::make_unique<StubGenerator>();
  } else {
    generator = make_backend(backend_url(a.backend));
  }
  const GeneratedImage g = reconstruct(priors, bs.header.width, bs.header.height,
                                       a.params, *generator, mode);
  io::write_image(a.output, g.image);
  out << "level=" << g.fidelity_level << " width=" << g.image.width()
      << " height=" << g.image.height() << " seed=" << g.params.seed << '\n';
  return kOk;
}

int cmd_eval(const std::string& corpus, const std::string& out_dir,
             eval::EvalConfig config, bool offline, const std::string& backend,
             std::ostream& out, std::ostream& err) {
  if (!offline) config.backend_url = backend_url(backend);
  if (config.metrics && config.backend_url.empty()) {
    throw Error(ErrorCode::kBackend, "--metrics needs a backend URL");
  }
  const eval::EvalResult result = eval::run_eval(corpus, config);
  if (result.images == 0) {
    err << "no images in " << corpus << '\n';
    return kNoImages;
  }
  for (const auto& [id, why] : result.failures) {
    err << "skipped " << id << ": " << why << '\n';
  }
  fs::create_directories(out_dir);
  {
    std::ofstream csv(fs::path(out_dir) / "rd.csv");
    eval::write_csv(csv, result.records);
  }
  const json summary = eval::summary_json(result);
  {
    std::ofstream js(fs::path(out_dir) / "summary.json");
    js << summary.dump(2) << '\n';
  }
  out << summary.dump(2) << '\n';
  return result.failures.size() == result.images ? kAllImagesFailed : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Layered cross-modal image codec"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lcmc 0.1.0");

  // encode
  EncodeArgs enc;
  auto* encode = app.add_subcommand("encode", "Encode an image into a layered container");
  encode->add_option("input", enc.input, "PNG or PPM image")->required();
  encode->add_option("-o,--output", enc.output, "Container path")->required();
  encode->add_option("--variant", enc.variant, "Structure variant")
      ->check(CLI::IsMember({"auto", "edge", "pose"}));
  encode->add_flag("--offline", enc.offline, "Use sidecar captions/poses and the fallback edge detector");
  encode->add_option("--backend", enc.backend, "Model service URL (default: $LCMC_BACKEND_URL)");
  encode->add_option("--caption", enc.caption, "Caption text (offline)");
  encode->add_option("--caption-file", enc.caption_file, "Caption file (offline)");
  encode->add_option("--pose-file", enc.pose_file, "Pose JSON (offline)");
  encode->add_option("--threshold", enc.threshold, "Edge threshold")->check(CLI::Range(0, 255));
  encode->add_option("--level", enc.level, "Zstd level")->check(CLI::Range(1, 22));
  encode->add_option("--edge-encoder", enc.edge_encoder,
                     "External edge encoder command ({in} {out} {width} {height}); selects codec 2");

  // decode
  DecodeArgs dec;
  auto* decode = app.add_subcommand("decode", "Reconstruct an image from the first k layers");
  decode->add_option("input", dec.input, "Container path")->required();
  decode->add_option("-o,--output", dec.output, "Output image (.png or .ppm)")->required();
  decode->add_option("--layers", dec.layers, "Fidelity level")->check(CLI::Range(1, 3));
  decode->add_flag("--stub", dec.stub, "Use the deterministic stub generator");
  decode->add_option("--backend", dec.backend, "Model service URL (default: $LCMC_BACKEND_URL)");
  decode->add_option("--seed", dec.params.seed, "Generation seed");
  decode->add_option("--guidance", dec.params.guidance_scale, "Guidance scale");
  decode->add_option("--steps", dec.params.steps, "Diffusion steps");
  decode->add_option("--condition-scale", dec.params.condition_scale, "Adapter condition scale");
  decode->add_option("--texture-upsample", dec.texture_mode, "Colormap upsampling")
      ->check(CLI::IsMember({"bilinear", "nearest"}));
  decode->add_option("--dump-conditions", dec.dump_dir, "Write rendered condition images here");
  decode->add_option("--edge-decoder", dec.edge_decoder, "External edge decoder command (codec 2)");

  // inspect
  std::string inspect_path;
  auto* inspect = app.add_subcommand("inspect", "Print container layout as JSON");
  inspect->add_option("input", inspect_path, "Container path")->required();

  // truncate
  std::string trunc_in, trunc_out;
  int trunc_layers = 3;
  auto* truncate = app.add_subcommand("truncate", "Keep only layers <= k");
  truncate->add_option("input", trunc_in, "Container path")->required();
  truncate->add_option("-o,--output", trunc_out, "Output container")->required();
  truncate->add_option("--layers", trunc_layers, "Highest layer kept")->required()->check(CLI::PositiveNumber);

  // edit
  auto* edit = app.add_subcommand("edit", "Edit a container without decoding it");
  edit->require_subcommand(1);
  std::string edit_in, edit_out;

  std::size_t person = 0;
  std::string keypoints;
  double dx = 0.0, dy = 0.0;
  auto* translate = edit->add_subcommand("pose-translate", "Move pose keypoints");
  translate->add_option("input", edit_in)->required();
  translate->add_option("-o,--output", edit_out)->required();
  translate->add_option("--person", person, "Person index");
  translate->add_option("--keypoints", keypoints, "Comma-separated keypoint indices")->required();
  translate->add_option("--dx", dx, "Horizontal shift (normalized)");
  translate->add_option("--dy", dy, "Vertical shift (normalized)");

  std::string stencil_path, stencil_mode = "add";
  auto* stencil = edit->add_subcommand("edge-stencil", "Add or subtract an edge stencil");
  stencil->add_option("input", edit_in)->required();
  stencil->add_option("-o,--output", edit_out)->required();
  stencil->add_option("--stencil", stencil_path, "1-bit image at grid resolution")->required();
  stencil->add_option("--mode", stencil_mode)->check(CLI::IsMember({"add", "subtract"}));

  std::vector<std::string> cells;
  auto* patch = edit->add_subcommand("texture-patch", "Overwrite colormap cells");
  patch->add_option("input", edit_in)->required();
  patch->add_option("-o,--output", edit_out)->required();
  patch->add_option("--cell", cells, "row,col,r,g,b (repeatable)");

  std::string donor_path, save_previous;
  auto* swap = edit->add_subcommand("texture-swap", "Replace the colormap with a donor's");
  swap->add_option("input", edit_in)->required();
  swap->add_option("donor", donor_path, "Donor container or raw texture payload")->required();
  swap->add_option("-o,--output", edit_out)->required();
  swap->add_option("--save-previous", save_previous, "Write the replaced texture payload here");

  std::string region_text;
  auto* erase = edit->add_subcommand("erase", "Erase a rectangular region");
  erase->add_option("input", edit_in)->required();
  erase->add_option("-o,--output", edit_out)->required();
  erase->add_option("--region", region_text, "x0,y0,x1,y1 (normalized)")->required();

  // eval
  std::string corpus, out_dir = "eval_out", eval_backend, eval_variant = "auto";
  bool eval_offline = false;
  eval::EvalConfig config;
  auto* ev = app.add_subcommand("eval", "Rate evaluation over an image directory");
  ev->add_option("corpus", corpus, "Directory of images")->required();
  ev->add_option("--out-dir", out_dir, "Where rd.csv and summary.json go");
  ev->add_flag("--offline", eval_offline, "Sidecar captions/poses, fallback edges");
  ev->add_option("--backend", eval_backend, "Model service URL (default: $LCMC_BACKEND_URL)");
  ev->add_option("--jobs", config.jobs, "Worker threads (default: cores, max 8)");
  ev->add_option("--variant", eval_variant)->check(CLI::IsMember({"auto", "edge", "pose"}));
  ev->add_flag("--metrics", config.metrics, "Reconstruct all levels and query /metrics");
  ev->add_option("--seed", config.params.seed, "Generation seed for metric runs");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*encode) return cmd_encode(enc, out);
    if (*decode) return cmd_decode(dec, out);
    if (*inspect) {
      out << inspect_json(io::read_file(inspect_path)).dump(2) << '\n';
      return kOk;
    }
    if (*truncate) {
      io::write_file(trunc_out, truncate_to_layer(io::read_file(trunc_in), trunc_layers));
      return kOk;
    }
    if (*ev) {
      config.variant = eval_variant == "pose"   ? VariantChoice::kPose
                       : eval_variant == "edge" ? VariantChoice::kEdge
                                                : VariantChoice::kAuto;
      return cmd_eval(corpus, out_dir, config, eval_offline, eval_backend, out, err);
    }
    if (*edit) {
      const LayeredBitstream bs = load_container(edit_in);
      LayeredBitstream result;
      if (*translate) {
        std::vector<std::size_t> indices;
        for (double v : parse_numbers(keypoints, 0, "keypoint list")) {
          if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
            throw Error(ErrorCode::kInvalidArgument, "keypoint indices must be non-negative integers");
          }
          indices.push_back(static_cast<std::size_t>(v));
        }
        result = edit::pose_translate(bs, person, indices, dx, dy);
      } else if (*stencil) {
        result = edit::edge_stencil(bs, io::read_bitmap(stencil_path),
                                    stencil_mode == "add" ? edit::StencilMode::kAdd
                                                          : edit::StencilMode::kSubtract);
      } else if (*patch) {
        std::vector<edit::CellPatch> patches;
        for (const auto& c : cells) {
          const auto v = parse_numbers(c, 5, "cell");
          for (std::size_t k = 2; k < 5; ++k) {
            if (v[k] < 0 || v[k] > 255) {
              throw Error(ErrorCode::kInvalidArgument, "color channels must be 0-255");
            }
          }
          patches.push_back({static_cast<int>(v[0]), static_cast<int>(v[1]),
                             Rgb{static_cast<std::uint8_t>(v[2]), static_cast<std::uint8_t>(v[3]),
                                 static_cast<std::uint8_t>(v[4])}});
        }
        result = edit::texture_patch(bs, patches);
      } else if (*swap) {
        const Bytes donor = io::read_file(donor_path);
        const bool is_container =
            donor.size() >= kMagic.size() && std::equal(kMagic.begin(), kMagic.end(), donor.begin());
        result = is_container ? edit::texture_swap(bs, parse(donor))
                              : edit::texture_swap(bs, ByteView(donor));
        if (!save_previous.empty()) {
          io::write_file(save_previous, bs.find(LayerId::kTexture)->payload);
        }
      } else if (*erase) {
        const auto v = parse_numbers(region_text, 4, "region");
        result = edit::erase_object(bs, {v[0], v[1], v[2], v[3]});
      }
      save_container(edit_out, result);
      return kOk;
    }
  } catch (const Error& e) {
    err << "lcmc: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "lcmc: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace lcmc::cli
