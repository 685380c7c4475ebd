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

// Acceptance checks: one line per criterion, non-zero exit if any fails.
// Usage: lcmc_acceptance [path/to/lcmc]   (the CLI check runs in-process
// when no binary is given)

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "fixtures.hpp"
#include "lcmc/cli.hpp"
#include "lcmc/condition_render.hpp"
#include "lcmc/container.hpp"
#include "lcmc/edit_ops.hpp"
#include "lcmc/eval.hpp"
#include "lcmc/image_io.hpp"
#include "lcmc/pipeline.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace lcmc;
using Clock = std::chrono::steady_clock;

namespace {

// Pinned tolerances.
constexpr int kRoundTripCases = 1000;
constexpr double kRoundTripSeconds = 5.0;
constexpr double kPoseBppBound = 0.02;
constexpr double kEdgeCorpusBppBound = 0.03;
constexpr int kQuantSamples = 1'000'000;
constexpr double kQuantBound = 0.005;
constexpr int kTextureImages = 100;
constexpr int kEdgeGrids = 200;
constexpr double kSuiteSeconds = 60.0;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

Outcome container_round_trip() {
  std::mt19937_64 rng(1);
  std::vector<LayeredBitstream> cases;
  for (int i = 0; i < kRoundTripCases; ++i) cases.push_back(oracle::random_bitstream(rng));
  const auto start = Clock::now();
  int ok = 0;
  for (const auto& bs : cases) ok += parse(serialize(bs)) == bs;
  const double t = seconds_since(start);
  std::ostringstream d;
  d << ok << "/" << kRoundTripCases << " equal, " << t << " s";
  return {ok == kRoundTripCases && t < kRoundTripSeconds, d.str()};
}

std::vector<std::pair<std::string, Bytes>> fixture_containers() {
  auto all = fixtures::golden_containers();
  for (int i = 0; i < 10; ++i) {
    OfflineExtractors ex(fixtures::corpus_caption(i), fixtures::corpus_pose(i));
    all.emplace_back("scene_" + std::to_string(i),
                     serialize(encode_image(fixtures::corpus_image(i), ex)));
  }
  return all;
}

Outcome prefix_decodability() {
  int checked = 0;
  for (const auto& [name, bytes] : fixture_containers()) {
    const int depth = parse(bytes).depth();
    double previous = 0.0;
    for (int k = 1; k <= 3; ++k) {
      const Bytes t = truncate_to_layer(bytes, k);
      const LayeredBitstream p = parse(t);
      if (p.depth() != std::min(k, depth) ||
          p.layers.size() != static_cast<std::size_t>(p.depth())) {
        return {false, name + " k=" + std::to_string(k) + " exposes wrong layers"};
      }
      const double bpp = bits_per_pixel(t);
      if (bpp < previous) return {false, name + " bpp decreases at k=" + std::to_string(k)};
      previous = bpp;
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " prefixes parsed, bpp non-decreasing"};
}

Outcome rate_budget() {
  OfflineExtractors ex(fixtures::reference_caption_200(), fixtures::reference_pose());
  EncodeOptions opt;
  opt.variant = VariantChoice::kPose;
  const Bytes pose = serialize(encode_image(fixtures::corpus_image(5), ex, opt));
  const double pose_bpp = bits_per_pixel(pose);

  eval::EvalConfig config;
  config.variant = VariantChoice::kEdge;
  const eval::EvalResult r = eval::run_eval(fixtures::fixture_dir() / "corpus", config);
  double sum = 0.0;
  int n = 0;
  for (const auto& rec : r.records) {
    if (rec.level == 3) {
      sum += rec.bpp;
      ++n;
    }
  }
  const double edge_mean = n ? sum / n : INFINITY;
  std::ostringstream d;
  d << "pose " << pose.size() << " B = " << pose_bpp << " bpp (< " << kPoseBppBound
    << "); edge corpus mean level-3 " << edge_mean << " bpp over " << n << " images (< "
    << kEdgeCorpusBppBound << ")";
  return {pose_bpp < kPoseBppBound && n == 10 && edge_mean < kEdgeCorpusBppBound, d.str()};
}

Outcome quantization_bound() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < kQuantSamples; ++i) {
    const double x = u(rng);
    worst = std::max(worst, std::abs(x - dequantize_coord(quantize_coord(x))));
  }
  std::ostringstream d;
  d << "max error " << worst << " over " << kQuantSamples << " samples";
  // Half a step plus binary-representation slack of 0.01-spaced values.
  return {worst <= kQuantBound + 1e-12, d.str()};
}

Outcome texture_oracle() {
  std::mt19937_64 rng(3);
  int ok = 0;
  for (int i = 0; i < kTextureImages; ++i) {
    const ImageBuffer img = oracle::random_image(rng, 512, 512);
    ok += extract_texture(img) == oracle::block_mean(img);
  }
  return {ok == kTextureImages, std::to_string(ok) + "/" + std::to_string(kTextureImages) +
                                    " images match the brute-force block mean"};
}

Outcome edge_losslessness() {
  std::mt19937_64 rng(4);
  int lossless = 0, inverted = 0;
  for (int i = 0; i < kEdgeGrids; ++i) {
    const int w = 32 + static_cast<int>(rng() % 225);
    const int h = 32 + static_cast<int>(rng() % 225);
    EdgeMap e;
    e.grid = oracle::random_grid(rng, w, h, static_cast<double>(rng() % 101) / 100.0);
    const Bytes p = encode_edges(e, codec::kEdgeReference);
    lossless += decode_edges(p, codec::kEdgeReference, 2 * w, 2 * h) == e;
    inverted += oracle::binarize_maxpool(render_edges(e, 2 * w, 2 * h), 2) == e.grid;
  }
  std::ostringstream d;
  d << lossless << "/" << kEdgeGrids << " round-trip, " << inverted << "/" << kEdgeGrids
    << " render inverted";
  return {lossless == kEdgeGrids && inverted == kEdgeGrids, d.str()};
}

bool others_identical(const LayeredBitstream& a, const LayeredBitstream& b,
                      std::initializer_list<LayerId> targeted) {
  if (!(a.header == b.header) || a.layers.size() != b.layers.size()) return false;
  for (std::size_t i = 0; i < a.layers.size(); ++i) {
    bool hit = false;
    for (LayerId t : targeted) hit |= a.layers[i].layer == t;
    if (!hit && !(a.layers[i] == b.layers[i])) return false;
  }
  return parse(serialize(b)) == b;
}

Outcome edit_locality() {
  std::map<std::string, LayeredBitstream> g;
  for (const auto& [name, bytes] : fixtures::golden_containers()) g[name] = parse(bytes);
  const LayeredBitstream& edge = g["edge_scene"];
  const LayeredBitstream& pose = g["pose_person"];

  BitGrid stencil(256, 256);
  for (int i = 0; i < 256; ++i) stencil.set(i, i, true);

  struct Case {
    const char* name;
    bool ok;
  };
  const Case cases[] = {
      {"pose_translate", others_identical(pose, edit::pose_translate(pose, 0, {0, 1, 2}, 0.05, -0.03),
                                          {LayerId::kStructure})},
      {"edge_stencil", others_identical(edge, edit::edge_stencil(edge, stencil, edit::StencilMode::kAdd),
                                        {LayerId::kStructure})},
      {"texture_patch", others_identical(edge, edit::texture_patch(edge, {{2, 3, {255, 0, 0}}}),
                                         {LayerId::kTexture})},
      {"texture_swap", others_identical(edge, edit::texture_swap(edge, g["uniform_color"]),
                                        {LayerId::kTexture})},
      {"erase_object", others_identical(pose, edit::erase_object(pose, {0.2, 0.2, 0.6, 0.6}),
                                        {LayerId::kStructure, LayerId::kTexture})},
  };
  std::string failed;
  for (const auto& c : cases) {
    if (!c.ok) failed += std::string(" ") + c.name;
  }

  // Left half erased: survivors are the 32 white cells, so the fill is white.
  const LayeredBitstream erased = edit::erase_object(g["half_black_white"], {0, 0, 0.5, 1});
  const TextureMap t = decode_texture(erased.find(LayerId::kTexture)->payload);
  bool white = true;
  for (const Rgb& c : t.cells) white &= c == Rgb{255, 255, 255};
  if (!white) failed += " erase-fill";

  if (!failed.empty()) return {false, "failed:" + failed};
  return {true, "5 edits preserve untouched layers; erase fill = (255,255,255)"};
}

int run_cli(const std::string& binary, const std::vector<std::string>& args) {
  if (binary.empty()) {
    std::vector<std::string> full = {"lcmc"};
    full.insert(full.end(), args.begin(), args.end());
    std::ostringstream out, err;
    return cli::run(full, out, err);
  }
  std::string cmd = "\"" + binary + "\"";
  for (const auto& a : args) cmd += " \"" + a + "\"";
  cmd += " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

Outcome deterministic_offline(const std::string& binary, Clock::time_point suite_start) {
  const fs::path dir = fs::temp_directory_path() /
                       ("lcmc-accept-" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  const std::string img = (fixtures::fixture_dir() / "corpus" / "scene_05.png").string();
  const std::string c1 = (dir / "a.lcmc").string(), c2 = (dir / "b.lcmc").string();
  const std::string o1 = (dir / "a.png").string(), o2 = (dir / "b.png").string();

  std::string problem;
  if (run_cli(binary, {"encode", img, "-o", c1, "--offline"}) != 0 ||
      run_cli(binary, {"encode", img, "-o", c2, "--offline"}) != 0) {
    problem = "encode failed";
  } else if (io::read_file(c1) != io::read_file(c2)) {
    problem = "encode not reproducible";
  }
  for (int k = 1; problem.empty() && k <= 3; ++k) {
    const std::string layers = std::to_string(k);
    if (run_cli(binary, {"decode", c1, "-o", o1, "--layers", layers, "--stub", "--seed", "7"}) != 0 ||
        run_cli(binary, {"decode", c1, "-o", o2, "--layers", layers, "--stub", "--seed", "7"}) != 0) {
      problem = "decode failed at k=" + layers;
    } else if (io::read_file(o1) != io::read_file(o2)) {
      problem = "decode differs at k=" + layers;
    }
  }
  fs::remove_all(dir);
  const double total = seconds_since(suite_start);
  std::ostringstream d;
  d << (binary.empty() ? "in-process CLI" : "lcmc binary") << "; suite total " << total << " s";
  if (!problem.empty()) return {false, problem + "; " + d.str()};
  return {total < kSuiteSeconds, "byte-identical encode and k=1..3 decodes; " + d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string binary = argc > 1 ? argv[1] : "";
  const auto suite_start = Clock::now();
  const std::pair<const char*, std::function<Outcome()>> checks[] = {
      {"container round-trip", container_round_trip},
      {"prefix decodability", prefix_decodability},
      {"rate budget", rate_budget},
      {"quantization bound", quantization_bound},
      {"texture oracle", texture_oracle},
      {"edge codec losslessness", edge_losslessness},
      {"edit locality", edit_locality},
      {"deterministic offline path", [&] { return deterministic_offline(binary, suite_start); }},
  };
  int failures = 0;
  for (const auto& [name, check] : checks) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
