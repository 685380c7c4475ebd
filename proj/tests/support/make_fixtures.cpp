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

// Regenerates the files under tests/fixtures. The golden containers are
// also rebuilt in memory by the test suite and compared byte for byte.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "lcmc/image_io.hpp"
#include "lcmc/wire.hpp"

namespace fs = std::filesystem;
using namespace lcmc;

namespace {

std::string hexdump(const Bytes& b) {
  std::ostringstream out;
  for (std::size_t i = 0; i < b.size(); i += 16) {
    out << std::hex << std::setw(8) << std::setfill('0') << i << ' ';
    for (std::size_t k = i; k < std::min(b.size(), i + 16); ++k) {
      out << ' ' << std::setw(2) << static_cast<int>(b[k]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path root = argc > 1 ? fs::path(argv[1]) : fixtures::fixture_dir();
  const fs::path corpus = root / "corpus";
  const fs::path golden = root / "golden";
  fs::create_directories(corpus);
  fs::create_directories(golden);

  for (int i = 0; i < 10; ++i) {
    std::ostringstream stem;
    stem << "scene_" << std::setw(2) << std::setfill('0') << i;
    io::write_image(corpus / (stem.str() + ".png"), fixtures::corpus_image(i));
    std::ofstream(corpus / (stem.str() + ".txt")) << fixtures::corpus_caption(i) << '\n';
    if (auto pose = fixtures::corpus_pose(i)) {
      std::ofstream(corpus / (stem.str() + ".pose.json")) << wire::pose_to_json(*pose).dump() << '\n';
    }
  }

  nlohmann::json manifest = nlohmann::json::object();
  std::ofstream dump(golden / "HEXDUMP.md");
  dump << "# Golden container hex dumps\n\n"
       << "Generated by `lcmc_make_fixtures`. Layout: 10-byte header "
          "(\"LCMC\", version, width u16be, height u16be, variant), then records "
          "(layer id, codec id, payload length u32be, payload).\n";
  for (const auto& [name, bytes] : fixtures::golden_containers()) {
    io::write_file(golden / (name + ".lcmc"), bytes);
    const LayeredBitstream bs = parse(bytes);
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& r : bs.layers) {
      layers.push_back({{"layer_id", static_cast<int>(r.layer)},
                        {"codec_id", r.codec_id},
                        {"payload_bytes", r.payload.size()},
                        {"record_bytes", r.encoded_size()}});
    }
    manifest[name] = {{"total_bytes", bytes.size()},
                      {"structure_variant", to_string(bs.header.variant)},
                      {"layers", layers}};
    dump << "\n## " << name << ".lcmc (" << bytes.size() << " bytes)\n\n```\n"
         << hexdump(bytes) << "```\n";
  }
  std::ofstream(golden / "manifest.json") << manifest.dump(2) << '\n';
  std::cout << "fixtures written to " << root << '\n';
  return 0;
}
