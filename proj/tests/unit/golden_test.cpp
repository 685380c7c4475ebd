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

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "lcmc/cli.hpp"
#include "lcmc/image_io.hpp"

using namespace lcmc;
using nlohmann::json;

TEST_CASE("shipped golden containers are reproduced byte for byte") {
  const auto dir = fixtures::fixture_dir() / "golden";
  std::ifstream mf(dir / "manifest.json");
  REQUIRE(mf);
  const json manifest = json::parse(mf);

  for (const auto& [name, bytes] : fixtures::golden_containers()) {
    CAPTURE(name);
    const Bytes shipped = io::read_file(dir / (name + ".lcmc"));
    CHECK(shipped == bytes);

    const json& m = manifest.at(name);
    CHECK(m["total_bytes"] == bytes.size());

    std::ostringstream out, err;
    REQUIRE(cli::run({"lcmc", "inspect", (dir / (name + ".lcmc")).string()}, out, err) == 0);
    const json insp = json::parse(out.str());
    CHECK(insp["structure_variant"] == m["structure_variant"]);
    REQUIRE(insp["layers"].size() == m["layers"].size());
    for (std::size_t i = 0; i < m["layers"].size(); ++i) {
      for (const char* key : {"layer_id", "codec_id", "payload_bytes", "record_bytes"}) {
        CHECK(insp["layers"][i][key] == m["layers"][i][key]);
      }
    }
  }
}

TEST_CASE("fixture corpus images decode to the generator output") {
  for (int i = 0; i < 10; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "corpus/scene_%02d.png", i);
    REQUIRE(io::read_image(fixtures::fixture_dir() / name) == fixtures::corpus_image(i));
  }
}
