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

#include "lcmc/wire.hpp"

#include <algorithm>

#include <boost/beast/core/detail/base64.hpp>

#include "lcmc/error.hpp"
#include "lcmc/image_io.hpp"

namespace lcmc::wire {
namespace {

namespace b64 = boost::beast::detail::base64;
using nlohmann::json;

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw Error(ErrorCode::kBackend, std::string("response lacks \"") + name + "\"");
  }
  return j.at(name);
}

std::optional<double> optional_number(const json& j, const char* name) {
  if (!j.contains(name) || j.at(name).is_null()) return std::nullopt;
  return j.at(name).get<double>();
}

}  // namespace

std::string base64_encode(ByteView data) {
  std::string out(b64::encoded_size(data.size()), '\0');
  out.resize(b64::encode(out.data(), data.data(), data.size()));
  return out;
}

Bytes base64_decode(std::string_view text) {
  // decoded_size() assumes padded input; anything else could overrun `out`.
  if (text.size() % 4 != 0) throw Error(ErrorCode::kDecode, "invalid base64 length");
  // The decoder stops at the first '=', so padding is stripped first.
  std::string_view body = text;
  std::size_t pad = 0;
  while (pad < 2 && !body.empty() && body.back() == '=') {
    body.remove_suffix(1);
    ++pad;
  }
  Bytes out(b64::decoded_size(text.size()));
  const auto [written, read] = b64::decode(out.data(), body.data(), body.size());
  if (read != body.size()) {
    throw Error(ErrorCode::kDecode, "invalid base64 text");
  }
  out.resize(written);
  return out;
}

std::string image_to_base64(const ImageBuffer& img) {
  return base64_encode(io::encode_png(img));
}

ImageBuffer image_from_base64(std::string_view text) {
  return io::decode_image(base64_decode(text));
}

json pose_to_json(const PoseMap& p) {
  json persons = json::array();
  for (const auto& person : p.persons) {
    json kps = json::array();
    for (const auto& kp : person.keypoints) {
      if (kp.present) {
        kps.push_back({dequantize_coord(kp.qx), dequantize_coord(kp.qy), 1.0});
      } else {
        kps.push_back(nullptr);
      }
    }
    persons.push_back({{"keypoints", kps}});
  }
  return {{"persons", persons}};
}

PoseMap pose_from_json(const json& j) {
  PoseMap map;
  for (const auto& person_json : field(j, "persons")) {
    const json& kps = field(person_json, "keypoints");
    PosePerson person = PosePerson::blank();
    if (kps.size() != person.keypoints.size() && kps.size() != kBodyKeypoints) {
      throw Error(ErrorCode::kDecode,
                  "person has " + std::to_string(kps.size()) +
                      " keypoints, expected 18 or 88");
    }
    for (std::size_t k = 0; k < kps.size(); ++k) {
      const json& kp = kps[k];
      if (kp.is_null()) continue;
      if (!kp.is_array() || kp.size() < 2) {
        throw Error(ErrorCode::kDecode, "keypoint must be [x, y, confidence]");
      }
      const double conf = kp.size() >= 3 ? kp[2].get<double>() : 1.0;
      if (!(conf > kPresenceConfidence)) continue;
      auto& out = person.keypoints[k];
      out.present = true;
      out.qx = quantize_coord(std::clamp(kp[0].get<double>(), 0.0, 1.0));
      out.qy = quantize_coord(std::clamp(kp[1].get<double>(), 0.0, 1.0));
    }
    if (person.present_count() > 0) map.persons.push_back(std::move(person));
  }
  if (map.persons.size() > kMaxPersons) map.persons.resize(kMaxPersons);
  return map;
}

json edges_to_json(const EdgeMap& e) {
  return {{"grid", base64_encode(e.grid.pack_rows())},
          {"width", e.width()},
          {"height", e.height()}};
}

EdgeMap edges_from_json(const json& j, int image_width, int image_height,
                        std::uint8_t threshold) {
  EdgeMap e;
  e.threshold = threshold;
  const int w = j.value("width", image_width / e.downscale);
  const int h = j.value("height", image_height / e.downscale);
  e.grid = BitGrid::unpack_rows(w, h, base64_decode(field(j, "grid").get<std::string>()));
  check_edge_dimensions(e, image_width, image_height);
  return e;
}

json generate_request_to_json(const GenerationRequest& r) {
  const auto& c = r.conditions;
  json j = {{"prompt", c.prompt},
            {"guidance_scale", r.params.guidance_scale},
            {"steps", r.params.steps},
            {"condition_scale", r.params.condition_scale},
            {"seed", r.params.seed},
            {"width", r.width},
            {"height", r.height}};
  if (c.structure_image) {
    j["structure_image"] = image_to_base64(*c.structure_image);
    j["structure_kind"] = std::string(to_string(c.structure_kind));
  }
  if (c.texture_image) j["texture_image"] = image_to_base64(*c.texture_image);
  return j;
}

GenerationRequest generate_request_from_json(const json& j) {
  GenerationRequest r;
  r.conditions.prompt = field(j, "prompt").get<std::string>();
  r.params.guidance_scale = field(j, "guidance_scale").get<double>();
  r.params.steps = field(j, "steps").get<int>();
  r.params.condition_scale = field(j, "condition_scale").get<double>();
  r.params.seed = field(j, "seed").get<std::uint64_t>();
  r.width = field(j, "width").get<int>();
  r.height = field(j, "height").get<int>();
  if (j.contains("structure_image")) {
    r.conditions.structure_image =
        image_from_base64(j.at("structure_image").get<std::string>());
    const std::string kind = j.value("structure_kind", "edge");
    r.conditions.structure_kind =
        kind == "pose" ? StructureVariant::kPose : StructureVariant::kEdge;
  }
  if (j.contains("texture_image")) {
    r.conditions.texture_image =
        image_from_base64(j.at("texture_image").get<std::string>());
  }
  return r;
}

MetricValues metrics_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::kBackend, "metrics response is not an object");
  return {optional_number(j, "FID"), optional_number(j, "ClipSIM"),
          optional_number(j, "DISTS"), optional_number(j, "NIQE")};
}

}  // namespace lcmc::wire
