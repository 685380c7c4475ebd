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

#include <arpa/inet.h>
#include <doctest.h>
#include <httplib.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <atomic>
#include <thread>

#include "fixtures.hpp"
#include "lcmc/error.hpp"
#include "lcmc/eval.hpp"
#include "lcmc/http_backend.hpp"
#include "lcmc/image_io.hpp"
#include "lcmc/wire.hpp"
#include "oracles.hpp"

using namespace lcmc;
using nlohmann::json;

namespace {

// In-process stand-in for the model service.
class MockService {
 public:
  MockService() {
    server_.Post("/caption", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      const json body = json::parse(req.body);
      const ImageBuffer img = wire::image_from_base64(body.at("image").get<std::string>());
      reply(res, {{"text", "an image of " + std::to_string(img.width()) + "x" +
                               std::to_string(img.height())}});
    });
    server_.Post("/edges", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      const json body = json::parse(req.body);
      last_threshold = body.at("threshold").get<int>();
      const ImageBuffer img = wire::image_from_base64(body.at("image").get<std::string>());
      EdgeMap e;
      e.grid = BitGrid(img.width() / 2, img.height() / 2);
      e.grid.set(1, 2, true);
      reply(res, wire::edges_to_json(e));
    });
    server_.Post("/pose", [this](const httplib::Request&, httplib::Response& res) {
      ++hits;
      reply(res, wire::pose_to_json(fixtures::reference_pose()));
    });
    server_.Post("/generate", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      const GenerationRequest r = wire::generate_request_from_json(json::parse(req.body));
      last_prompt = r.conditions.prompt;
      last_seed = r.params.seed;
      had_structure = r.conditions.structure_image.has_value();
      reply(res, {{"image", wire::image_to_base64(ImageBuffer(r.width, r.height, Rgb{9, 8, 7}))}});
    });
    server_.Post("/metrics", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits;
      const json body = json::parse(req.body);
      metric_pairs = static_cast<int>(body.at("reference").size());
      reply(res, {{"FID", 12.5}, {"ClipSIM", 0.3}, {"DISTS", nullptr}, {"NIQE", 4.0}});
    });
    server_.Post("/broken", [this](const httplib::Request&, httplib::Response& res) {
      ++hits;
      res.status = 503;
      res.set_content("busy", "text/plain");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~MockService() {
    server_.stop();
    thread_.join();
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

  std::atomic<int> hits{0};
  int last_threshold = -1;
  std::string last_prompt;
  std::uint64_t last_seed = 0;
  bool had_structure = false;
  int metric_pairs = 0;

 private:
  static void reply(httplib::Response& res, const json& j) {
    res.set_content(j.dump(), "application/json");
  }

  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

HttpBackend client(const std::string& url, int retries = 0) {
  HttpBackendOptions o;
  o.base_url = url;
  o.timeout = std::chrono::seconds(10);
  o.max_retries = retries;
  o.backoff = std::chrono::milliseconds(5);
  return HttpBackend(o);
}

// A port that was free a moment ago; connecting to it is refused.
int unused_port() {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  ::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr);
  socklen_t len = sizeof addr;
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  ::close(fd);
  return ntohs(addr.sin_port);
}

}  // namespace

TEST_CASE("wire helpers") {
  CHECK(wire::base64_encode(as_bytes("hello")) == "aGVsbG8=");
  CHECK(wire::base64_decode("aGVsbG8=") == oracle::bytes_of("hello"));
  const ImageBuffer img = fixtures::corpus_image(1);
  CHECK(wire::image_from_base64(wire::image_to_base64(img)) == img);

  const PoseMap p = fixtures::reference_pose();
  CHECK(wire::pose_from_json(wire::pose_to_json(p)) == p);

  // 18-keypoint persons are padded with absent face points; low confidence drops a point.
  json body18 = {{"persons", json::array()}};
  json kps = json::array();
  for (int k = 0; k < 18; ++k) kps.push_back(json::array({0.5, 0.25, k == 3 ? 0.05 : 0.9}));
  kps[4] = nullptr;
  body18["persons"].push_back({{"keypoints", kps}});
  const PoseMap p18 = wire::pose_from_json(body18);
  REQUIRE(p18.persons.size() == 1);
  CHECK(p18.persons[0].keypoints.size() == 88);
  CHECK(p18.persons[0].keypoints[0] == PoseKeypoint{true, 50, 25});
  CHECK_FALSE(p18.persons[0].keypoints[3].present);
  CHECK_FALSE(p18.persons[0].keypoints[4].present);
  CHECK_FALSE(p18.persons[0].keypoints[20].present);

  EdgeMap e;
  e.grid = BitGrid(20, 10);
  e.grid.set(19, 9, true);
  CHECK(wire::edges_from_json(wire::edges_to_json(e), 40, 20, 50) == e);

  const wire::MetricValues m = wire::metrics_from_json({{"FID", 1.0}, {"DISTS", nullptr}});
  CHECK(*m.fid == 1.0);
  CHECK_FALSE(m.dists);
  CHECK_FALSE(m.niqe);

  GenerationRequest r;
  r.conditions.prompt = "p";
  r.conditions.structure_image = ImageBuffer(64, 64, Rgb{255, 255, 255});
  r.conditions.structure_kind = StructureVariant::kPose;
  r.params.seed = 123456789012345ULL;
  r.width = 64;
  r.height = 64;
  const GenerationRequest back = wire::generate_request_from_json(wire::generate_request_to_json(r));
  CHECK(back.conditions == r.conditions);
  CHECK(back.params == r.params);
  CHECK(back.width == 64);
}

TEST_CASE("backend endpoints against a mock service") {
  MockService svc;
  HttpBackend be = client(svc.url());
  const ImageBuffer img(64, 48, Rgb{5, 5, 5});

  CHECK(be.caption(img) == "an image of 64x48");

  const EdgeMap e = be.edges(img, 77);
  CHECK(svc.last_threshold == 77);
  CHECK(e.width() == 32);
  CHECK(e.threshold == 77);
  CHECK(e.grid.count() == 1);
  CHECK(e.grid.get(1, 2));

  CHECK(be.pose(img) == fixtures::reference_pose());

  GenerationRequest r;
  r.conditions.prompt = "a cat";
  r.conditions.structure_image = ImageBuffer(64, 64);
  r.conditions.structure_kind = StructureVariant::kEdge;
  r.params.seed = 7;
  r.width = 64;
  r.height = 64;
  CHECK(be.generate(r) == ImageBuffer(64, 64, Rgb{9, 8, 7}));
  CHECK(svc.last_prompt == "a cat");
  CHECK(svc.last_seed == 7);
  CHECK(svc.had_structure);

  const wire::MetricValues m = be.metrics({img, img}, {img, img}, {"a", "b"});
  CHECK(svc.metric_pairs == 2);
  CHECK(*m.fid == 12.5);
  CHECK(*m.clipsim == 0.3);
  CHECK_FALSE(m.dists);
  CHECK(*m.niqe == 4.0);
}

TEST_CASE("HTTP error statuses are not retried") {
  MockService svc;
  HttpBackend be = client(svc.url(), 3);
  try {
    be.post("/broken", json::object());
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBackend);
    CHECK(std::string(e.what()).find("503") != std::string::npos);
  }
  CHECK(svc.hits == 1);
}

TEST_CASE("unreachable backend fails after retries") {
  HttpBackend be = client("http://127.0.0.1:" + std::to_string(unused_port()), 2);
  const auto start = std::chrono::steady_clock::now();
  try {
    be.caption(ImageBuffer(64, 64));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBackend);
  }
  // Two backoffs of 5 ms and 10 ms.
  CHECK(std::chrono::steady_clock::now() - start >= std::chrono::milliseconds(15));
  for (const char* bad : {"", "not a url", "https://example.com", "http://host:80/path"}) {
    CHECK_THROWS_AS(client(bad), Error);
  }
}

TEST_CASE("concurrent calls share one client safely") {
  MockService svc;
  HttpBackend be = client(svc.url());
  std::vector<std::thread> threads;
  std::atomic<int> ok{0};
  for (int i = 0; i < 6; ++i) {
    threads.emplace_back([&] {
      if (be.caption(ImageBuffer(64, 64)) == "an image of 64x64") ++ok;
    });
  }
  for (auto& t : threads) t.join();
  CHECK(ok == 6);
}

TEST_CASE("base64 padding and malformed text") {
  for (std::size_t n = 0; n < 10; ++n) {
    const Bytes b(n, static_cast<std::uint8_t>(0xA5));
    REQUIRE(wire::base64_decode(wire::base64_encode(b)) == b);
  }
  CHECK(wire::base64_decode("") == Bytes{});
  CHECK_THROWS_AS(wire::base64_decode("aGVsbG8"), Error);  // padding is required
  CHECK_THROWS_AS(wire::base64_decode("aGVs*G8="), Error);
  CHECK_THROWS_AS(wire::base64_decode("a==="), Error);
}

TEST_CASE("eval with metrics goes through the backend") {
  MockService svc;
  const auto dir = std::filesystem::temp_directory_path() / "lcmc-eval-metrics";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  io::write_image(dir / "a.png", ImageBuffer(64, 64, Rgb{10, 20, 30}));
  io::write_image(dir / "b.png", ImageBuffer(64, 64, Rgb{200, 20, 30}));

  eval::EvalConfig config;
  config.backend_url = svc.url();
  config.metrics = true;
  config.jobs = 2;
  const eval::EvalResult r = eval::run_eval(dir, config);
  std::filesystem::remove_all(dir);

  REQUIRE(r.failures.empty());
  REQUIRE(r.records.size() == 6);
  // The mock reports the reference pose, which covers well over 40%.
  CHECK(r.variant_counts.at("pose") == 2);
  for (const auto& rec : r.records) {
    REQUIRE(rec.metrics.fid);
    CHECK(*rec.metrics.fid == 12.5);
    CHECK_FALSE(rec.metrics.dists);
  }
  REQUIRE(r.set_metrics.size() == 3);
  CHECK(svc.metric_pairs == 2);  // the last call was a set-level one

  std::ostringstream csv;
  eval::write_csv(csv, r.records);
  CHECK(csv.str().find(",12.5,0.3,,4") != std::string::npos);
}
