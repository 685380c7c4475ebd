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

#include "lcmc/eval.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "lcmc/error.hpp"
#include "lcmc/http_backend.hpp"
#include "lcmc/image_io.hpp"

namespace lcmc::eval {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string lower_ext(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

struct ImageOutcome {
  std::vector<RDRecord> records;
  StructureVariant variant = StructureVariant::kNone;
  std::vector<ImageBuffer> reconstructions;  // per level, metrics runs only
  ImageBuffer original;
  std::string caption;
};

ImageOutcome process(const fs::path& path, const EvalConfig& config,
                     HttpBackend* backend) {
  ImageOutcome out;
  out.original = io::read_image(path);
  EncodeOptions options;
  options.variant = config.variant;

  LayeredBitstream bs;
  if (backend != nullptr) {
    bs = encode_image(out.original, *backend, options);
  } else {
    OfflineExtractors extractors = sidecar_extractors(path);
    bs = encode_image(out.original, extractors, options);
  }
  out.variant = bs.header.variant;
  const Bytes full = serialize(bs);
  const std::string id = path.stem().string();
  for (int level = 1; level <= 3; ++level) {
    const Bytes prefix = truncate_to_layer(full, level);
    RDRecord r;
    r.image_id = id;
    r.level = level;
    r.bytes = prefix.size();
    r.bpp = bits_per_pixel(prefix.size(), bs.header);
    out.records.push_back(r);
  }

  if (config.metrics && backend != nullptr) {
    for (int level = 1; level <= 3; ++level) {
      const LayeredPriors priors = decode_layers(bs, level);
      out.caption = priors.semantic.text;
      GeneratedImage g = reconstruct(priors, bs.header.width, bs.header.height,
                                     config.params, *backend);
      out.records[level - 1].metrics =
          backend->metrics({out.original}, {g.image}, {out.caption});
      out.reconstructions.push_back(std::move(g.image));
    }
  }
  return out;
}

void put_metric(std::ostream& out, const std::optional<double>& v) {
  out << ',';
  if (v) out << std::setprecision(10) << *v;
}

json metric_json(const wire::MetricValues& m) {
  auto v = [](const std::optional<double>& x) { return x ? json(*x) : json(nullptr); };
  return {{"FID", v(m.fid)}, {"ClipSIM", v(m.clipsim)}, {"DISTS", v(m.dists)},
          {"NIQE", v(m.niqe)}};
}

}  // namespace

std::vector<fs::path> list_images(const fs::path& corpus) {
  std::vector<fs::path> images;
  if (!fs::is_directory(corpus)) {
    throw Error(ErrorCode::kIo, corpus.string() + " is not a directory");
  }
  for (const auto& entry : fs::directory_iterator(corpus)) {
    if (!entry.is_regular_file()) continue;
    const std::string ext = lower_ext(entry.path());
    if (ext == ".png" || ext == ".ppm") images.push_back(entry.path());
  }
  std::sort(images.begin(), images.end());
  return images;
}

OfflineExtractors sidecar_extractors(const fs::path& image) {
  std::string caption;
  fs::path text = image;
  text.replace_extension(".txt");
  if (fs::exists(text)) {
    const Bytes raw = io::read_file(text);
    caption.assign(raw.begin(), raw.end());
    while (!caption.empty() && (caption.back() == '\n' || caption.back() == '\r')) {
      caption.pop_back();
    }
  }
  std::optional<PoseMap> pose;
  fs::path pose_file = image;
  pose_file.replace_extension(".pose.json");
  if (fs::exists(pose_file)) {
    std::ifstream in(pose_file);
    pose = wire::pose_from_json(json::parse(in));
  }
  return OfflineExtractors(std::move(caption), std::move(pose));
}

EvalResult run_eval(const fs::path& corpus, const EvalConfig& config) {
  const std::vector<fs::path> images = list_images(corpus);
  EvalResult result;
  result.images = images.size();
  if (images.empty()) return result;

  std::unique_ptr<HttpBackend> backend;
  if (!config.backend_url.empty()) {
    HttpBackendOptions options;
    options.base_url = config.backend_url;
    options.max_in_flight = config.max_in_flight;
    backend = std::make_unique<HttpBackend>(options);
  }

  int jobs = config.jobs;
  if (jobs <= 0) {
    jobs = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, 8);
  }
  jobs = std::min<int>(jobs, static_cast<int>(images.size()));

  std::vector<std::optional<ImageOutcome>> outcomes(images.size());
  std::vector<std::string> errors(images.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < images.size(); i = next++) {
      try {
        outcomes[i] = process(images[i], config, backend.get());
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> threads;
  for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  std::map<int, std::vector<ImageBuffer>> refs, tests;
  std::map<int, std::vector<std::string>> captions;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!outcomes[i]) {
      result.failures[images[i].stem().string()] = errors[i];
      continue;
    }
    auto& o = *outcomes[i];
    ++result.variant_counts[std::string(to_string(o.variant))];
    for (auto& r : o.records) result.records.push_back(std::move(r));
    for (std::size_t level = 0; level < o.reconstructions.size(); ++level) {
      const int k = static_cast<int>(level) + 1;
      refs[k].push_back(o.original);
      tests[k].push_back(std::move(o.reconstructions[level]));
      captions[k].push_back(o.caption);
    }
  }
  std::sort(result.records.begin(), result.records.end(),
            [](const RDRecord& a, const RDRecord& b) {
              return std::tie(a.image_id, a.level) < std::tie(b.image_id, b.level);
            });
  if (backend && config.metrics) {
    for (const auto& [k, ref] : refs) {
      result.set_metrics[k] = backend->metrics(ref, tests[k], captions[k]);
    }
  }
  return result;
}

void write_csv(std::ostream& out, const std::vector<RDRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    std::ostringstream bpp;
    bpp << std::setprecision(10) << r.bpp;
    out << r.image_id << ',' << r.level << ',' << r.bytes << ',' << bpp.str();
    put_metric(out, r.metrics.fid);
    put_metric(out, r.metrics.clipsim);
    put_metric(out, r.metrics.dists);
    put_metric(out, r.metrics.niqe);
    out << '\n';
  }
}

json summary_json(const EvalResult& result) {
  json levels = json::object();
  for (int level = 1; level <= 3; ++level) {
    std::size_t count = 0;
    std::size_t bytes = 0;
    double bpp = 0.0;
    for (const auto& r : result.records) {
      if (r.level != level) continue;
      ++count;
      bytes += r.bytes;
      bpp += r.bpp;
    }
    json entry = {{"records", count},
                  {"total_bytes", bytes},
                  {"total_bpp", bpp},
                  {"mean_bpp", count ? json(bpp / static_cast<double>(count)) : json(nullptr)}};
    if (auto it = result.set_metrics.find(level); it != result.set_metrics.end()) {
      entry["set_metrics"] = metric_json(it->second);
    }
    levels[std::to_string(level)] = entry;
  }
  json failures = json::object();
  for (const auto& [id, why] : result.failures) failures[id] = why;
  return {{"images", result.images},
          {"encoded", result.images - result.failures.size()},
          {"records", result.records.size()},
          {"levels", levels},
          {"variant_counts", result.variant_counts},
          {"failures", failures}};
}

}  // namespace lcmc::eval
