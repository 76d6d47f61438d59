// Copyright (c) 2026, the flowgen authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "flowgen/generator.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <thread>

#include "flowgen/config.hpp"
#include "flowgen/error.hpp"
#include "flowgen/image_io.hpp"

namespace fs = std::filesystem;

namespace flowgen {

namespace {

std::string sample_dir_name(uint64_t index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%06llu", static_cast<unsigned long long>(index));
  return buf;
}

}  // namespace

DatasetManifest run_generation(const GenerationRun& run) {
  run.config.validate();
  if (run.sample_count < 1) throw ConfigError("sample_count must be >= 1");
  if (run.workers < 1) throw ConfigError("workers must be >= 1");

  const AssetCatalog catalog = build_catalog(run.asset_dir / "backgrounds",
                                             run.asset_dir / "segments");
  fs::create_directories(run.output_dir);

  std::vector<ManifestEntry> entries(run.sample_count);
  std::atomic<uint64_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const uint64_t i = next.fetch_add(1);
      if (i >= run.sample_count) return;
      try {
        const Sample sample = generate_sample(
            SampleSeed{run.master_seed, i}, catalog, run.config);
        const std::string dir = sample_dir_name(i);
        entries[i].rel_dir = dir;
        entries[i].files =
            write_sample(sample, run.output_dir / dir, run.options);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> threads;
  const int n = std::min<int>(run.workers, static_cast<int>(run.sample_count));
  for (int t = 0; t < n; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);

  DatasetManifest m;
  m.master_seed = run.master_seed;
  m.config = run.config;
  m.config_hash = config_hash(run.config);
  m.background_digests = catalog.backgrounds;
  m.segment_digests = catalog.segments;
  m.options = run.options;
  m.sample_count = run.sample_count;
  m.samples = std::move(entries);
  write_manifest(m, run.output_dir / "manifest.json");
  return m;
}

double photometric_error(const ImageBuffer& frame_a, const ImageBuffer& frame_b,
                         const FlowField& flow, const BinaryMask& occlusion) {
  const int w = flow.width, h = flow.height;

  // Pixels adjacent to a flow discontinuity (paste boundaries), dilated 1 px.
  // Within a single affine layer the flow changes by at most ~||A - I|| per
  // pixel (~0.2 px for the standard motion ranges), so 0.5 px separates
  // smooth variation from genuine layer boundaries.
  BinaryMask boundary(w, h);
  constexpr float kJump = 0.5f;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const float u0 = flow.u(x, y), v0 = flow.v(x, y);
      bool disc = false;
      if (x + 1 < w && (std::abs(flow.u(x + 1, y) - u0) > kJump ||
                        std::abs(flow.v(x + 1, y) - v0) > kJump))
        disc = true;
      if (y + 1 < h && (std::abs(flow.u(x, y + 1) - u0) > kJump ||
                        std::abs(flow.v(x, y + 1) - v0) > kJump))
        disc = true;
      if (disc) {
        for (int dy = -1; dy <= 2; ++dy)
          for (int dx = -1; dx <= 2; ++dx) {
            const int bx = x + dx, by = y + dy;
            if (bx >= 0 && bx < w && by >= 0 && by < h) boundary.at(bx, by) = 1;
          }
      }
    }

  double acc = 0.0;
  size_t n = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (occlusion.at(x, y) || boundary.at(x, y)) continue;
      const double sx = x + flow.u(x, y);
      const double sy = y + flow.v(x, y);
      if (sx < 0.0 || sx > w - 1 || sy < 0.0 || sy > h - 1) continue;
      for (int c = 0; c < frame_a.channels; ++c) {
        acc += std::abs(frame_a.at(x, y, c) -
                        bilinear_sample(frame_b, sx, sy, c, BorderPolicy::Zero));
      }
      n += frame_a.channels;
    }
  if (n == 0) return -1.0;
  return acc / static_cast<double>(n);
}

ValidationReport validate_dataset(const fs::path& dataset_dir) {
  ValidationReport report;
  const DatasetManifest manifest = read_manifest(dataset_dir / "manifest.json");

  for (const auto& entry : manifest.samples) {
    const fs::path dir = dataset_dir / entry.rel_dir;
    auto issue = [&](const std::string& check, const std::string& detail) {
      report.issues.push_back({entry.rel_dir, check, detail});
    };

    for (const auto& f : entry.files)
      if (!fs::exists(dir / f)) issue("files", "missing " + f);

    ImageBuffer frame_a, frame_b;
    FlowField flow;
    BinaryMask occ;
    bool loaded = true;
    try {
      frame_a = read_image(dir / "frame_a.png", 3);
      frame_b = read_image(dir / "frame_b.png", 3);
      flow = read_flo(dir / "flow.flo");
      occ = read_mask_png(dir / "occ.png");
    } catch (const Error& e) {
      issue("decode", e.what());
      loaded = false;
    }
    if (loaded) {
      if (flow.width != frame_a.width || flow.height != frame_a.height ||
          occ.width != frame_a.width || occ.height != frame_a.height ||
          !frame_a.same_dims(frame_b))
        issue("dims", "raster dimensions disagree");
      for (float v : flow.data)
        if (!std::isfinite(v)) {
          issue("flow", "non-finite flow value");
          break;
        }
      const double err = photometric_error(frame_a, frame_b, flow, occ);
      report.max_photometric_error =
          std::max(report.max_photometric_error, err);
      // Quantized 8-bit frames add up to ~0.002 on top of interpolation.
      if (err > 0.025)
        issue("photometric",
              "mean residual " + std::to_string(err) + " exceeds 0.025");
    }
    if (manifest.options.kitti) {
      try {
        FlowField kflow;
        BinaryMask kvalid;
        read_kitti_flow(dir / "flow_kitti.png", kflow, kvalid);
        if (loaded) {
          double max_dev = 0.0;
          for (int y = 0; y < flow.height; ++y)
            for (int x = 0; x < flow.width; ++x)
              if (kvalid.at(x, y))
                max_dev = std::max(
                    {max_dev, std::abs(kflow.u(x, y) - (double)flow.u(x, y)),
                     std::abs(kflow.v(x, y) - (double)flow.v(x, y))});
          if (max_dev > 1.0 / 128.0 + 1e-9)
            issue("kitti", "quantization deviation " + std::to_string(max_dev));
        }
      } catch (const Error& e) {
        issue("kitti", e.what());
      }
    }
    ++report.samples_checked;
  }
  return report;
}

}  // namespace flowgen
