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

#include "flowgen/flow_io.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "flowgen/config.hpp"
#include "flowgen/error.hpp"
#include "flowgen/image_io.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace flowgen {

namespace {

constexpr float kFloTag = 202021.25f;

}  // namespace

void write_flo(const FlowField& flow, const fs::path& path) {
  for (float v : flow.data)
    if (!std::isfinite(v)) throw ParameterError("write_flo: non-finite flow");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path.string());
  const int32_t w = flow.width, h = flow.height;
  out.write(reinterpret_cast<const char*>(&kFloTag), 4);
  out.write(reinterpret_cast<const char*>(&w), 4);
  out.write(reinterpret_cast<const char*>(&h), 4);
  out.write(reinterpret_cast<const char*>(flow.data.data()),
            static_cast<std::streamsize>(flow.data.size() * sizeof(float)));
  if (!out) throw Error("short write: " + path.string());
}

FlowField read_flo(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open: " + path.string());
  float tag = 0.0f;
  int32_t w = 0, h = 0;
  if (!in.read(reinterpret_cast<char*>(&tag), 4) ||
      !in.read(reinterpret_cast<char*>(&w), 4) ||
      !in.read(reinterpret_cast<char*>(&h), 4))
    throw FormatError("truncated .flo header: " + path.string());
  if (tag != kFloTag)
    throw FormatError("bad .flo tag in " + path.string());
  if (w <= 0 || h <= 0)
    throw FormatError("nonpositive .flo dimensions in " + path.string());
  FlowField flow(w, h);
  if (!in.read(reinterpret_cast<char*>(flow.data.data()),
               static_cast<std::streamsize>(flow.data.size() * sizeof(float))))
    throw FormatError("truncated .flo payload: " + path.string());
  return flow;
}

void write_kitti_flow(const FlowField& flow, const BinaryMask& valid,
                      const fs::path& path) {
  if (flow.width != valid.width || flow.height != valid.height)
    throw ShapeError("write_kitti_flow: flow and valid dims differ");
  size_t overflow = 0;
  std::vector<uint16_t> rgb(static_cast<size_t>(flow.width) * flow.height * 3);
  for (int y = 0; y < flow.height; ++y)
    for (int x = 0; x < flow.width; ++x) {
      const double eu = flow.u(x, y) * 64.0 + 32768.0;
      const double ev = flow.v(x, y) * 64.0 + 32768.0;
      if (eu < 0.0 || eu > 65535.0 || ev < 0.0 || ev > 65535.0) {
        ++overflow;
        continue;
      }
      uint16_t* px = rgb.data() + (static_cast<size_t>(y) * flow.width + x) * 3;
      px[0] = static_cast<uint16_t>(std::lround(eu));
      px[1] = static_cast<uint16_t>(std::lround(ev));
      px[2] = valid.at(x, y) ? 1 : 0;
    }
  if (overflow > 0)
    throw ParameterError("write_kitti_flow: " + std::to_string(overflow) +
                         " pixels exceed the uint16 range (|flow| >= 512 px)");
  write_png16(rgb, flow.width, flow.height, path);
}

void read_kitti_flow(const fs::path& path, FlowField& flow, BinaryMask& valid) {
  int w = 0, h = 0;
  const std::vector<uint16_t> rgb = read_png16(path, w, h);
  flow = FlowField(w, h);
  valid = BinaryMask(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const uint16_t* px = rgb.data() + (static_cast<size_t>(y) * w + x) * 3;
      flow.u(x, y) = static_cast<float>((px[0] - 32768.0) / 64.0);
      flow.v(x, y) = static_cast<float>((px[1] - 32768.0) / 64.0);
      valid.at(x, y) = px[2] ? 1 : 0;
    }
}

std::vector<std::string> write_sample(const Sample& sample, const fs::path& dir,
                                      const SampleOutputOptions& options) {
  fs::create_directories(dir);
  std::vector<std::string> files;
  write_image_png(sample.frame_a, dir / "frame_a.png");
  files.push_back("frame_a.png");
  write_image_png(sample.frame_b, dir / "frame_b.png");
  files.push_back("frame_b.png");
  write_flo(sample.flow, dir / "flow.flo");
  files.push_back("flow.flo");
  write_mask_png(sample.occlusion, dir / "occ.png");
  files.push_back("occ.png");
  if (options.kitti) {
    BinaryMask all_valid(sample.flow.width, sample.flow.height, 1);
    write_kitti_flow(sample.flow, all_valid, dir / "flow_kitti.png");
    files.push_back("flow_kitti.png");
  }
  if (options.oob_mask) {
    const BinaryMask extended =
        BinaryMask::set_union(sample.occlusion, sample.out_of_bounds);
    write_mask_png(extended, dir / "occ_oob.png");
    files.push_back("occ_oob.png");
  }
  return files;
}

namespace {

json digests_to_json(const std::vector<CatalogEntry>& entries) {
  json arr = json::array();
  for (const auto& e : entries)
    arr.push_back({{"path", e.rel_path}, {"sha256", e.sha256}});
  return arr;
}

std::vector<CatalogEntry> digests_from_json(const json& arr) {
  std::vector<CatalogEntry> out;
  for (const auto& e : arr) {
    CatalogEntry entry;
    entry.rel_path = e.at("path").get<std::string>();
    entry.sha256 = e.at("sha256").get<std::string>();
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace

void write_manifest(const DatasetManifest& m, const fs::path& path) {
  json samples = json::array();
  for (const auto& s : m.samples)
    samples.push_back({{"dir", s.rel_dir}, {"files", s.files}});
  const json j{
      {"format_version", m.format_version},
      {"master_seed", m.master_seed},
      {"config", config_to_json(m.config)},
      {"config_hash", m.config_hash},
      {"catalog",
       {{"backgrounds", digests_to_json(m.background_digests)},
        {"segments", digests_to_json(m.segment_digests)}}},
      {"options", {{"kitti", m.options.kitti}, {"oob_mask", m.options.oob_mask}}},
      {"sample_count", m.sample_count},
      {"samples", samples}};
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path.string());
  out << j.dump(2) << "\n";
}

DatasetManifest read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open manifest: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw FormatError("manifest is not valid JSON: " + std::string(e.what()));
  }
  DatasetManifest m;
  try {
    m.format_version = j.at("format_version").get<std::string>();
    m.master_seed = j.at("master_seed").get<uint64_t>();
    m.config = parse_config(j.at("config"));
    m.config_hash = j.at("config_hash").get<std::string>();
    m.background_digests = digests_from_json(j.at("catalog").at("backgrounds"));
    m.segment_digests = digests_from_json(j.at("catalog").at("segments"));
    m.options.kitti = j.at("options").at("kitti").get<bool>();
    m.options.oob_mask = j.at("options").at("oob_mask").get<bool>();
    m.sample_count = j.at("sample_count").get<uint64_t>();
    for (const auto& s : j.at("samples")) {
      ManifestEntry e;
      e.rel_dir = s.at("dir").get<std::string>();
      e.files = s.at("files").get<std::vector<std::string>>();
      m.samples.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw FormatError("malformed manifest " + path.string() + ": " + e.what());
  }
  return m;
}

}  // namespace flowgen
