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

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "flowgen/compositor.hpp"
#include "flowgen/image.hpp"

namespace flowgen {

/// Middlebury .flo: little-endian float tag 202021.25, int32 width, int32
/// height, row-major interleaved float32 (u, v). Lossless round-trip.
void write_flo(const FlowField& flow, const std::filesystem::path& path);
FlowField read_flo(const std::filesystem::path& path);

/// 16-bit 3-channel PNG: u, v stored as uint16 = flow * 64 + 2^15, third
/// channel 1 on valid pixels. Quantized round-trip, error <= 1/128 px.
void write_kitti_flow(const FlowField& flow, const BinaryMask& valid,
                      const std::filesystem::path& path);
void read_kitti_flow(const std::filesystem::path& path, FlowField& flow,
                     BinaryMask& valid);

struct SampleOutputOptions {
  bool kitti = false;
  bool oob_mask = false;
};

/// Writes frame_a.png, frame_b.png, flow.flo, occ.png (plus flow_kitti.png /
/// occ_oob.png when enabled) into `dir`. Returns the file names written.
std::vector<std::string> write_sample(const Sample& sample,
                                      const std::filesystem::path& dir,
                                      const SampleOutputOptions& options = {});

struct ManifestEntry {
  std::string rel_dir;
  std::vector<std::string> files;
};

struct DatasetManifest {
  std::string format_version = "1";
  uint64_t master_seed = 0;
  GenerationConfig config;
  std::string config_hash;
  std::vector<CatalogEntry> background_digests;
  std::vector<CatalogEntry> segment_digests;
  SampleOutputOptions options;
  uint64_t sample_count = 0;
  std::vector<ManifestEntry> samples;
};

void write_manifest(const DatasetManifest& m, const std::filesystem::path& path);
DatasetManifest read_manifest(const std::filesystem::path& path);

}  // namespace flowgen
