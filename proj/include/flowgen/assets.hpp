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

#include "flowgen/geometry.hpp"
#include "flowgen/sampling.hpp"

namespace flowgen {

/// A trimmed RGBA foreground cutout. Alpha is straight (not premultiplied);
/// the bounding box is tight and the centroid is alpha-weighted, in trimmed
/// coordinates.
struct Segment {
  ImageBuffer image;  // 4 channels
  Vec2 centroid;
  std::string source_id;
};

struct CatalogEntry {
  std::string rel_path;  // forward-slash relative path, lexicographic key
  std::filesystem::path abs_path;
  std::string sha256;  // hex digest of the file bytes
};

struct AssetCatalog {
  std::vector<CatalogEntry> backgrounds;
  std::vector<CatalogEntry> segments;
};

inline constexpr Dims kDefaultCanvas{712, 584};

/// Decode, bilinear-resize to exactly `target` (aspect ratio is not
/// preserved) and scale to [0,1].
ImageBuffer load_background(const std::filesystem::path& path,
                            Dims target = kDefaultCanvas);

/// Plain bilinear resize with half-pixel center alignment.
ImageBuffer resize_bilinear(const ImageBuffer& src, Dims target);

Segment load_segment(const std::filesystem::path& path);

/// Trim + centroid on an in-memory RGBA buffer (also the load_segment core).
Segment make_segment(const ImageBuffer& rgba, std::string source_id);

/// Gaussian blur of the RGB channels; alpha untouched. Kernel must be odd.
/// sigma = 0.3 * ((k - 1) / 2 - 1) + 0.8.
Segment blur_segment(const Segment& s, int kernel);

/// Recursive scan of both directories, entries ordered lexicographically by
/// relative path, SHA-256 digests recorded. Every file must be decodable.
AssetCatalog build_catalog(const std::filesystem::path& bg_dir,
                           const std::filesystem::path& seg_dir);

std::string sha256_file(const std::filesystem::path& path);
std::string sha256_bytes(const void* data, size_t size);

/// Write a small procedural corpus (smooth noise backgrounds, hard-edged
/// textured RGBA shapes) under dir/backgrounds and dir/segments. Used by the
/// test and benchmark suites, and handy for trying the CLI without real
/// corpora.
void make_demo_assets(const std::filesystem::path& dir, uint64_t seed,
                      int background_count, int segment_count);

}  // namespace flowgen
