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

#include <cassert>
#include <cstdint>
#include <vector>

namespace flowgen {

/// Dense float raster, values in [0,1], row-major, interleaved channels.
/// Channels: 1 (mask/alpha), 3 (RGB) or 4 (RGBA, straight alpha).
struct ImageBuffer {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<float> data;

  ImageBuffer() = default;
  ImageBuffer(int w, int h, int c, float fill = 0.0f)
      : width(w), height(h), channels(c),
        data(static_cast<size_t>(w) * h * c, fill) {}

  float& at(int x, int y, int c = 0) {
    assert(x >= 0 && x < width && y >= 0 && y < height && c < channels);
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  float at(int x, int y, int c = 0) const {
    assert(x >= 0 && x < width && y >= 0 && y < height && c < channels);
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }

  size_t pixel_count() const { return static_cast<size_t>(width) * height; }
  bool same_dims(const ImageBuffer& o) const {
    return width == o.width && height == o.height;
  }
};

/// Per-pixel {0,1} raster used for alpha supports, visibility and occlusion.
struct BinaryMask {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> data;

  BinaryMask() = default;
  BinaryMask(int w, int h, uint8_t fill = 0)
      : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

  uint8_t& at(int x, int y) {
    assert(x >= 0 && x < width && y >= 0 && y < height);
    return data[static_cast<size_t>(y) * width + x];
  }
  uint8_t at(int x, int y) const {
    assert(x >= 0 && x < width && y >= 0 && y < height);
    return data[static_cast<size_t>(y) * width + x];
  }

  size_t count() const;

  /// Set algebra on {0,1} rasters: union = max, intersection = min,
  /// difference = max(a - b, 0).
  static BinaryMask set_union(const BinaryMask& a, const BinaryMask& b);
  static BinaryMask set_intersection(const BinaryMask& a, const BinaryMask& b);
  static BinaryMask set_difference(const BinaryMask& a, const BinaryMask& b);
};

/// Dense per-pixel displacement map in pixels, defined on the reference
/// frame. Stored as float32 pairs (u, v), row-major.
struct FlowField {
  int width = 0;
  int height = 0;
  std::vector<float> data;  // 2 floats per pixel

  FlowField() = default;
  FlowField(int w, int h)
      : width(w), height(h), data(static_cast<size_t>(w) * h * 2, 0.0f) {}

  float& u(int x, int y) { return data[(static_cast<size_t>(y) * width + x) * 2]; }
  float& v(int x, int y) { return data[(static_cast<size_t>(y) * width + x) * 2 + 1]; }
  float u(int x, int y) const { return data[(static_cast<size_t>(y) * width + x) * 2]; }
  float v(int x, int y) const { return data[(static_cast<size_t>(y) * width + x) * 2 + 1]; }

  size_t pixel_count() const { return static_cast<size_t>(width) * height; }
};

}  // namespace flowgen
