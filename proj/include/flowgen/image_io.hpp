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

#include <cstdint>
#include <filesystem>
#include <vector>

#include "flowgen/image.hpp"

namespace flowgen {

/// Decode an 8-bit PNG/JPEG into [0,1] floats. `channels` must be 1, 3 or 4;
/// the decoded image is converted to that layout (RGB order).
ImageBuffer read_image(const std::filesystem::path& path, int channels);

/// Quantize to 8-bit (round-half-to-even) and write as PNG (or JPEG by
/// extension). Channel order in the buffer is RGB(A).
void write_image_png(const ImageBuffer& img, const std::filesystem::path& path);

/// 16-bit 3-channel PNG, values passed through untouched (RGB order).
void write_png16(const std::vector<uint16_t>& rgb, int width, int height,
                 const std::filesystem::path& path);
std::vector<uint16_t> read_png16(const std::filesystem::path& path, int& width,
                                 int& height);

void write_mask_png(const BinaryMask& mask, const std::filesystem::path& path);
BinaryMask read_mask_png(const std::filesystem::path& path);

/// Round-half-to-even quantization of a [0,1] float to [0,255].
uint8_t quantize8(float v);

}  // namespace flowgen
