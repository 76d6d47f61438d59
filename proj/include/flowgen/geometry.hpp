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

#include <array>

#include "flowgen/image.hpp"

namespace flowgen {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Sampled motion coefficients: scale, then rotate about the pivot, then
/// translate. Pixel coordinates use integer pixel centers, origin top-left,
/// y pointing down.
struct AffineParams {
  Vec2 translation;        // pixels
  double rotation = 0.0;   // radians
  double scale = 1.0;      // > 0
  Vec2 pivot;              // transform center, pixels

  void validate() const;   // throws ParameterError on non-finite / scale <= 0
};

/// 3x3 homogeneous matrix, row-major; bottom row is exactly [0, 0, 1].
struct AffineTransform {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  Vec2 apply(Vec2 p) const {
    return {m[0] * p.x + m[1] * p.y + m[2],
            m[3] * p.x + m[4] * p.y + m[5]};
  }
  double det2x2() const { return m[0] * m[4] - m[1] * m[3]; }
  AffineTransform inverse() const;  // throws ParameterError if singular
};

/// translate . rotate . scale about params.pivot.
AffineTransform affine_from_params(const AffineParams& p);

/// f(x) = A.x - x evaluated at every integer pixel center.
FlowField flow_from_affine(const AffineTransform& a, int width, int height);

enum class BorderPolicy { ClampToEdge, Zero };

/// Bilinear sample of one channel at continuous position (x, y).
/// Out-of-range taps clamp to the edge or contribute zero.
float bilinear_sample(const ImageBuffer& img, double x, double y, int channel,
                      BorderPolicy border);

/// output(x) = bilinear_sample(target, x + flow(x)). All channels.
ImageBuffer inverse_warp_image(const ImageBuffer& target, const FlowField& flow,
                               BorderPolicy border);

/// Bilinear inverse warp with zero border, then re-binarize at `threshold`.
ImageBuffer inverse_warp_mask(const ImageBuffer& mask, const FlowField& flow,
                              double threshold);

}  // namespace flowgen
