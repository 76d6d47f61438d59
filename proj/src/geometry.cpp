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

#include "flowgen/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "flowgen/error.hpp"

namespace flowgen {

size_t BinaryMask::count() const {
  size_t n = 0;
  for (uint8_t v : data) n += v;
  return n;
}

BinaryMask BinaryMask::set_union(const BinaryMask& a, const BinaryMask& b) {
  BinaryMask out(a.width, a.height);
  for (size_t i = 0; i < out.data.size(); ++i)
    out.data[i] = std::max(a.data[i], b.data[i]);
  return out;
}

BinaryMask BinaryMask::set_intersection(const BinaryMask& a, const BinaryMask& b) {
  BinaryMask out(a.width, a.height);
  for (size_t i = 0; i < out.data.size(); ++i)
    out.data[i] = std::min(a.data[i], b.data[i]);
  return out;
}

BinaryMask BinaryMask::set_difference(const BinaryMask& a, const BinaryMask& b) {
  BinaryMask out(a.width, a.height);
  for (size_t i = 0; i < out.data.size(); ++i)
    out.data[i] = a.data[i] > b.data[i] ? 1 : 0;
  return out;
}

void AffineParams::validate() const {
  if (!std::isfinite(translation.x) || !std::isfinite(translation.y) ||
      !std::isfinite(rotation) || !std::isfinite(scale) ||
      !std::isfinite(pivot.x) || !std::isfinite(pivot.y))
    throw ParameterError("affine parameter is not finite");
  if (scale <= 0.0) throw ParameterError("affine scale must be > 0");
}

AffineTransform AffineTransform::inverse() const {
  const double d = det2x2();
  if (std::abs(d) <= 1e-9)
    throw ParameterError("affine transform is singular");
  AffineTransform out;
  out.m[0] = m[4] / d;
  out.m[1] = -m[1] / d;
  out.m[3] = -m[3] / d;
  out.m[4] = m[0] / d;
  out.m[2] = -(out.m[0] * m[2] + out.m[1] * m[5]);
  out.m[5] = -(out.m[3] * m[2] + out.m[4] * m[5]);
  return out;
}

AffineTransform affine_from_params(const AffineParams& p) {
  p.validate();
  const double c = std::cos(p.rotation) * p.scale;
  const double s = std::sin(p.rotation) * p.scale;
  // T(t) . C(pivot) . R . S . C(-pivot), collapsed.
  AffineTransform out;
  out.m[0] = c;
  out.m[1] = -s;
  out.m[3] = s;
  out.m[4] = c;
  out.m[2] = p.pivot.x - c * p.pivot.x + s * p.pivot.y + p.translation.x;
  out.m[5] = p.pivot.y - s * p.pivot.x - c * p.pivot.y + p.translation.y;
  return out;
}

FlowField flow_from_affine(const AffineTransform& a, int width, int height) {
  if (width < 1 || height < 1)
    throw ShapeError("flow_from_affine: dimensions must be >= 1");
  if (std::abs(a.det2x2()) <= 1e-9)
    throw ParameterError("flow_from_affine: transform is singular");
  FlowField f(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const Vec2 mapped = a.apply({static_cast<double>(x), static_cast<double>(y)});
      f.u(x, y) = static_cast<float>(mapped.x - x);
      f.v(x, y) = static_cast<float>(mapped.y - y);
    }
  }
  return f;
}

float bilinear_sample(const ImageBuffer& img, double x, double y, int channel,
                      BorderPolicy border) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const int x0 = static_cast<int>(fx);
  const int y0 = static_cast<int>(fy);
  const double wx = x - fx;
  const double wy = y - fy;

  auto tap = [&](int xi, int yi) -> double {
    if (border == BorderPolicy::ClampToEdge) {
      xi = std::clamp(xi, 0, img.width - 1);
      yi = std::clamp(yi, 0, img.height - 1);
      return img.at(xi, yi, channel);
    }
    if (xi < 0 || xi >= img.width || yi < 0 || yi >= img.height) return 0.0;
    return img.at(xi, yi, channel);
  };

  const double top = tap(x0, y0) * (1.0 - wx) + tap(x0 + 1, y0) * wx;
  const double bot = tap(x0, y0 + 1) * (1.0 - wx) + tap(x0 + 1, y0 + 1) * wx;
  return static_cast<float>(top * (1.0 - wy) + bot * wy);
}

ImageBuffer inverse_warp_image(const ImageBuffer& target, const FlowField& flow,
                               BorderPolicy border) {
  if (target.width != flow.width || target.height != flow.height)
    throw ShapeError("inverse_warp_image: image and flow dimensions differ");
  ImageBuffer out(target.width, target.height, target.channels);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      const double sx = x + flow.u(x, y);
      const double sy = y + flow.v(x, y);
      for (int c = 0; c < out.channels; ++c)
        out.at(x, y, c) = bilinear_sample(target, sx, sy, c, border);
    }
  }
  return out;
}

ImageBuffer inverse_warp_mask(const ImageBuffer& mask, const FlowField& flow,
                              double threshold) {
  if (mask.channels != 1)
    throw ShapeError("inverse_warp_mask: mask must be single-channel");
  if (threshold <= 0.0 || threshold >= 1.0)
    throw ParameterError("inverse_warp_mask: threshold must be in (0,1)");
  ImageBuffer warped = inverse_warp_image(mask, flow, BorderPolicy::Zero);
  for (float& v : warped.data) v = v >= threshold ? 1.0f : 0.0f;
  return warped;
}

}  // namespace flowgen
