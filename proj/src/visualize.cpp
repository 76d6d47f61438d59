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

#include "flowgen/visualize.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace flowgen {

namespace {

void hsv_to_rgb(double h, double s, double v, float* rgb) {
  const double c = v * s;
  const double hp = h * 6.0;
  const double xx = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  if (hp < 1)      { r = c; g = xx; }
  else if (hp < 2) { r = xx; g = c; }
  else if (hp < 3) { g = c; b = xx; }
  else if (hp < 4) { g = xx; b = c; }
  else if (hp < 5) { r = xx; b = c; }
  else             { r = c; b = xx; }
  const double m = v - c;
  rgb[0] = static_cast<float>(r + m);
  rgb[1] = static_cast<float>(g + m);
  rgb[2] = static_cast<float>(b + m);
}

double percentile99_magnitude(const FlowField& flow) {
  std::vector<double> mags;
  mags.reserve(flow.pixel_count());
  for (int y = 0; y < flow.height; ++y)
    for (int x = 0; x < flow.width; ++x)
      mags.push_back(std::hypot(static_cast<double>(flow.u(x, y)),
                                static_cast<double>(flow.v(x, y))));
  const size_t k = static_cast<size_t>(0.99 * (mags.size() - 1));
  std::nth_element(mags.begin(), mags.begin() + k, mags.end());
  return mags[k];
}

}  // namespace

ImageBuffer flow_to_color(const FlowField& flow, double max_magnitude) {
  double norm = max_magnitude;
  if (norm <= 0.0) norm = percentile99_magnitude(flow);
  if (norm <= 1e-12) norm = 1.0;
  ImageBuffer out(flow.width, flow.height, 3);
  for (int y = 0; y < flow.height; ++y)
    for (int x = 0; x < flow.width; ++x) {
      const double u = flow.u(x, y), v = flow.v(x, y);
      const double mag = std::hypot(u, v);
      double angle = std::atan2(v, u);  // [-pi, pi]
      double hue = (angle + M_PI) / (2.0 * M_PI);
      if (hue >= 1.0) hue = 0.0;
      const double sat = std::clamp(mag / norm, 0.0, 1.0);
      hsv_to_rgb(hue, sat, 1.0, &out.at(x, y, 0));
    }
  return out;
}

ImageBuffer occlusion_overlay(const ImageBuffer& frame, const BinaryMask& occ) {
  ImageBuffer out = frame;
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x)
      if (occ.at(x, y)) {
        out.at(x, y, 0) = 0.6f * out.at(x, y, 0) + 0.4f;
        if (out.channels >= 3) {
          out.at(x, y, 1) *= 0.6f;
          out.at(x, y, 2) *= 0.6f;
        }
      }
  return out;
}

ImageBuffer histogram_chart(const MotionHistogram& hist, int width, int height) {
  ImageBuffer out(width, height, 3, 1.0f);
  double max_log = 0.0;
  for (uint64_t c : hist.counts)
    max_log = std::max(max_log, std::log10(1.0 + static_cast<double>(c)));
  if (max_log <= 0.0) max_log = 1.0;
  const int n = MotionHistogram::kBins;
  for (int i = 0; i < n; ++i) {
    const double frac =
        std::log10(1.0 + static_cast<double>(hist.counts[i])) / max_log;
    const int bar_h = static_cast<int>(frac * (height - 2));
    const int x0 = i * width / n;
    const int x1 = std::max(x0 + 1, (i + 1) * width / n);
    for (int x = x0; x < x1 && x < width; ++x)
      for (int y = height - 1 - bar_h; y < height; ++y) {
        out.at(x, y, 0) = 0.17f;
        out.at(x, y, 1) = 0.35f;
        out.at(x, y, 2) = 0.65f;
      }
  }
  return out;
}

}  // namespace flowgen
