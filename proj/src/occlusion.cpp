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

#include "flowgen/occlusion.hpp"

#include <cmath>

#include "flowgen/error.hpp"

namespace flowgen {

BinaryMask binarize_alpha(const ImageBuffer& alpha, double threshold) {
  if (alpha.channels != 1)
    throw ShapeError("binarize_alpha: alpha must be single-channel");
  BinaryMask out(alpha.width, alpha.height);
  for (size_t i = 0; i < out.data.size(); ++i)
    out.data[i] = alpha.data[i] >= threshold ? 1 : 0;
  return out;
}

BinaryMask nonvisible_region(size_t i, const std::vector<BinaryMask>& alphas) {
  const BinaryMask& self = alphas.at(i);
  BinaryMask higher(self.width, self.height);
  for (size_t k = i + 1; k < alphas.size(); ++k)
    higher = BinaryMask::set_union(higher, alphas[k]);
  return BinaryMask::set_intersection(self, higher);
}

BinaryMask occlusion_for_layer(const BinaryMask& nonvisible_target,
                               const BinaryMask& nonvisible_reference,
                               const FlowField& layer_flow) {
  ImageBuffer vt(nonvisible_target.width, nonvisible_target.height, 1);
  for (size_t i = 0; i < vt.data.size(); ++i)
    vt.data[i] = static_cast<float>(nonvisible_target.data[i]);
  const ImageBuffer warped = inverse_warp_mask(vt, layer_flow, 0.4);

  BinaryMask out(nonvisible_target.width, nonvisible_target.height);
  for (size_t i = 0; i < out.data.size(); ++i) {
    const uint8_t w = warped.data[i] >= 0.5f ? 1 : 0;
    out.data[i] = w > nonvisible_reference.data[i] ? 1 : 0;
  }
  return out;
}

namespace {

struct SceneMasks {
  std::vector<BinaryMask> alpha_t;
  std::vector<BinaryMask> alpha_r;
};

SceneMasks binarized_alphas(const Scene& scene, const GenerationConfig& cfg) {
  SceneMasks masks;
  for (size_t i = 0; i < scene.layers.size(); ++i) {
    masks.alpha_t.push_back(
        binarize_alpha(scene.layers[i].alpha_t, cfg.alpha_threshold));
    masks.alpha_r.push_back(
        binarize_alpha(warped_reference_alpha(scene, i), cfg.alpha_threshold));
  }
  return masks;
}

}  // namespace

BinaryMask combined_occlusion(const Scene& scene, const GenerationConfig& cfg) {
  if (scene.layers.empty()) throw ShapeError("scene has no layers");
  const SceneMasks masks = binarized_alphas(scene, cfg);
  const int w = scene.canvas.width, h = scene.canvas.height;
  const size_t n = scene.layers.size();

  // Suffix unions: above[i] covers every layer strictly higher than i - 1,
  // so the per-layer non-visible regions come out in O(n) canvas passes.
  std::vector<BinaryMask> above_t(n + 1, BinaryMask(w, h));
  std::vector<BinaryMask> above_r(n + 1, BinaryMask(w, h));
  for (size_t i = n; i-- > 0;) {
    above_t[i] = BinaryMask::set_union(above_t[i + 1], masks.alpha_t[i]);
    above_r[i] = BinaryMask::set_union(above_r[i + 1], masks.alpha_r[i]);
  }

  BinaryMask combined(w, h);
  ImageBuffer vt_float(w, h, 1);
  for (size_t i = 0; i < n; ++i) {
    const BinaryMask vt =
        BinaryMask::set_intersection(masks.alpha_t[i], above_t[i + 1]);
    const BinaryMask vr =
        BinaryMask::set_intersection(masks.alpha_r[i], above_r[i + 1]);
    for (size_t p = 0; p < vt.data.size(); ++p)
      vt_float.data[p] = static_cast<float>(vt.data[p]);

    // The warped non-visible region can only land inside the layer's
    // reference box (the whole canvas for the background or hand-built
    // layers).
    IntRect box = scene.layers[i].ref_box;
    if (box.degenerate()) box = IntRect{0, 0, w, h};
    const FlowField& flow = scene.layers[i].flow;
    for (int y = box.y0; y < box.y1; ++y)
      for (int x = box.x0; x < box.x1; ++x) {
        if (vr.at(x, y)) continue;
        const float warped =
            bilinear_sample(vt_float, x + flow.u(x, y), y + flow.v(x, y), 0,
                            BorderPolicy::Zero);
        if (warped >= 0.4f) combined.at(x, y) = 1;
      }
  }
  return combined;
}

BinaryMask oracle_occlusion(const Scene& scene, const GenerationConfig& cfg,
                            bool include_out_of_bounds) {
  if (scene.layers.empty()) throw ShapeError("scene has no layers");
  const SceneMasks masks = binarized_alphas(scene, cfg);
  const int w = scene.canvas.width, h = scene.canvas.height;
  BinaryMask out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      // Topmost layer visible at x in the reference frame (background is
      // present everywhere).
      size_t top = 0;
      for (size_t i = scene.layers.size(); i-- > 1;) {
        if (masks.alpha_r[i].at(x, y)) {
          top = i;
          break;
        }
      }
      const Vec2 mapped = scene.layers[top].transform.apply(
          {static_cast<double>(x), static_cast<double>(y)});
      const int tx = static_cast<int>(std::lround(mapped.x));
      const int ty = static_cast<int>(std::lround(mapped.y));
      if (tx < 0 || tx >= w || ty < 0 || ty >= h) {
        if (include_out_of_bounds) out.at(x, y) = 1;
        continue;
      }
      for (size_t k = top + 1; k < scene.layers.size(); ++k) {
        if (masks.alpha_t[k].at(tx, ty)) {
          out.at(x, y) = 1;
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace flowgen
