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

#include "flowgen/compositor.hpp"

namespace flowgen::test {

inline Layer make_layer(int index, Dims canvas, const AffineParams& params) {
  Layer l;
  l.index = index;
  l.image = ImageBuffer(canvas.width, canvas.height, 3);
  l.alpha_t = ImageBuffer(canvas.width, canvas.height, 1,
                          index == 0 ? 1.0f : 0.0f);
  l.affine = params;
  l.transform = affine_from_params(params);
  l.flow = flow_from_affine(l.transform, canvas.width, canvas.height);
  return l;
}

/// Background plus rectangles: each entry is {x0, y0, x1, y1 (exclusive),
/// params}. Rectangle alphas are hard 0/1.
struct RectSpec {
  int x0, y0, x1, y1;
  AffineParams params;
};

inline Scene make_rect_scene(Dims canvas, const AffineParams& bg_params,
                             const std::vector<RectSpec>& rects) {
  Scene scene;
  scene.canvas = canvas;
  scene.layers.push_back(make_layer(0, canvas, bg_params));
  int index = 1;
  for (const auto& r : rects) {
    Layer l = make_layer(index, canvas, r.params);
    for (int y = r.y0; y < r.y1; ++y)
      for (int x = r.x0; x < r.x1; ++x) {
        if (x < 0 || x >= canvas.width || y < 0 || y >= canvas.height) continue;
        l.alpha_t.at(x, y, 0) = 1.0f;
        l.image.at(x, y, 0) = 0.1f * index;
        l.image.at(x, y, 1) = 0.5f;
        l.image.at(x, y, 2) = 1.0f - 0.1f * index;
      }
    scene.layers.push_back(std::move(l));
    ++index;
  }
  return scene;
}

inline AffineParams translation_params(double tx, double ty) {
  AffineParams p;
  p.translation = {tx, ty};
  return p;
}

}  // namespace flowgen::test
