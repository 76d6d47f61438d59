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

#include <string>
#include <vector>

#include "flowgen/assets.hpp"
#include "flowgen/geometry.hpp"
#include "flowgen/sampling.hpp"

namespace flowgen {

/// Which frame's alpha gates the hard flow paste. Flow lives on the
/// reference frame, so the warped (reference) alpha is the default.
enum class PasteAlphaFrame { Reference, Target };

/// Full run configuration: motion law plus canvas/crop geometry and
/// compositing thresholds. Defaults reproduce the standard recipe.
struct GenerationConfig {
  MotionConfig motion;
  Dims canvas{712, 584};
  Dims output{512, 384};
  double placement_inset = 0.1;
  int blur_kernel = 0;  // 0 disables the foreground texture blur
  double flow_paste_threshold = 0.4;
  double alpha_threshold = 0.4;
  PasteAlphaFrame paste_alpha_frame = PasteAlphaFrame::Reference;

  void validate() const;
};

/// Half-open pixel rectangle [x0, x1) x [y0, y1). A degenerate rectangle
/// (x1 <= x0 or y1 <= y0) means "whole canvas" wherever a Layer box is
/// consumed, so hand-built layers need not set boxes.
struct IntRect {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  bool degenerate() const { return x1 <= x0 || y1 <= y0; }
};

/// Conservative reference-frame cover of a target-frame rectangle under the
/// layer transform: every reference pixel whose bilinear warp can touch
/// `target` lies inside the result.
IntRect reference_cover(const AffineTransform& transform, IntRect target,
                        Dims canvas);

/// One compositing element at canvas resolution. Layer 0 is the background
/// (alpha_t identically 1); higher indices sit on top.
struct Layer {
  int index = 0;
  ImageBuffer image;    // 3 channels, canvas dims, target-frame pixels
  ImageBuffer alpha_t;  // 1 channel, canvas dims
  AffineParams affine;
  AffineTransform transform;
  FlowField flow;       // f_i, valid on ref_box and target_box
  IntRect target_box;   // support of alpha_t (plus 1 px bilinear margin)
  IntRect ref_box;      // where the warped alpha can be nonzero
  std::string source_id;
};

struct Scene {
  Dims canvas;
  std::vector<Layer> layers;
  SampleSeed seed;
};

/// Rendered output at crop resolution plus its provenance.
struct Sample {
  ImageBuffer frame_a;     // reference
  ImageBuffer frame_b;     // target
  FlowField flow;          // defined on frame_a
  BinaryMask occlusion;
  BinaryMask out_of_bounds;  // correspondences leaving the canvas (optional export)
  SampleSeed seed;
  std::string config_hash;
};

Scene compose_scene(Rng& rng, const AssetCatalog& catalog,
                    const GenerationConfig& cfg);

/// Bottom-to-top straight-alpha over-compositing of the target frame.
ImageBuffer render_target(const Scene& scene);

/// Per-layer inverse warp (background clamp-to-edge, foregrounds zero
/// border) followed by over-compositing.
ImageBuffer render_reference(const Scene& scene);

/// Layer i's alpha inverse-warped to the reference frame (continuous).
ImageBuffer warped_reference_alpha(const Scene& scene, size_t layer);

/// Background flow overwritten by each foreground's flow, bottom-to-top,
/// wherever the gating alpha is >= threshold. Hard paste, no blending.
FlowField composite_flow(const Scene& scene,
                         const GenerationConfig& cfg = GenerationConfig{});

/// Pixels whose target correspondence under the composited flow leaves the
/// canvas.
BinaryMask out_of_bounds_mask(const FlowField& flow, Dims canvas);

ImageBuffer center_crop(const ImageBuffer& img, Dims output);
FlowField center_crop(const FlowField& flow, Dims output);
BinaryMask center_crop(const BinaryMask& mask, Dims output);

Sample generate_sample(SampleSeed seed, const AssetCatalog& catalog,
                       const GenerationConfig& cfg);

}  // namespace flowgen
