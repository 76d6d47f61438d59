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
#include "flowgen/image.hpp"

namespace flowgen {

BinaryMask binarize_alpha(const ImageBuffer& alpha, double threshold = 0.4);

/// Non-visible region of layer i within one frame: the intersection of its
/// support with the union of all strictly higher layers' supports. Empty for
/// the topmost layer.
BinaryMask nonvisible_region(size_t i, const std::vector<BinaryMask>& alphas);

/// Warp the target-frame non-visible region to the reference frame by the
/// layer's flow (re-binarized at 0.4), then subtract what is already
/// non-visible there: occluded = newly hidden.
BinaryMask occlusion_for_layer(const BinaryMask& nonvisible_target,
                               const BinaryMask& nonvisible_reference,
                               const FlowField& layer_flow);

/// Union of the per-layer occlusion masks, computed in ascending layer
/// order over the full canvas.
BinaryMask combined_occlusion(const Scene& scene,
                              const GenerationConfig& cfg = GenerationConfig{});

/// Independent brute-force check: forward-map each reference pixel by the
/// affine of its topmost visible layer and test (nearest-neighbor) whether a
/// higher layer covers the landing point in the target frame. With
/// `include_out_of_bounds`, pixels whose correspondence leaves the canvas
/// are flagged too. Test use only.
BinaryMask oracle_occlusion(const Scene& scene,
                            const GenerationConfig& cfg = GenerationConfig{},
                            bool include_out_of_bounds = false);

}  // namespace flowgen
