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

#include "flowgen/image.hpp"
#include "flowgen/metrics.hpp"

namespace flowgen {

/// Middlebury-style colorization: hue encodes direction, saturation encodes
/// magnitude normalized by `max_magnitude` (pass <= 0 to normalize by the
/// 99th percentile of the field). Zero flow renders white.
ImageBuffer flow_to_color(const FlowField& flow, double max_magnitude = -1.0);

/// Frame with occluded pixels tinted red.
ImageBuffer occlusion_overlay(const ImageBuffer& frame, const BinaryMask& occ);

/// Simple bar chart of the histogram, log-scaled counts.
ImageBuffer histogram_chart(const MotionHistogram& hist, int width = 640,
                            int height = 360);

}  // namespace flowgen
