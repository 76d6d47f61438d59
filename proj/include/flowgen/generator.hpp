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

#include <filesystem>

#include "flowgen/flow_io.hpp"

namespace flowgen {

struct GenerationRun {
  GenerationConfig config;
  std::filesystem::path asset_dir;  // expects backgrounds/ and segments/
  std::filesystem::path output_dir;
  uint64_t master_seed = 0;
  uint64_t sample_count = 1;
  int workers = 1;
  SampleOutputOptions options;
};

/// Parallel map over sample indices; each worker derives its own stream, so
/// the written files are identical for any worker count. Writes manifest.json
/// last and returns it.
DatasetManifest run_generation(const GenerationRun& run);

struct ValidationIssue {
  std::string sample;
  std::string check;
  std::string detail;
};

struct ValidationReport {
  uint64_t samples_checked = 0;
  std::vector<ValidationIssue> issues;
  double max_photometric_error = 0.0;
  bool ok() const { return issues.empty(); }
};

/// Re-checks an existing dataset: file presence, format round-trips, mask
/// sanity, photometric consistency on non-occluded in-bounds pixels away
/// from flow discontinuities.
ValidationReport validate_dataset(const std::filesystem::path& dataset_dir);

/// Photometric residual of one sample: mean |A(x) - bilinear(B, x + f(x))|
/// over pixels that are not occluded, in bounds, and not within 1 px of a
/// flow discontinuity. Returns -1 if no pixel qualifies.
double photometric_error(const ImageBuffer& frame_a, const ImageBuffer& frame_b,
                         const FlowField& flow, const BinaryMask& occlusion);

}  // namespace flowgen
