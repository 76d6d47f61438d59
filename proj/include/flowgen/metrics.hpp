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
#include <string>
#include <vector>

#include "flowgen/image.hpp"

namespace flowgen {

/// Mean endpoint error ||est - gt||_2 over valid pixels.
double epe(const FlowField& est, const FlowField& gt, const BinaryMask& valid);

/// Percent of valid pixels with ||e|| > 3 px AND ||e|| > 5% of ||gt||.
double fl_rate(const FlowField& est, const FlowField& gt, const BinaryMask& valid);

/// Fraction of valid pixels with ||e|| <= 1 px.
double acc_le1(const FlowField& est, const FlowField& gt, const BinaryMask& valid);

/// Flow-magnitude histogram, unit bins over [0, 160); magnitudes beyond the
/// range land in the last bin.
struct MotionHistogram {
  static constexpr int kBins = 160;
  static constexpr double kBinWidth = 1.0;
  std::vector<uint64_t> counts = std::vector<uint64_t>(kBins, 0);

  void accumulate(const FlowField& flow);
  void merge(const MotionHistogram& other);
  uint64_t total() const;
  void write_csv(const std::filesystem::path& path) const;
};

struct FlowStats {
  double epe = 0.0;
  double fl = 0.0;       // percent
  double acc_le1 = 0.0;  // fraction
  MotionHistogram histogram;
};

}  // namespace flowgen
