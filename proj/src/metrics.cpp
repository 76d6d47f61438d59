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

#include "flowgen/metrics.hpp"

#include <cmath>
#include <fstream>

#include "flowgen/error.hpp"

namespace flowgen {

namespace {

void check_dims(const FlowField& est, const FlowField& gt, const BinaryMask& valid) {
  if (est.width != gt.width || est.height != gt.height ||
      est.width != valid.width || est.height != valid.height)
    throw ShapeError("metric inputs have mismatched dimensions");
}

template <typename Fn>
double reduce_valid(const FlowField& est, const FlowField& gt,
                    const BinaryMask& valid, Fn fn) {
  check_dims(est, gt, valid);
  double acc = 0.0;
  size_t n = 0;
  for (int y = 0; y < est.height; ++y)
    for (int x = 0; x < est.width; ++x) {
      if (!valid.at(x, y)) continue;
      const double du = static_cast<double>(est.u(x, y)) - gt.u(x, y);
      const double dv = static_cast<double>(est.v(x, y)) - gt.v(x, y);
      const double err = std::hypot(du, dv);
      const double mag = std::hypot(static_cast<double>(gt.u(x, y)),
                                    static_cast<double>(gt.v(x, y)));
      acc += fn(err, mag);
      ++n;
    }
  if (n == 0) throw MetricError("metric undefined: empty valid set");
  return acc / static_cast<double>(n);
}

}  // namespace

double epe(const FlowField& est, const FlowField& gt, const BinaryMask& valid) {
  return reduce_valid(est, gt, valid,
                      [](double err, double) { return err; });
}

double fl_rate(const FlowField& est, const FlowField& gt, const BinaryMask& valid) {
  return 100.0 * reduce_valid(est, gt, valid, [](double err, double mag) {
           return (err > 3.0 && err > 0.05 * mag) ? 1.0 : 0.0;
         });
}

double acc_le1(const FlowField& est, const FlowField& gt, const BinaryMask& valid) {
  return reduce_valid(est, gt, valid,
                      [](double err, double) { return err <= 1.0 ? 1.0 : 0.0; });
}

void MotionHistogram::accumulate(const FlowField& flow) {
  for (int y = 0; y < flow.height; ++y)
    for (int x = 0; x < flow.width; ++x) {
      const double mag = std::hypot(static_cast<double>(flow.u(x, y)),
                                    static_cast<double>(flow.v(x, y)));
      int bin = static_cast<int>(mag / kBinWidth);
      bin = std::min(bin, kBins - 1);
      ++counts[bin];
    }
}

void MotionHistogram::merge(const MotionHistogram& other) {
  for (int i = 0; i < kBins; ++i) counts[i] += other.counts[i];
}

uint64_t MotionHistogram::total() const {
  uint64_t n = 0;
  for (uint64_t c : counts) n += c;
  return n;
}

void MotionHistogram::write_csv(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path.string());
  out << "bin_lo,bin_hi,count\n";
  for (int i = 0; i < kBins; ++i)
    out << i * kBinWidth << "," << (i + 1) * kBinWidth << "," << counts[i] << "\n";
}

}  // namespace flowgen
