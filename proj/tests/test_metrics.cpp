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

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "flowgen/error.hpp"
#include "flowgen/metrics.hpp"
#include "flowgen/sampling.hpp"
#include "support/tempdir.hpp"

using namespace flowgen;
using flowgen::test::TempDir;

TEST_CASE("epe: hand-computed endpoint errors") {
  FlowField est(2, 1), gt(2, 1);
  est.u(0, 0) = 3.0f;
  est.v(0, 0) = 4.0f;   // error 5 against zero ground truth
  est.u(1, 0) = 1.0f;   // error 1
  const BinaryMask valid(2, 1, 1);
  CHECK(epe(est, gt, valid) == doctest::Approx(3.0));

  BinaryMask first_only(2, 1);
  first_only.at(0, 0) = 1;
  CHECK(epe(est, gt, first_only) == doctest::Approx(5.0));
  CHECK(epe(est, est, valid) == 0.0);
}

TEST_CASE("fl_rate: both conditions must hold") {
  // Four pixels probing each quadrant of (err > 3, err > 5% |gt|).
  FlowField est(4, 1), gt(4, 1);
  // Pixel 0: err 4 on gt 10 (5% = 0.5): outlier.
  gt.u(0, 0) = 10.0f;
  est.u(0, 0) = 14.0f;
  // Pixel 1: err 4 on gt 100 (5% = 5): large error but within 5%.
  gt.u(1, 0) = 100.0f;
  est.u(1, 0) = 104.0f;
  // Pixel 2: err 2 on gt 10: small error.
  gt.u(2, 0) = 10.0f;
  est.u(2, 0) = 12.0f;
  // Pixel 3: err exactly 3 is not an outlier (strict inequality).
  gt.u(3, 0) = 1.0f;
  est.u(3, 0) = 4.0f;
  CHECK(fl_rate(est, gt, BinaryMask(4, 1, 1)) == doctest::Approx(25.0));
}

TEST_CASE("acc_le1: inclusive 1 px threshold") {
  FlowField est(3, 1), gt(3, 1);
  est.u(0, 0) = 1.0f;       // exactly 1: counted
  est.u(1, 0) = 1.0001f;    // just over: not counted
  est.v(2, 0) = 0.5f;
  CHECK(acc_le1(est, gt, BinaryMask(3, 1, 1)) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("metrics agree with a naive reference loop on random fields") {
  const int w = 41, h = 23;
  FlowField est(w, h), gt(w, h);
  BinaryMask valid(w, h);
  Rng rng = Rng::derive(13, 0);
  for (float& v : est.data) v = static_cast<float>(rng.uniform(-80.0, 80.0));
  for (float& v : gt.data) v = static_cast<float>(rng.uniform(-80.0, 80.0));
  for (uint8_t& v : valid.data) v = rng.uniform() < 0.7 ? 1 : 0;

  double sum = 0.0, outliers = 0.0, close = 0.0;
  size_t n = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!valid.at(x, y)) continue;
      const double du = est.u(x, y) - static_cast<double>(gt.u(x, y));
      const double dv = est.v(x, y) - static_cast<double>(gt.v(x, y));
      const double err = std::sqrt(du * du + dv * dv);
      const double mag = std::sqrt(
          static_cast<double>(gt.u(x, y)) * gt.u(x, y) +
          static_cast<double>(gt.v(x, y)) * gt.v(x, y));
      sum += err;
      if (err > 3.0 && err > 0.05 * mag) outliers += 1.0;
      if (err <= 1.0) close += 1.0;
      ++n;
    }
  REQUIRE(n > 0);
  CHECK(epe(est, gt, valid) == doctest::Approx(sum / n).epsilon(1e-9));
  CHECK(fl_rate(est, gt, valid) ==
        doctest::Approx(100.0 * outliers / n).epsilon(1e-9));
  CHECK(acc_le1(est, gt, valid) == doctest::Approx(close / n).epsilon(1e-9));
}

TEST_CASE("metric errors: empty valid set and shape mismatch") {
  FlowField f(2, 2);
  CHECK_THROWS_AS(epe(f, f, BinaryMask(2, 2)), MetricError);
  CHECK_THROWS_AS(epe(f, f, BinaryMask(3, 2, 1)), ShapeError);
  CHECK_THROWS_AS(fl_rate(f, FlowField(2, 3), BinaryMask(2, 2, 1)), ShapeError);
}

TEST_CASE("motion histogram: binning, overflow and merge") {
  FlowField f(4, 1);
  f.u(0, 0) = 0.25f;     // bin 0
  f.u(1, 0) = 3.0f;
  f.v(1, 0) = 4.0f;      // magnitude 5 -> bin 5
  f.u(2, 0) = 159.5f;    // bin 159
  f.u(3, 0) = 500.0f;    // overflow -> last bin
  MotionHistogram h;
  h.accumulate(f);
  CHECK(h.total() == 4);
  CHECK(h.counts[0] == 1);
  CHECK(h.counts[5] == 1);
  CHECK(h.counts[159] == 2);

  MotionHistogram other;
  other.accumulate(f);
  h.merge(other);
  CHECK(h.total() == 8);
  CHECK(h.counts[159] == 4);
}

TEST_CASE("motion histogram CSV layout") {
  MotionHistogram h;
  FlowField f(1, 1);
  f.u(0, 0) = 2.5f;
  h.accumulate(f);

  TempDir tmp("hist");
  h.write_csv(tmp / "hist.csv");
  std::ifstream in(tmp.path() / "hist.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "bin_lo,bin_hi,count");
  std::getline(in, line);
  CHECK(line == "0,1,0");
  std::getline(in, line);
  CHECK(line == "1,2,0");
  std::getline(in, line);
  CHECK(line == "2,3,1");
  int rows = 3;
  while (std::getline(in, line) && !line.empty()) ++rows;
  CHECK(rows == MotionHistogram::kBins);
}
