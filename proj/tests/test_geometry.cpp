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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "flowgen/error.hpp"
#include "flowgen/geometry.hpp"
#include "flowgen/sampling.hpp"

using namespace flowgen;

namespace {

AffineParams params(double tx, double ty, double rot = 0.0, double scale = 1.0,
                    double px = 0.0, double py = 0.0) {
  AffineParams p;
  p.translation = {tx, ty};
  p.rotation = rot;
  p.scale = scale;
  p.pivot = {px, py};
  return p;
}

}  // namespace

TEST_CASE("affine_from_params identity") {
  const AffineTransform t = affine_from_params(params(0, 0, 0, 1, 3, -7));
  for (int i = 0; i < 9; ++i)
    CHECK(t.m[i] == doctest::Approx(i % 4 == 0 ? 1.0 : 0.0).epsilon(1e-12));
}

TEST_CASE("affine_from_params pure translation") {
  const AffineTransform t = affine_from_params(params(5, -3));
  CHECK(t.m[2] == doctest::Approx(5.0));
  CHECK(t.m[5] == doctest::Approx(-3.0));
  CHECK(t.m[6] == 0.0);
  CHECK(t.m[7] == 0.0);
  CHECK(t.m[8] == 1.0);
}

TEST_CASE("affine_from_params rotation about pivot") {
  const AffineTransform t = affine_from_params(params(0, 0, M_PI / 2, 1, 10, 10));
  const Vec2 fixed = t.apply({10, 10});
  CHECK(fixed.x == doctest::Approx(10.0));
  CHECK(fixed.y == doctest::Approx(10.0));
  const Vec2 moved = t.apply({11, 10});
  CHECK(moved.x == doctest::Approx(10.0));
  CHECK(moved.y == doctest::Approx(11.0));
}

TEST_CASE("affine_from_params rejects bad parameters") {
  CHECK_THROWS_AS(affine_from_params(params(NAN, 0)), ParameterError);
  AffineParams p = params(0, 0);
  p.scale = 0.0;
  CHECK_THROWS_AS(affine_from_params(p), ParameterError);
}

TEST_CASE("flow_from_affine identity and translation") {
  const FlowField zero = flow_from_affine(AffineTransform{}, 17, 9);
  for (float v : zero.data) CHECK(v == 0.0f);

  const FlowField t = flow_from_affine(affine_from_params(params(3.5, -1.25)), 8, 8);
  float umin = 1e9f, umax = -1e9f;
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 8; ++x) {
      umin = std::min(umin, t.u(x, y));
      umax = std::max(umax, t.u(x, y));
      CHECK(t.v(x, y) == doctest::Approx(-1.25));
    }
  // Pure translation must be exactly constant.
  CHECK(umax - umin == 0.0f);
  CHECK(umin == doctest::Approx(3.5));
}

TEST_CASE("flow_from_affine scale about origin") {
  const FlowField f =
      flow_from_affine(affine_from_params(params(0, 0, 0, 1.1)), 32, 32);
  CHECK(f.u(10, 20) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(f.v(10, 20) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("flow_from_affine matches direct matrix evaluation") {
  Rng rng = Rng::derive(101, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const AffineParams p =
        params(rng.uniform(-20, 20), rng.uniform(-20, 20), rng.uniform(-0.3, 0.3),
               rng.uniform(0.7, 1.4), rng.uniform(0, 64), rng.uniform(0, 48));
    const AffineTransform a = affine_from_params(p);
    const FlowField f = flow_from_affine(a, 64, 48);
    for (int y = 0; y < 48; y += 7)
      for (int x = 0; x < 64; x += 5) {
        const double mx = a.m[0] * x + a.m[1] * y + a.m[2];
        const double my = a.m[3] * x + a.m[4] * y + a.m[5];
        // Stored as float32; the correctly rounded value must match exactly
        // (tighter than any absolute tolerance at these magnitudes).
        CHECK(f.u(x, y) == static_cast<float>(mx - x));
        CHECK(f.v(x, y) == static_cast<float>(my - y));
      }
  }
}

TEST_CASE("affine round trip returns points to origin") {
  Rng rng = Rng::derive(102, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const AffineTransform a = affine_from_params(
        params(rng.uniform(-20, 20), rng.uniform(-20, 20), rng.uniform(-0.3, 0.3),
               rng.uniform(0.7, 1.4), rng.uniform(0, 64), rng.uniform(0, 48)));
    const AffineTransform inv = a.inverse();
    for (int k = 0; k < 20; ++k) {
      const Vec2 x{rng.uniform(0, 64), rng.uniform(0, 48)};
      // Apply f_A at x, then f_{A^-1} at the mapped point.
      const Vec2 mapped = a.apply(x);
      const Vec2 back = inv.apply(mapped);
      CHECK(std::abs(back.x - x.x) < 1e-6);
      CHECK(std::abs(back.y - x.y) < 1e-6);
    }
  }
}

TEST_CASE("inverse_warp_image zero flow is identity") {
  ImageBuffer img(13, 7, 3);
  Rng rng = Rng::derive(103, 0);
  for (float& v : img.data) v = static_cast<float>(rng.uniform());
  const FlowField zero(13, 7);
  for (auto border : {BorderPolicy::ClampToEdge, BorderPolicy::Zero}) {
    const ImageBuffer out = inverse_warp_image(img, zero, border);
    CHECK(out.data == img.data);
  }
}

TEST_CASE("inverse_warp_image constant flow on a ramp") {
  const int w = 16, h = 4;
  ImageBuffer ramp(w, h, 1);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) ramp.at(x, y, 0) = static_cast<float>(x) / w;
  FlowField flow(w, h);
  for (float& v : flow.data) v = 0.0f;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) flow.u(x, y) = 1.0f;
  const ImageBuffer out = inverse_warp_image(ramp, flow, BorderPolicy::ClampToEdge);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x + 1 < w; ++x)
      CHECK(out.at(x, y, 0) == doctest::Approx((x + 1.0) / w).epsilon(1e-6));
}

TEST_CASE("inverse_warp_image half-pixel flow averages adjacent texels") {
  const int w = 6, h = 3;
  ImageBuffer img(w, h, 1);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img.at(x, y, 0) = x % 2 ? 1.0f : 0.0f;
  FlowField flow(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) flow.u(x, y) = 0.5f;
  const ImageBuffer out = inverse_warp_image(img, flow, BorderPolicy::ClampToEdge);
  for (int y = 0; y < h; ++y) CHECK(out.at(0, y, 0) == doctest::Approx(0.5));
}

TEST_CASE("integer flow equals brute-force shift for every border policy") {
  Rng rng = Rng::derive(104, 0);
  const int w = 21, h = 13;
  ImageBuffer img(w, h, 2);
  for (float& v : img.data) v = static_cast<float>(rng.uniform());
  for (int trial = 0; trial < 20; ++trial) {
    const int dx = static_cast<int>(rng.uniform_int(-6, 6));
    const int dy = static_cast<int>(rng.uniform_int(-6, 6));
    FlowField flow(w, h);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        flow.u(x, y) = static_cast<float>(dx);
        flow.v(x, y) = static_cast<float>(dy);
      }
    for (auto border : {BorderPolicy::ClampToEdge, BorderPolicy::Zero}) {
      const ImageBuffer out = inverse_warp_image(img, flow, border);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          int sx = x + dx, sy = y + dy;
          float expected0, expected1;
          if (border == BorderPolicy::ClampToEdge) {
            sx = std::clamp(sx, 0, w - 1);
            sy = std::clamp(sy, 0, h - 1);
            expected0 = img.at(sx, sy, 0);
            expected1 = img.at(sx, sy, 1);
          } else if (sx < 0 || sx >= w || sy < 0 || sy >= h) {
            expected0 = expected1 = 0.0f;
          } else {
            expected0 = img.at(sx, sy, 0);
            expected1 = img.at(sx, sy, 1);
          }
          REQUIRE(out.at(x, y, 0) == expected0);
          REQUIRE(out.at(x, y, 1) == expected1);
        }
    }
  }
}

TEST_CASE("warp is linear in image values") {
  Rng rng = Rng::derive(105, 0);
  const int w = 12, h = 10;
  ImageBuffer a(w, h, 1), b(w, h, 1);
  for (float& v : a.data) v = static_cast<float>(rng.uniform());
  for (float& v : b.data) v = static_cast<float>(rng.uniform());
  FlowField flow(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      flow.u(x, y) = static_cast<float>(rng.uniform(-2, 2));
      flow.v(x, y) = static_cast<float>(rng.uniform(-2, 2));
    }
  const double alpha = 0.3, beta = 0.45;
  ImageBuffer mix(w, h, 1);
  for (size_t i = 0; i < mix.data.size(); ++i)
    mix.data[i] = static_cast<float>(alpha * a.data[i] + beta * b.data[i]);
  const ImageBuffer wa = inverse_warp_image(a, flow, BorderPolicy::Zero);
  const ImageBuffer wb = inverse_warp_image(b, flow, BorderPolicy::Zero);
  const ImageBuffer wmix = inverse_warp_image(mix, flow, BorderPolicy::Zero);
  for (size_t i = 0; i < mix.data.size(); ++i)
    CHECK(wmix.data[i] ==
          doctest::Approx(alpha * wa.data[i] + beta * wb.data[i]).epsilon(1e-6));
}

TEST_CASE("inverse_warp_mask") {
  const int w = 10, h = 6;

  SUBCASE("binary mask, zero flow, identity") {
    ImageBuffer mask(w, h, 1);
    mask.at(3, 2, 0) = 1.0f;
    mask.at(4, 2, 0) = 1.0f;
    const ImageBuffer out = inverse_warp_mask(mask, FlowField(w, h), 0.4);
    CHECK(out.data == mask.data);
  }

  SUBCASE("integer shift zeroes the vacated border") {
    ImageBuffer ones(w, h, 1, 1.0f);
    FlowField flow(w, h);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) flow.u(x, y) = 3.0f;
    const ImageBuffer out = inverse_warp_mask(ones, flow, 0.4);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        CHECK(out.at(x, y, 0) == (x + 3 < w ? 1.0f : 0.0f));
  }

  SUBCASE("half-intensity mask binarizes up at 0.4") {
    ImageBuffer half(w, h, 1, 0.5f);
    const ImageBuffer out = inverse_warp_mask(half, FlowField(w, h), 0.4);
    for (float v : out.data) CHECK(v == 1.0f);
  }

  SUBCASE("threshold outside (0,1) rejected") {
    ImageBuffer mask(w, h, 1);
    CHECK_THROWS_AS(inverse_warp_mask(mask, FlowField(w, h), 0.0), ParameterError);
    CHECK_THROWS_AS(inverse_warp_mask(mask, FlowField(w, h), 1.0), ParameterError);
  }
}

TEST_CASE("warp dimension mismatch is a shape error") {
  CHECK_THROWS_AS(
      inverse_warp_image(ImageBuffer(4, 4, 1), FlowField(5, 4), BorderPolicy::Zero),
      ShapeError);
}
