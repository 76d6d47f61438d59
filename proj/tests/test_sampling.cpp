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
#include <vector>

#include "flowgen/error.hpp"
#include "flowgen/sampling.hpp"
#include "support/stats.hpp"

using namespace flowgen;
namespace ft = flowgen::test;

namespace {

constexpr Dims kCanvas{712, 584};

/// Mean of Exp(T) truncated to [0, max].
double truncated_exp_mean(double T, double max) {
  const double e = std::exp(-max / T);
  return T - max * e / (1.0 - e);
}

double truncated_exp_cdf(double x, double T, double max) {
  if (x <= 0.0) return 0.0;
  if (x >= max) return 1.0;
  return (1.0 - std::exp(-x / T)) / (1.0 - std::exp(-max / T));
}

}  // namespace

TEST_CASE("derived rng streams are reproducible and distinct") {
  Rng a = Rng::derive(42, 7);
  Rng b = Rng::derive(42, 7);
  Rng c = Rng::derive(42, 8);
  bool all_equal_ab = true, any_equal_ac = false;
  int equal_ac = 0;
  for (int i = 0; i < 1000; ++i) {
    const uint64_t va = a.next_u64();
    if (va != b.next_u64()) all_equal_ab = false;
    if (va == c.next_u64()) ++equal_ac;
  }
  (void)any_equal_ac;
  CHECK(all_equal_ab);
  CHECK(equal_ac == 0);
}

TEST_CASE("background motion respects configured ranges") {
  MotionConfig cfg;
  Rng rng = Rng::derive(1, 0);
  int zero_count = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const AffineParams p = sample_background_motion(rng, cfg, kCanvas);
    REQUIRE(std::abs(p.translation.x) <= 20.0);
    REQUIRE(std::abs(p.translation.y) <= 20.0);
    REQUIRE(std::abs(p.rotation) <= M_PI / 100.0);
    REQUIRE(p.scale >= 0.85);
    REQUIRE(p.scale <= 1.15);
    if (p.translation.x == 0.0 && p.translation.y == 0.0) ++zero_count;
  }
  const double zero_frac = static_cast<double>(zero_count) / n;
  CHECK(zero_frac == doctest::Approx(0.30).epsilon(0.034));  // 0.30 +- 0.01
  CHECK(sample_background_motion(rng, cfg, kCanvas).pivot.x ==
        doctest::Approx((kCanvas.width - 1) / 2.0));
}

TEST_CASE("degenerate background ranges") {
  MotionConfig cfg;
  cfg.bg_translation_range = 0.0;
  cfg.bg_zero_prob = 0.0;
  Rng rng = Rng::derive(2, 0);
  for (int i = 0; i < 100; ++i) {
    const AffineParams p = sample_background_motion(rng, cfg, kCanvas);
    CHECK(p.translation.x == 0.0);
    CHECK(p.translation.y == 0.0);
  }
}

TEST_CASE("zero-reset probability extremes") {
  MotionConfig always;
  always.bg_zero_prob = 1.0;
  MotionConfig never;
  never.bg_zero_prob = 0.0;
  Rng rng = Rng::derive(3, 0);
  int zeros_always = 0, zeros_never = 0;
  const int n = 1000000;
  for (int i = 0; i < n; ++i) {
    if (sample_background_motion(rng, always, kCanvas).translation.x == 0.0)
      ++zeros_always;
    const AffineParams p = sample_background_motion(rng, never, kCanvas);
    if (p.translation.x == 0.0 && p.translation.y == 0.0) ++zeros_never;
  }
  CHECK(zeros_always == n);
  CHECK(static_cast<double>(zeros_never) / n < 1e-4);
}

TEST_CASE("exponential magnitude: truncated mean and hard bound") {
  const TranslationDist dist = TranslationDist::exponential(20.0, 150.0);
  Rng rng = Rng::derive(4, 0);
  const int n = 1000000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double m = sample_translation_magnitude(rng, dist);
    REQUIRE(m >= 0.0);
    REQUIRE(m <= 150.0);
    sum += m;
  }
  const double analytic = truncated_exp_mean(20.0, 150.0);
  CHECK(analytic == doctest::Approx(19.917).epsilon(1e-3));
  CHECK(sum / n == doctest::Approx(analytic).epsilon(0.05 / analytic));
}

TEST_CASE("exponential magnitude matches the truncated-exponential law (KS)") {
  const TranslationDist dist = TranslationDist::exponential(20.0, 150.0);
  Rng rng = Rng::derive(5, 0);
  std::vector<double> draws(100000);
  for (double& d : draws) d = sample_translation_magnitude(rng, dist);
  const double ks = ft::ks_statistic(
      draws, [](double x) { return truncated_exp_cdf(x, 20.0, 150.0); });
  CHECK(ft::ks_pvalue(ks, static_cast<double>(draws.size())) > 0.01);
}

TEST_CASE("uniform magnitude stays in range") {
  const TranslationDist dist = TranslationDist::uniform_magnitude(150.0);
  Rng rng = Rng::derive(6, 0);
  for (int i = 0; i < 10000; ++i) {
    const double m = sample_translation_magnitude(rng, dist);
    REQUIRE(m >= 0.0);
    REQUIRE(m <= 150.0);
  }
}

TEST_CASE("cubed-gaussian magnitude matches a brute-force transform") {
  const TranslationDist dist = TranslationDist::cubed_gaussian(2.3, 150.0);
  Rng rng = Rng::derive(7, 0);
  const int n = 1000000;
  std::vector<double> draws(n);
  int below_clip = 0;
  for (double& d : draws) {
    d = sample_translation_magnitude(rng, dist);
    REQUIRE(d >= 0.0);
    REQUIRE(d <= 150.0);
    if (d < 150.0) ++below_clip;
  }
  // P(|g|^3 < 150) with g ~ N(0, 2.3^2) is erf(150^(1/3) / (2.3 sqrt(2)))
  // ~= 0.979; check the observed atom against that.
  const double p_below = std::erf(std::cbrt(150.0) / (2.3 * std::sqrt(2.0)));
  CHECK(static_cast<double>(below_clip) / n ==
        doctest::Approx(p_below).epsilon(0.002));

  // Independent transform oracle: cube clipped normals drawn separately.
  Rng oracle_rng = Rng::derive(8, 0);
  std::vector<double> oracle(n);
  for (double& d : oracle) {
    const double g = oracle_rng.normal() * 2.3;
    d = std::min(std::abs(g * g * g), 150.0);
  }
  CHECK(ft::ks2_pvalue(draws, oracle) > 0.01);
}

TEST_CASE("foreground motion: direction uniformity and magnitude law") {
  MotionConfig cfg;
  Rng rng = Rng::derive(9, 0);
  const int n = 1000000;
  std::vector<size_t> direction_bins(36, 0);
  std::vector<double> magnitudes;
  magnitudes.reserve(n);
  for (int i = 0; i < n; ++i) {
    const AffineParams p = sample_foreground_motion(rng, cfg, {100, 100});
    REQUIRE(std::abs(p.rotation) <= M_PI / 100.0);
    REQUIRE(p.scale >= 0.85);
    REQUIRE(p.scale <= 1.15);
    const double mag = std::hypot(p.translation.x, p.translation.y);
    REQUIRE(mag <= 150.0 + 1e-9);
    magnitudes.push_back(mag);
    const double theta =
        std::atan2(p.translation.y, p.translation.x) + M_PI;  // [0, 2pi]
    int bin = static_cast<int>(theta / (2.0 * M_PI) * 36.0);
    direction_bins[std::min(bin, 35)]++;
  }
  CHECK(ft::chi2_uniform_pvalue(direction_bins) > 0.01);
  const double ks = ft::ks_statistic(
      magnitudes, [](double x) { return truncated_exp_cdf(x, 20.0, 150.0); });
  CHECK(ft::ks_pvalue(ks, static_cast<double>(n)) > 0.01);
  CHECK(sample_foreground_motion(rng, cfg, {37, 53}).pivot.x == 37.0);
}

TEST_CASE("vanishing temperature leaves rotation+scale only") {
  MotionConfig cfg;
  cfg.fg_translation = TranslationDist::exponential(1e-9, 150.0);
  Rng rng = Rng::derive(10, 0);
  for (int i = 0; i < 100; ++i) {
    const AffineParams p = sample_foreground_motion(rng, cfg, {0, 0});
    CHECK(std::hypot(p.translation.x, p.translation.y) < 1e-6);
  }
}

TEST_CASE("foreground count is uniform over the inclusive range") {
  MotionConfig cfg;
  Rng rng = Rng::derive(11, 0);
  std::vector<size_t> counts(9, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const int c = sample_foreground_count(rng, cfg);
    REQUIRE(c >= 7);
    REQUIRE(c <= 15);
    counts[c - 7]++;
  }
  for (size_t c : counts)
    CHECK(static_cast<double>(c) / n == doctest::Approx(1.0 / 9).epsilon(0.09));

  MotionConfig singleton;
  singleton.fg_count_range[0] = singleton.fg_count_range[1] = 3;
  for (int i = 0; i < 50; ++i)
    CHECK(sample_foreground_count(rng, singleton) == 3);
}

TEST_CASE("placement: inset bounds and 2D uniformity") {
  Rng rng = Rng::derive(12, 0);
  std::vector<size_t> grid(64, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const Vec2 p = sample_placement(rng, kCanvas, Dims{50, 50}, 0.1);
    REQUIRE(p.x >= 71.2);
    REQUIRE(p.x <= 640.8);
    REQUIRE(p.y >= 58.4);
    REQUIRE(p.y <= 525.6);
    const int gx = std::min(7, static_cast<int>((p.x - 71.2) / (640.8 - 71.2) * 8));
    const int gy = std::min(7, static_cast<int>((p.y - 58.4) / (525.6 - 58.4) * 8));
    grid[gy * 8 + gx]++;
  }
  CHECK(ft::chi2_uniform_pvalue(grid) > 0.01);

  // Zero inset can touch the borders; oversize segments are rejected.
  bool near_border = false;
  for (int i = 0; i < 10000; ++i) {
    const Vec2 p = sample_placement(rng, Dims{10, 10}, Dims{5, 5}, 0.0);
    if (p.x < 0.5 || p.x > 9.5) near_border = true;
  }
  CHECK(near_border);
  CHECK_THROWS_AS(sample_placement(rng, Dims{10, 10}, Dims{11, 5}, 0.1),
                  AssetError);
}

TEST_CASE("config validation rejects bad fields") {
  MotionConfig cfg;
  cfg.bg_zero_prob = 1.5;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = MotionConfig{};
  cfg.scale_range[0] = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = MotionConfig{};
  cfg.fg_count_range[0] = 5;
  cfg.fg_count_range[1] = 4;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
