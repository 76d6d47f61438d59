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

#include "flowgen/sampling.hpp"

#include <atomic>
#include <cmath>

#include "flowgen/error.hpp"

namespace flowgen {

namespace {

std::atomic<uint64_t> g_clamp_count{0};

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr int kMagnitudeRetryCap = 64;

}  // namespace

Rng Rng::derive(SampleSeed seed) {
  Rng rng;
  rng.state_ = mix64(mix64(seed.master_seed + kGolden) ^
                     mix64(seed.sample_index * kGolden + 0x6A09E667F3BCC909ull));
  return rng;
}

uint64_t Rng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

int64_t Rng::uniform_int(int64_t lo, int64_t hi) {
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  // Multiply-shift; bias is < 2^-64 per draw, irrelevant at our span sizes.
  const uint64_t r = next_u64();
  const auto wide = static_cast<unsigned __int128>(r) * span;
  return lo + static_cast<int64_t>(wide >> 64);
}

double Rng::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  cached_normal_ = r * std::sin(2.0 * M_PI * u2);
  has_cached_normal_ = true;
  return r * std::cos(2.0 * M_PI * u2);
}

double Rng::exponential(double mean) {
  double u = uniform();
  while (u >= 1.0) u = uniform();
  return -mean * std::log1p(-u);
}

TranslationDist TranslationDist::exponential(double temperature, double max) {
  TranslationDist d;
  d.kind = Kind::Exponential;
  d.temperature = temperature;
  d.max = max;
  return d;
}

TranslationDist TranslationDist::uniform_magnitude(double max) {
  TranslationDist d;
  d.kind = Kind::UniformMagnitude;
  d.max = max;
  return d;
}

TranslationDist TranslationDist::cubed_gaussian(double sigma, double clip) {
  TranslationDist d;
  d.kind = Kind::CubedGaussian;
  d.sigma = sigma;
  d.clip = clip;
  return d;
}

void TranslationDist::validate() const {
  switch (kind) {
    case Kind::Exponential:
      if (!(temperature > 0.0)) throw ConfigError("fg_translation.T must be > 0");
      if (!(max > 0.0)) throw ConfigError("fg_translation.max must be > 0");
      break;
    case Kind::UniformMagnitude:
      if (!(max > 0.0)) throw ConfigError("fg_translation.max must be > 0");
      break;
    case Kind::CubedGaussian:
      if (!(sigma > 0.0)) throw ConfigError("fg_translation.sigma must be > 0");
      if (!(clip > 0.0)) throw ConfigError("fg_translation.clip must be > 0");
      break;
  }
}

void MotionConfig::validate() const {
  if (!(bg_translation_range >= 0.0))
    throw ConfigError("bg_translation_range must be >= 0");
  if (bg_zero_prob < 0.0 || bg_zero_prob > 1.0)
    throw ConfigError("bg_zero_prob must be in [0, 1]");
  if (fg_zero_prob < 0.0 || fg_zero_prob > 1.0)
    throw ConfigError("fg_zero_prob must be in [0, 1]");
  if (!(rotation_range >= 0.0)) throw ConfigError("rotation_range must be >= 0");
  if (!(scale_range[0] > 0.0) || scale_range[0] > scale_range[1])
    throw ConfigError("scale_range must satisfy 0 < lo <= hi");
  if (fg_count_range[0] < 0 || fg_count_range[0] > fg_count_range[1])
    throw ConfigError("fg_count_range must satisfy 0 <= lo <= hi");
  fg_translation.validate();
}

AffineParams sample_background_motion(Rng& rng, const MotionConfig& cfg, Dims canvas) {
  cfg.validate();
  AffineParams p;
  p.translation.x = rng.uniform(-cfg.bg_translation_range, cfg.bg_translation_range);
  p.translation.y = rng.uniform(-cfg.bg_translation_range, cfg.bg_translation_range);
  if (rng.uniform() < cfg.bg_zero_prob) p.translation = {0.0, 0.0};
  p.rotation = rng.uniform(-cfg.rotation_range, cfg.rotation_range);
  p.scale = rng.uniform(cfg.scale_range[0], cfg.scale_range[1]);
  p.pivot = {(canvas.width - 1) / 2.0, (canvas.height - 1) / 2.0};
  return p;
}

double sample_translation_magnitude(Rng& rng, const TranslationDist& dist) {
  dist.validate();
  switch (dist.kind) {
    case TranslationDist::Kind::Exponential: {
      for (int i = 0; i < kMagnitudeRetryCap; ++i) {
        const double m = rng.exponential(dist.temperature);
        if (m <= dist.max) return m;
      }
      g_clamp_count.fetch_add(1, std::memory_order_relaxed);
      return dist.max;
    }
    case TranslationDist::Kind::UniformMagnitude:
      return rng.uniform(0.0, dist.max);
    case TranslationDist::Kind::CubedGaussian: {
      const double g = rng.normal() * dist.sigma;
      const double cubed = std::copysign(std::abs(g) * std::abs(g) * std::abs(g), g);
      return std::abs(std::clamp(cubed, -dist.clip, dist.clip));
    }
  }
  throw ParameterError("unknown translation distribution kind");
}

uint64_t translation_clamp_count() {
  return g_clamp_count.load(std::memory_order_relaxed);
}

AffineParams sample_foreground_motion(Rng& rng, const MotionConfig& cfg,
                                      Vec2 segment_centroid) {
  cfg.validate();
  AffineParams p;
  const double magnitude = sample_translation_magnitude(rng, cfg.fg_translation);
  const double theta = rng.uniform(0.0, 2.0 * M_PI);
  p.translation = {magnitude * std::cos(theta), magnitude * std::sin(theta)};
  if (cfg.fg_zero_prob > 0.0 && rng.uniform() < cfg.fg_zero_prob)
    p.translation = {0.0, 0.0};
  p.rotation = rng.uniform(-cfg.rotation_range, cfg.rotation_range);
  p.scale = rng.uniform(cfg.scale_range[0], cfg.scale_range[1]);
  p.pivot = segment_centroid;
  return p;
}

int sample_foreground_count(Rng& rng, const MotionConfig& cfg) {
  cfg.validate();
  return static_cast<int>(rng.uniform_int(cfg.fg_count_range[0], cfg.fg_count_range[1]));
}

Vec2 sample_placement(Rng& rng, Dims canvas, Dims segment, double inset_fraction) {
  if (segment.width > canvas.width || segment.height > canvas.height)
    throw AssetError("segment larger than canvas");
  const double ix = canvas.width * inset_fraction;
  const double iy = canvas.height * inset_fraction;
  return {rng.uniform(ix, canvas.width - ix), rng.uniform(iy, canvas.height - iy)};
}

}  // namespace flowgen
