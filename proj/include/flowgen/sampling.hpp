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

#include <cmath>
#include <cstdint>
#include <optional>

#ifndef M_PI
#define M_PI 3.14159265358979323846
#endif

#include "flowgen/geometry.hpp"

namespace flowgen {

/// Identifies one sample's random stream. The derived stream is a pure
/// function of (master_seed, sample_index), independent of scheduling.
struct SampleSeed {
  uint64_t master_seed = 0;
  uint64_t sample_index = 0;
};

/// Counter-based generator (splitmix64 over a per-stream key). Cheap to
/// derive, cross-platform deterministic; distributions below are hand-rolled
/// so draw sequences never depend on the standard library implementation.
class Rng {
 public:
  static Rng derive(SampleSeed seed);
  static Rng derive(uint64_t master_seed, uint64_t sample_index) {
    return derive(SampleSeed{master_seed, sample_index});
  }

  uint64_t next_u64();
  /// Uniform in [0, 1), 53-bit resolution.
  double uniform();
  /// Uniform in [lo, hi].
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi] inclusive.
  int64_t uniform_int(int64_t lo, int64_t hi);
  /// Standard normal, Box-Muller (two uniforms per pair, one cached).
  double normal();
  /// Exponential with the given mean.
  double exponential(double mean);

 private:
  uint64_t state_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Foreground translation-magnitude law. `kind` selects which fields apply.
struct TranslationDist {
  enum class Kind { Exponential, UniformMagnitude, CubedGaussian };
  Kind kind = Kind::Exponential;
  double temperature = 20.0;  // Exponential mean, pixels
  double max = 150.0;         // Exponential / UniformMagnitude bound, pixels
  double sigma = 2.3;         // CubedGaussian base std-dev
  double clip = 150.0;        // CubedGaussian clip, pixels

  static TranslationDist exponential(double temperature = 20.0, double max = 150.0);
  static TranslationDist uniform_magnitude(double max = 150.0);
  static TranslationDist cubed_gaussian(double sigma = 2.3, double clip = 150.0);
  void validate() const;
};

struct MotionConfig {
  double bg_translation_range = 20.0;       // +- pixels
  double bg_zero_prob = 0.3;
  double fg_zero_prob = 0.0;                // off by default
  double rotation_range = M_PI / 100.0;     // +- radians
  double scale_range[2] = {0.85, 1.15};
  TranslationDist fg_translation;
  int fg_count_range[2] = {7, 15};

  void validate() const;  // throws ConfigError
};

struct Dims {
  int width = 0;
  int height = 0;
};

AffineParams sample_background_motion(Rng& rng, const MotionConfig& cfg, Dims canvas);

/// Rejection-sampled magnitude; on retry-cap exhaustion clamps to max and
/// bumps translation_clamp_count() instead of aborting generation.
double sample_translation_magnitude(Rng& rng, const TranslationDist& dist);
uint64_t translation_clamp_count();

AffineParams sample_foreground_motion(Rng& rng, const MotionConfig& cfg,
                                      Vec2 segment_centroid);

int sample_foreground_count(Rng& rng, const MotionConfig& cfg);

/// Uniform centroid position over the canvas inset by `inset_fraction` of
/// each dimension on every side.
Vec2 sample_placement(Rng& rng, Dims canvas, Dims segment,
                      double inset_fraction = 0.1);

}  // namespace flowgen
