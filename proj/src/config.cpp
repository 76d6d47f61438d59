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

#include "flowgen/config.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "flowgen/assets.hpp"
#include "flowgen/compositor.hpp"
#include "flowgen/error.hpp"

using nlohmann::json;

namespace flowgen {

namespace {

void require_keys(const json& j, const char* scope,
                  std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok)
      throw ConfigError(std::string("unknown config field: ") + scope + key);
  }
}

double get_number(const json& j, const char* scope, const char* key, double dflt) {
  if (!j.contains(key)) return dflt;
  if (!j.at(key).is_number())
    throw ConfigError(std::string(scope) + key + " must be a number");
  return j.at(key).get<double>();
}

void get_pair(const json& j, const char* scope, const char* key, double& lo,
              double& hi) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ConfigError(std::string(scope) + key + " must be [lo, hi]");
  lo = v[0].get<double>();
  hi = v[1].get<double>();
}

TranslationDist parse_translation(const json& j) {
  TranslationDist d;
  require_keys(j, "motion.fg_translation.", {"kind", "T", "max", "sigma", "clip"});
  std::string kind = "exponential";
  if (j.contains("kind")) {
    if (!j.at("kind").is_string())
      throw ConfigError("motion.fg_translation.kind must be a string");
    kind = j.at("kind").get<std::string>();
  }
  if (kind == "exponential") {
    d.kind = TranslationDist::Kind::Exponential;
  } else if (kind == "uniform") {
    d.kind = TranslationDist::Kind::UniformMagnitude;
  } else if (kind == "cubed_gaussian") {
    d.kind = TranslationDist::Kind::CubedGaussian;
  } else {
    throw ConfigError("motion.fg_translation.kind must be one of "
                      "exponential|uniform|cubed_gaussian");
  }
  d.temperature = get_number(j, "motion.fg_translation.", "T", d.temperature);
  d.max = get_number(j, "motion.fg_translation.", "max", d.max);
  d.sigma = get_number(j, "motion.fg_translation.", "sigma", d.sigma);
  d.clip = get_number(j, "motion.fg_translation.", "clip", d.clip);
  d.validate();
  return d;
}

MotionConfig parse_motion(const json& j) {
  MotionConfig m;
  require_keys(j, "motion.",
               {"bg_translation_range", "bg_zero_prob", "fg_zero_prob",
                "rotation_range", "scale_range", "fg_translation",
                "fg_count_range"});
  m.bg_translation_range =
      get_number(j, "motion.", "bg_translation_range", m.bg_translation_range);
  m.bg_zero_prob = get_number(j, "motion.", "bg_zero_prob", m.bg_zero_prob);
  m.fg_zero_prob = get_number(j, "motion.", "fg_zero_prob", m.fg_zero_prob);
  m.rotation_range = get_number(j, "motion.", "rotation_range", m.rotation_range);
  get_pair(j, "motion.", "scale_range", m.scale_range[0], m.scale_range[1]);
  if (j.contains("fg_translation"))
    m.fg_translation = parse_translation(j.at("fg_translation"));
  if (j.contains("fg_count_range")) {
    const json& v = j.at("fg_count_range");
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
        !v[1].is_number_integer())
      throw ConfigError("motion.fg_count_range must be [lo, hi] integers");
    m.fg_count_range[0] = v[0].get<int>();
    m.fg_count_range[1] = v[1].get<int>();
  }
  m.validate();
  return m;
}

Dims parse_dims(const json& j, const char* key, Dims dflt) {
  if (!j.contains(key)) return dflt;
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
      !v[1].is_number_integer())
    throw ConfigError(std::string(key) + " must be [width, height]");
  return Dims{v[0].get<int>(), v[1].get<int>()};
}

}  // namespace

GenerationConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  require_keys(j, "",
               {"motion", "canvas", "output", "placement_inset", "blur_kernel",
                "flow_paste_threshold", "alpha_threshold", "paste_alpha_frame"});
  GenerationConfig cfg;
  if (j.contains("motion")) cfg.motion = parse_motion(j.at("motion"));
  cfg.canvas = parse_dims(j, "canvas", cfg.canvas);
  cfg.output = parse_dims(j, "output", cfg.output);
  cfg.placement_inset =
      get_number(j, "", "placement_inset", cfg.placement_inset);
  if (j.contains("blur_kernel")) {
    if (!j.at("blur_kernel").is_number_integer())
      throw ConfigError("blur_kernel must be an integer");
    cfg.blur_kernel = j.at("blur_kernel").get<int>();
  }
  cfg.flow_paste_threshold =
      get_number(j, "", "flow_paste_threshold", cfg.flow_paste_threshold);
  cfg.alpha_threshold = get_number(j, "", "alpha_threshold", cfg.alpha_threshold);
  if (j.contains("paste_alpha_frame")) {
    const std::string v = j.at("paste_alpha_frame").get<std::string>();
    if (v == "reference")
      cfg.paste_alpha_frame = PasteAlphaFrame::Reference;
    else if (v == "target")
      cfg.paste_alpha_frame = PasteAlphaFrame::Target;
    else
      throw ConfigError("paste_alpha_frame must be reference|target");
  }
  cfg.validate();
  return cfg;
}

GenerationConfig read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(j);
}

json config_to_json(const GenerationConfig& cfg) {
  json t;
  switch (cfg.motion.fg_translation.kind) {
    case TranslationDist::Kind::Exponential:
      t = {{"kind", "exponential"},
           {"T", cfg.motion.fg_translation.temperature},
           {"max", cfg.motion.fg_translation.max}};
      break;
    case TranslationDist::Kind::UniformMagnitude:
      t = {{"kind", "uniform"}, {"max", cfg.motion.fg_translation.max}};
      break;
    case TranslationDist::Kind::CubedGaussian:
      t = {{"kind", "cubed_gaussian"},
           {"sigma", cfg.motion.fg_translation.sigma},
           {"clip", cfg.motion.fg_translation.clip}};
      break;
  }
  return json{
      {"motion",
       {{"bg_translation_range", cfg.motion.bg_translation_range},
        {"bg_zero_prob", cfg.motion.bg_zero_prob},
        {"fg_zero_prob", cfg.motion.fg_zero_prob},
        {"rotation_range", cfg.motion.rotation_range},
        {"scale_range", {cfg.motion.scale_range[0], cfg.motion.scale_range[1]}},
        {"fg_translation", t},
        {"fg_count_range",
         {cfg.motion.fg_count_range[0], cfg.motion.fg_count_range[1]}}}},
      {"canvas", {cfg.canvas.width, cfg.canvas.height}},
      {"output", {cfg.output.width, cfg.output.height}},
      {"placement_inset", cfg.placement_inset},
      {"blur_kernel", cfg.blur_kernel},
      {"flow_paste_threshold", cfg.flow_paste_threshold},
      {"alpha_threshold", cfg.alpha_threshold},
      {"paste_alpha_frame",
       cfg.paste_alpha_frame == PasteAlphaFrame::Reference ? "reference"
                                                           : "target"}};
}

std::string config_hash(const GenerationConfig& cfg) {
  const std::string canonical = config_to_json(cfg).dump();
  return sha256_bytes(canonical.data(), canonical.size());
}

}  // namespace flowgen
