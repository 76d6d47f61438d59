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
#include <string>

#include <nlohmann/json_fwd.hpp>

namespace flowgen {

struct GenerationConfig;

/// Strict JSON -> config: absent fields take the standard-recipe defaults,
/// unknown or out-of-range fields raise ConfigError naming the field.
GenerationConfig parse_config(const nlohmann::json& j);
GenerationConfig read_config(const std::filesystem::path& path);

nlohmann::json config_to_json(const GenerationConfig& cfg);

/// SHA-256 of the canonical (sorted-key, fully populated) JSON form.
std::string config_hash(const GenerationConfig& cfg);

}  // namespace flowgen
