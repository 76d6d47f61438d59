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

#include <stdexcept>
#include <string>

namespace flowgen {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid numeric argument (non-finite coefficient, bad threshold, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Raster dimensions do not line up.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Broken or missing input asset (background, segment, catalog dir).
class AssetError : public Error {
 public:
  using Error::Error;
};

/// Malformed interchange file (.flo, KITTI PNG, ...).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Run-config schema violation; message names the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Metric requested over an empty valid set.
class MetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace flowgen
