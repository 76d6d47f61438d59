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

#include "flowgen/image_io.hpp"

#include <cmath>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "flowgen/error.hpp"

namespace flowgen {

uint8_t quantize8(float v) {
  const double scaled = std::clamp(static_cast<double>(v), 0.0, 1.0) * 255.0;
  // nearbyint under the default FE rounding mode is round-half-to-even.
  return static_cast<uint8_t>(std::nearbyint(scaled));
}

ImageBuffer read_image(const std::filesystem::path& path, int channels) {
  if (channels != 1 && channels != 3 && channels != 4)
    throw ParameterError("read_image: channels must be 1, 3 or 4");
  const int flag = channels == 1   ? cv::IMREAD_GRAYSCALE
                   : channels == 3 ? cv::IMREAD_COLOR
                                   : cv::IMREAD_UNCHANGED;
  cv::Mat mat = cv::imread(path.string(), flag);
  if (mat.empty())
    throw AssetError("cannot decode image: " + path.string());
  if (mat.rows <= 0 || mat.cols <= 0)
    throw AssetError("zero-size image: " + path.string());
  if (channels == 4) {
    if (mat.channels() == 3)
      cv::cvtColor(mat, mat, cv::COLOR_BGR2BGRA);
    else if (mat.channels() == 1)
      cv::cvtColor(mat, mat, cv::COLOR_GRAY2BGRA);
    else if (mat.channels() != 4)
      throw AssetError("unsupported channel count in " + path.string());
  }
  if (mat.depth() != CV_8U)
    mat.convertTo(mat, CV_8U, 255.0 / 65535.0);

  ImageBuffer out(mat.cols, mat.rows, channels);
  for (int y = 0; y < mat.rows; ++y) {
    const uint8_t* row = mat.ptr<uint8_t>(y);
    for (int x = 0; x < mat.cols; ++x) {
      if (channels == 1) {
        out.at(x, y, 0) = row[x] / 255.0f;
      } else {
        const uint8_t* px = row + x * channels;
        out.at(x, y, 0) = px[2] / 255.0f;  // BGR(A) -> RGB(A)
        out.at(x, y, 1) = px[1] / 255.0f;
        out.at(x, y, 2) = px[0] / 255.0f;
        if (channels == 4) out.at(x, y, 3) = px[3] / 255.0f;
      }
    }
  }
  return out;
}

void write_image_png(const ImageBuffer& img, const std::filesystem::path& path) {
  cv::Mat mat(img.height, img.width, CV_8UC(img.channels));
  for (int y = 0; y < img.height; ++y) {
    uint8_t* row = mat.ptr<uint8_t>(y);
    for (int x = 0; x < img.width; ++x) {
      if (img.channels == 1) {
        row[x] = quantize8(img.at(x, y, 0));
      } else {
        uint8_t* px = row + x * img.channels;
        px[2] = quantize8(img.at(x, y, 0));
        px[1] = quantize8(img.at(x, y, 1));
        px[0] = quantize8(img.at(x, y, 2));
        if (img.channels == 4) px[3] = quantize8(img.at(x, y, 3));
      }
    }
  }
  if (!cv::imwrite(path.string(), mat))
    throw Error("cannot write image: " + path.string());
}

void write_png16(const std::vector<uint16_t>& rgb, int width, int height,
                 const std::filesystem::path& path) {
  if (rgb.size() != static_cast<size_t>(width) * height * 3)
    throw ShapeError("write_png16: buffer size mismatch");
  cv::Mat mat(height, width, CV_16UC3);
  for (int y = 0; y < height; ++y) {
    uint16_t* row = mat.ptr<uint16_t>(y);
    for (int x = 0; x < width; ++x) {
      const uint16_t* px = rgb.data() + (static_cast<size_t>(y) * width + x) * 3;
      row[x * 3 + 2] = px[0];
      row[x * 3 + 1] = px[1];
      row[x * 3 + 0] = px[2];
    }
  }
  if (!cv::imwrite(path.string(), mat))
    throw Error("cannot write image: " + path.string());
}

std::vector<uint16_t> read_png16(const std::filesystem::path& path, int& width,
                                 int& height) {
  cv::Mat mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
  if (mat.empty()) throw FormatError("cannot decode image: " + path.string());
  if (mat.depth() != CV_16U || mat.channels() != 3)
    throw FormatError("expected 16-bit 3-channel PNG: " + path.string());
  width = mat.cols;
  height = mat.rows;
  std::vector<uint16_t> out(static_cast<size_t>(width) * height * 3);
  for (int y = 0; y < height; ++y) {
    const uint16_t* row = mat.ptr<uint16_t>(y);
    for (int x = 0; x < width; ++x) {
      uint16_t* px = out.data() + (static_cast<size_t>(y) * width + x) * 3;
      px[0] = row[x * 3 + 2];
      px[1] = row[x * 3 + 1];
      px[2] = row[x * 3 + 0];
    }
  }
  return out;
}

void write_mask_png(const BinaryMask& mask, const std::filesystem::path& path) {
  cv::Mat mat(mask.height, mask.width, CV_8UC1);
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x)
      mat.at<uint8_t>(y, x) = mask.at(x, y) ? 255 : 0;
  if (!cv::imwrite(path.string(), mat))
    throw Error("cannot write image: " + path.string());
}

BinaryMask read_mask_png(const std::filesystem::path& path) {
  cv::Mat mat = cv::imread(path.string(), cv::IMREAD_GRAYSCALE);
  if (mat.empty()) throw FormatError("cannot decode mask: " + path.string());
  BinaryMask out(mat.cols, mat.rows);
  for (int y = 0; y < mat.rows; ++y)
    for (int x = 0; x < mat.cols; ++x)
      out.at(x, y) = mat.at<uint8_t>(y, x) >= 128 ? 1 : 0;
  return out;
}

}  // namespace flowgen
