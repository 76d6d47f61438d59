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

#include "flowgen/assets.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <openssl/evp.h>

#include "flowgen/error.hpp"
#include "flowgen/image_io.hpp"

namespace fs = std::filesystem;

namespace flowgen {

namespace {

std::string hex(const unsigned char* d, unsigned len) {
  static const char* k = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(k[d[i] >> 4]);
    out.push_back(k[d[i] & 0xf]);
  }
  return out;
}

std::vector<double> gaussian_kernel(int size) {
  const double sigma = 0.3 * ((size - 1) / 2 - 1) + 0.8;
  std::vector<double> k(size);
  const int half = size / 2;
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    const double d = i - half;
    k[i] = std::exp(-d * d / (2.0 * sigma * sigma));
    sum += k[i];
  }
  for (double& v : k) v /= sum;
  return k;
}

std::vector<CatalogEntry> scan_dir(const fs::path& dir) {
  if (!fs::is_directory(dir))
    throw AssetError("asset directory does not exist: " + dir.string());
  std::vector<CatalogEntry> entries;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    CatalogEntry entry;
    entry.abs_path = e.path();
    entry.rel_path = fs::relative(e.path(), dir).generic_string();
    entries.push_back(std::move(entry));
  }
  if (entries.empty())
    throw AssetError("asset directory is empty: " + dir.string());
  std::sort(entries.begin(), entries.end(),
            [](const CatalogEntry& a, const CatalogEntry& b) {
              return a.rel_path < b.rel_path;
            });
  for (auto& entry : entries) entry.sha256 = sha256_file(entry.abs_path);
  return entries;
}

}  // namespace

std::string sha256_bytes(const void* data, size_t size) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  if (!EVP_Digest(data, size, digest, &len, EVP_sha256(), nullptr))
    throw Error("sha256 computation failed");
  return hex(digest, len);
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AssetError("cannot open file: " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0)
    EVP_DigestUpdate(ctx, buf, static_cast<size_t>(in.gcount()));
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned len = 0;
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  return hex(digest, len);
}

ImageBuffer resize_bilinear(const ImageBuffer& src, Dims target) {
  if (src.width == target.width && src.height == target.height) return src;
  ImageBuffer out(target.width, target.height, src.channels);
  const double sx = static_cast<double>(src.width) / target.width;
  const double sy = static_cast<double>(src.height) / target.height;
  for (int y = 0; y < target.height; ++y) {
    const double srcy = (y + 0.5) * sy - 0.5;
    for (int x = 0; x < target.width; ++x) {
      const double srcx = (x + 0.5) * sx - 0.5;
      for (int c = 0; c < src.channels; ++c)
        out.at(x, y, c) =
            bilinear_sample(src, srcx, srcy, c, BorderPolicy::ClampToEdge);
    }
  }
  return out;
}

ImageBuffer load_background(const fs::path& path, Dims target) {
  return resize_bilinear(read_image(path, 3), target);
}

Segment make_segment(const ImageBuffer& rgba, std::string source_id) {
  if (rgba.channels != 4) throw AssetError("segment must be RGBA: " + source_id);
  int x0 = rgba.width, x1 = -1, y0 = rgba.height, y1 = -1;
  size_t solid = 0;
  for (int y = 0; y < rgba.height; ++y) {
    for (int x = 0; x < rgba.width; ++x) {
      const float a = rgba.at(x, y, 3);
      if (a > 0.0f) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
      if (a > 0.4f) ++solid;
    }
  }
  if (x1 < 0) throw AssetError("segment is fully transparent: " + source_id);
  if (solid * 100 < rgba.pixel_count())
    throw AssetError("segment has < 1% pixels with alpha > 0.4: " + source_id);

  Segment s;
  s.source_id = std::move(source_id);
  s.image = ImageBuffer(x1 - x0 + 1, y1 - y0 + 1, 4);
  double wsum = 0.0, cx = 0.0, cy = 0.0;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      for (int c = 0; c < 4; ++c)
        s.image.at(x - x0, y - y0, c) = rgba.at(x, y, c);
      const double a = rgba.at(x, y, 3);
      wsum += a;
      cx += a * (x - x0);
      cy += a * (y - y0);
    }
  }
  s.centroid = {cx / wsum, cy / wsum};
  return s;
}

Segment load_segment(const fs::path& path) {
  return make_segment(read_image(path, 4), path.filename().string());
}

Segment blur_segment(const Segment& s, int kernel) {
  if (kernel < 1 || kernel % 2 == 0)
    throw ParameterError("blur kernel must be odd and >= 1");
  if (kernel == 1) return s;
  const std::vector<double> k = gaussian_kernel(kernel);
  const int half = kernel / 2;
  const int w = s.image.width, h = s.image.height;

  // Separable pass, clamp-to-edge taps.
  ImageBuffer tmp(w, h, 4), out = s.image;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (int i = -half; i <= half; ++i)
          acc += k[i + half] * s.image.at(std::clamp(x + i, 0, w - 1), y, c);
        tmp.at(x, y, c) = static_cast<float>(acc);
      }
      tmp.at(x, y, 3) = s.image.at(x, y, 3);
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c) {
        double acc = 0.0;
        for (int i = -half; i <= half; ++i)
          acc += k[i + half] * tmp.at(x, std::clamp(y + i, 0, h - 1), c);
        out.at(x, y, c) = static_cast<float>(acc);
      }

  Segment blurred;
  blurred.image = std::move(out);
  blurred.centroid = s.centroid;
  blurred.source_id = s.source_id;
  return blurred;
}

AssetCatalog build_catalog(const fs::path& bg_dir, const fs::path& seg_dir) {
  AssetCatalog catalog;
  catalog.backgrounds = scan_dir(bg_dir);
  catalog.segments = scan_dir(seg_dir);
  for (const auto& e : catalog.backgrounds) {
    try {
      read_image(e.abs_path, 3);
    } catch (const AssetError&) {
      throw AssetError("undecodable background: " + e.rel_path);
    }
  }
  for (const auto& e : catalog.segments) {
    try {
      load_segment(e.abs_path);
    } catch (const AssetError& err) {
      throw AssetError("bad segment " + e.rel_path + ": " + err.what());
    }
  }
  return catalog;
}

void make_demo_assets(const fs::path& dir, uint64_t seed, int background_count,
                      int segment_count) {
  fs::create_directories(dir / "backgrounds");
  fs::create_directories(dir / "segments");
  Rng rng = Rng::derive(seed, 0xA55E75ull);

  for (int i = 0; i < background_count; ++i) {
    // Sum of random low-frequency cosines; smooth but textured.
    const int w = 712, h = 584;
    ImageBuffer img(w, h, 3);
    for (int c = 0; c < 3; ++c) {
      double fx[4], fy[4], ph[4], amp[4];
      for (int k = 0; k < 4; ++k) {
        fx[k] = rng.uniform(0.5, 8.0) * 2.0 * M_PI / w;
        fy[k] = rng.uniform(0.5, 8.0) * 2.0 * M_PI / h;
        ph[k] = rng.uniform(0.0, 2.0 * M_PI);
        amp[k] = rng.uniform(0.05, 0.25);
      }
      const double base = rng.uniform(0.25, 0.75);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          double v = base;
          for (int k = 0; k < 4; ++k)
            v += amp[k] * std::cos(fx[k] * x + fy[k] * y + ph[k]);
          img.at(x, y, c) = static_cast<float>(std::clamp(v, 0.0, 1.0));
        }
    }
    char name[32];
    std::snprintf(name, sizeof name, "bg_%03d.png", i);
    write_image_png(img, dir / "backgrounds" / name);
  }

  for (int i = 0; i < segment_count; ++i) {
    const int w = static_cast<int>(rng.uniform_int(60, 180));
    const int h = static_cast<int>(rng.uniform_int(60, 180));
    ImageBuffer img(w, h, 4);
    const int shape = static_cast<int>(rng.uniform_int(0, 2));
    const double cx = w / 2.0, cy = h / 2.0;
    const double rx = rng.uniform(0.3, 0.45) * w;
    const double ry = rng.uniform(0.3, 0.45) * h;
    const double angle = rng.uniform(0.0, M_PI);
    double stripe = rng.uniform(0.15, 0.6);
    float col[2][3];
    for (int j = 0; j < 2; ++j)
      for (int c = 0; c < 3; ++c) col[j][c] = static_cast<float>(rng.uniform(0.0, 1.0));
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        const double dx = x - cx, dy = y - cy;
        bool inside = false;
        switch (shape) {
          case 0:  // ellipse
            inside = dx * dx / (rx * rx) + dy * dy / (ry * ry) <= 1.0;
            break;
          case 1:  // rectangle
            inside = std::abs(dx) <= rx && std::abs(dy) <= ry;
            break;
          default:  // diamond
            inside = std::abs(dx) / rx + std::abs(dy) / ry <= 1.0;
            break;
        }
        if (!inside) continue;
        const double t = std::cos((dx * std::cos(angle) + dy * std::sin(angle)) * stripe);
        const int j = t > 0.0 ? 0 : 1;
        for (int c = 0; c < 3; ++c) img.at(x, y, c) = col[j][c];
        img.at(x, y, 3) = 1.0f;  // hard edge
      }
    char name[32];
    std::snprintf(name, sizeof name, "seg_%03d.png", i);
    write_image_png(img, dir / "segments" / name);
  }
}

}  // namespace flowgen
