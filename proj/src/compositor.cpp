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

#include "flowgen/compositor.hpp"

#include <cmath>

#include "flowgen/config.hpp"
#include "flowgen/error.hpp"
#include "flowgen/occlusion.hpp"

namespace flowgen {

namespace {

IntRect clip_rect(IntRect r, Dims d) {
  r.x0 = std::max(r.x0, 0);
  r.y0 = std::max(r.y0, 0);
  r.x1 = std::min(r.x1, d.width);
  r.y1 = std::min(r.y1, d.height);
  return r;
}

IntRect expand_rect(IntRect r, int margin) {
  return {r.x0 - margin, r.y0 - margin, r.x1 + margin, r.y1 + margin};
}

IntRect union_rect(IntRect a, IntRect b) {
  if (a.degenerate()) return b;
  if (b.degenerate()) return a;
  return {std::min(a.x0, b.x0), std::min(a.y0, b.y0), std::max(a.x1, b.x1),
          std::max(a.y1, b.y1)};
}

IntRect full_rect(Dims d) { return {0, 0, d.width, d.height}; }

/// Degenerate boxes on hand-built layers fall back to the whole canvas.
IntRect effective_box(IntRect r, Dims d) {
  return r.degenerate() ? full_rect(d) : r;
}

/// Evaluate the layer flow on `box` only; everything else stays zero.
FlowField boxed_flow(const AffineTransform& a, Dims canvas, IntRect box) {
  FlowField flow(canvas.width, canvas.height);
  for (int y = box.y0; y < box.y1; ++y)
    for (int x = box.x0; x < box.x1; ++x) {
      const Vec2 m = a.apply({static_cast<double>(x), static_cast<double>(y)});
      flow.u(x, y) = static_cast<float>(m.x - x);
      flow.v(x, y) = static_cast<float>(m.y - y);
    }
  return flow;
}

}  // namespace

IntRect reference_cover(const AffineTransform& transform, IntRect target,
                        Dims canvas) {
  if (target.degenerate()) return {};
  const AffineTransform inv = transform.inverse();
  // A bilinear tap at A.x reaches one pixel beyond the box.
  const double cx[2] = {static_cast<double>(target.x0 - 1),
                        static_cast<double>(target.x1)};
  const double cy[2] = {static_cast<double>(target.y0 - 1),
                        static_cast<double>(target.y1)};
  double lo_x = 1e30, lo_y = 1e30, hi_x = -1e30, hi_y = -1e30;
  for (double px : cx)
    for (double py : cy) {
      const Vec2 p = inv.apply({px, py});
      lo_x = std::min(lo_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_x = std::max(hi_x, p.x);
      hi_y = std::max(hi_y, p.y);
    }
  const IntRect box{static_cast<int>(std::floor(lo_x)) - 1,
                    static_cast<int>(std::floor(lo_y)) - 1,
                    static_cast<int>(std::ceil(hi_x)) + 2,
                    static_cast<int>(std::ceil(hi_y)) + 2};
  return clip_rect(box, canvas);
}

void GenerationConfig::validate() const {
  motion.validate();
  if (canvas.width < 1 || canvas.height < 1)
    throw ConfigError("canvas dimensions must be >= 1");
  if (output.width > canvas.width || output.height > canvas.height)
    throw ConfigError("output must not exceed canvas");
  if (placement_inset < 0.0 || placement_inset >= 0.5)
    throw ConfigError("placement_inset must be in [0, 0.5)");
  if (blur_kernel < 0 || (blur_kernel > 0 && blur_kernel % 2 == 0))
    throw ConfigError("blur_kernel must be 0 or odd");
  if (flow_paste_threshold <= 0.0 || flow_paste_threshold >= 1.0)
    throw ConfigError("flow_paste_threshold must be in (0, 1)");
  if (alpha_threshold <= 0.0 || alpha_threshold >= 1.0)
    throw ConfigError("alpha_threshold must be in (0, 1)");
}

Scene compose_scene(Rng& rng, const AssetCatalog& catalog,
                    const GenerationConfig& cfg) {
  cfg.validate();
  if (catalog.backgrounds.empty() || catalog.segments.empty())
    throw AssetError("asset catalog is empty");

  Scene scene;
  scene.canvas = cfg.canvas;

  // Background layer.
  const auto& bg_entry = catalog.backgrounds[static_cast<size_t>(
      rng.uniform_int(0, static_cast<int64_t>(catalog.backgrounds.size()) - 1))];
  Layer bg;
  bg.index = 0;
  bg.image = load_background(bg_entry.abs_path, cfg.canvas);
  bg.alpha_t = ImageBuffer(cfg.canvas.width, cfg.canvas.height, 1, 1.0f);
  bg.affine = sample_background_motion(rng, cfg.motion, cfg.canvas);
  bg.transform = affine_from_params(bg.affine);
  bg.flow = flow_from_affine(bg.transform, cfg.canvas.width, cfg.canvas.height);
  bg.target_box = full_rect(cfg.canvas);
  bg.ref_box = full_rect(cfg.canvas);
  bg.source_id = bg_entry.rel_path;
  scene.layers.push_back(std::move(bg));

  const int count = sample_foreground_count(rng, cfg.motion);
  for (int i = 0; i < count; ++i) {
    const auto& seg_entry = catalog.segments[static_cast<size_t>(
        rng.uniform_int(0, static_cast<int64_t>(catalog.segments.size()) - 1))];
    Segment seg = load_segment(seg_entry.abs_path);
    if (cfg.blur_kernel > 1) seg = blur_segment(seg, cfg.blur_kernel);

    const Vec2 place = sample_placement(
        rng, cfg.canvas, Dims{seg.image.width, seg.image.height},
        cfg.placement_inset);
    const int ox = static_cast<int>(std::floor(place.x - seg.centroid.x + 0.5));
    const int oy = static_cast<int>(std::floor(place.y - seg.centroid.y + 0.5));

    Layer layer;
    layer.index = i + 1;
    layer.image = ImageBuffer(cfg.canvas.width, cfg.canvas.height, 3);
    layer.alpha_t = ImageBuffer(cfg.canvas.width, cfg.canvas.height, 1);
    for (int y = 0; y < seg.image.height; ++y) {
      const int cy = oy + y;
      if (cy < 0 || cy >= cfg.canvas.height) continue;
      for (int x = 0; x < seg.image.width; ++x) {
        const int cx = ox + x;
        if (cx < 0 || cx >= cfg.canvas.width) continue;
        for (int c = 0; c < 3; ++c)
          layer.image.at(cx, cy, c) = seg.image.at(x, y, c);
        layer.alpha_t.at(cx, cy, 0) = seg.image.at(x, y, 3);
      }
    }
    const Vec2 pivot{ox + seg.centroid.x, oy + seg.centroid.y};
    layer.affine = sample_foreground_motion(rng, cfg.motion, pivot);
    layer.transform = affine_from_params(layer.affine);
    layer.target_box = clip_rect(
        expand_rect({ox, oy, ox + seg.image.width, oy + seg.image.height}, 1),
        cfg.canvas);
    layer.ref_box = reference_cover(layer.transform, layer.target_box, cfg.canvas);
    layer.flow = boxed_flow(layer.transform, cfg.canvas,
                            union_rect(layer.target_box, layer.ref_box));
    layer.source_id = seg_entry.rel_path;
    scene.layers.push_back(std::move(layer));
  }
  return scene;
}

namespace {

void over_composite(ImageBuffer& dst, const ImageBuffer& rgb,
                    const ImageBuffer& alpha) {
  for (int y = 0; y < dst.height; ++y)
    for (int x = 0; x < dst.width; ++x) {
      const float a = alpha.at(x, y, 0);
      if (a <= 0.0f) continue;
      for (int c = 0; c < 3; ++c)
        dst.at(x, y, c) = rgb.at(x, y, c) * a + dst.at(x, y, c) * (1.0f - a);
    }
}

}  // namespace

ImageBuffer render_target(const Scene& scene) {
  if (scene.layers.empty()) throw ShapeError("scene has no layers");
  ImageBuffer out = scene.layers[0].image;
  for (size_t i = 1; i < scene.layers.size(); ++i)
    over_composite(out, scene.layers[i].image, scene.layers[i].alpha_t);
  return out;
}

ImageBuffer warped_reference_alpha(const Scene& scene, size_t layer) {
  const Layer& l = scene.layers.at(layer);
  if (layer == 0)
    return ImageBuffer(scene.canvas.width, scene.canvas.height, 1, 1.0f);
  // Outside ref_box the warped alpha is identically zero.
  ImageBuffer out(scene.canvas.width, scene.canvas.height, 1);
  const IntRect box = effective_box(l.ref_box, scene.canvas);
  for (int y = box.y0; y < box.y1; ++y)
    for (int x = box.x0; x < box.x1; ++x)
      out.at(x, y, 0) =
          bilinear_sample(l.alpha_t, x + l.flow.u(x, y), y + l.flow.v(x, y), 0,
                          BorderPolicy::Zero);
  return out;
}

ImageBuffer render_reference(const Scene& scene) {
  if (scene.layers.empty()) throw ShapeError("scene has no layers");
  ImageBuffer out = inverse_warp_image(scene.layers[0].image,
                                       scene.layers[0].flow,
                                       BorderPolicy::ClampToEdge);
  for (size_t i = 1; i < scene.layers.size(); ++i) {
    const Layer& l = scene.layers[i];
    const IntRect box = effective_box(l.ref_box, scene.canvas);
    for (int y = box.y0; y < box.y1; ++y)
      for (int x = box.x0; x < box.x1; ++x) {
        const double sx = x + l.flow.u(x, y);
        const double sy = y + l.flow.v(x, y);
        const float a = bilinear_sample(l.alpha_t, sx, sy, 0, BorderPolicy::Zero);
        if (a <= 0.0f) continue;
        for (int c = 0; c < 3; ++c) {
          const float v = bilinear_sample(l.image, sx, sy, c, BorderPolicy::Zero);
          out.at(x, y, c) = v * a + out.at(x, y, c) * (1.0f - a);
        }
      }
  }
  return out;
}

FlowField composite_flow(const Scene& scene, const GenerationConfig& cfg) {
  if (scene.layers.empty()) throw ShapeError("scene has no layers");
  FlowField out = scene.layers[0].flow;
  for (size_t i = 1; i < scene.layers.size(); ++i) {
    const Layer& l = scene.layers[i];
    const bool use_reference =
        cfg.paste_alpha_frame == PasteAlphaFrame::Reference;
    const IntRect box = effective_box(
        use_reference ? l.ref_box : l.target_box, scene.canvas);
    const ImageBuffer alpha =
        use_reference ? warped_reference_alpha(scene, i) : l.alpha_t;
    for (int y = box.y0; y < box.y1; ++y)
      for (int x = box.x0; x < box.x1; ++x)
        if (alpha.at(x, y, 0) >= cfg.flow_paste_threshold) {
          out.u(x, y) = l.flow.u(x, y);
          out.v(x, y) = l.flow.v(x, y);
        }
  }
  return out;
}

BinaryMask out_of_bounds_mask(const FlowField& flow, Dims canvas) {
  BinaryMask out(flow.width, flow.height);
  for (int y = 0; y < flow.height; ++y)
    for (int x = 0; x < flow.width; ++x) {
      const double tx = x + flow.u(x, y);
      const double ty = y + flow.v(x, y);
      if (tx < 0.0 || tx > canvas.width - 1 || ty < 0.0 || ty > canvas.height - 1)
        out.at(x, y) = 1;
    }
  return out;
}

namespace {

void crop_offsets(int w, int h, Dims output, int& ox, int& oy) {
  if (output.width > w || output.height > h)
    throw ShapeError("center_crop: input smaller than crop window");
  ox = (w - output.width) / 2;
  oy = (h - output.height) / 2;
}

}  // namespace

ImageBuffer center_crop(const ImageBuffer& img, Dims output) {
  int ox, oy;
  crop_offsets(img.width, img.height, output, ox, oy);
  ImageBuffer out(output.width, output.height, img.channels);
  for (int y = 0; y < output.height; ++y)
    for (int x = 0; x < output.width; ++x)
      for (int c = 0; c < img.channels; ++c)
        out.at(x, y, c) = img.at(x + ox, y + oy, c);
  return out;
}

FlowField center_crop(const FlowField& flow, Dims output) {
  int ox, oy;
  crop_offsets(flow.width, flow.height, output, ox, oy);
  FlowField out(output.width, output.height);
  for (int y = 0; y < output.height; ++y)
    for (int x = 0; x < output.width; ++x) {
      out.u(x, y) = flow.u(x + ox, y + oy);
      out.v(x, y) = flow.v(x + ox, y + oy);
    }
  return out;
}

BinaryMask center_crop(const BinaryMask& mask, Dims output) {
  int ox, oy;
  crop_offsets(mask.width, mask.height, output, ox, oy);
  BinaryMask out(output.width, output.height);
  for (int y = 0; y < output.height; ++y)
    for (int x = 0; x < output.width; ++x)
      out.at(x, y) = mask.at(x + ox, y + oy);
  return out;
}

Sample generate_sample(SampleSeed seed, const AssetCatalog& catalog,
                       const GenerationConfig& cfg) {
  Rng rng = Rng::derive(seed);
  const Scene scene = compose_scene(rng, catalog, cfg);

  Sample sample;
  sample.frame_b = center_crop(render_target(scene), cfg.output);
  sample.frame_a = center_crop(render_reference(scene), cfg.output);
  const FlowField flow = composite_flow(scene, cfg);
  sample.flow = center_crop(flow, cfg.output);
  sample.occlusion = center_crop(combined_occlusion(scene, cfg), cfg.output);
  sample.out_of_bounds = center_crop(out_of_bounds_mask(flow, cfg.canvas), cfg.output);
  sample.seed = seed;
  sample.config_hash = config_hash(cfg);
  return sample;
}

}  // namespace flowgen
