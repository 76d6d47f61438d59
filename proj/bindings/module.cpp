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

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <nlohmann/json.hpp>

#include "flowgen/config.hpp"
#include "flowgen/error.hpp"
#include "flowgen/generator.hpp"
#include "flowgen/metrics.hpp"
#include "flowgen/visualize.hpp"

namespace py = pybind11;
using namespace flowgen;

namespace {

py::array_t<float> image_to_array(const ImageBuffer& img) {
  if (img.channels == 1) {
    py::array_t<float> arr({img.height, img.width});
    std::copy(img.data.begin(), img.data.end(), arr.mutable_data());
    return arr;
  }
  py::array_t<float> arr({img.height, img.width, img.channels});
  std::copy(img.data.begin(), img.data.end(), arr.mutable_data());
  return arr;
}

ImageBuffer array_to_image(py::array_t<float, py::array::c_style | py::array::forcecast> arr) {
  if (arr.ndim() != 2 && arr.ndim() != 3)
    throw ShapeError("image array must be HxW or HxWxC");
  const int h = static_cast<int>(arr.shape(0));
  const int w = static_cast<int>(arr.shape(1));
  const int c = arr.ndim() == 3 ? static_cast<int>(arr.shape(2)) : 1;
  ImageBuffer img(w, h, c);
  std::copy(arr.data(), arr.data() + img.data.size(), img.data.begin());
  return img;
}

py::array_t<float> flow_to_array(const FlowField& flow) {
  py::array_t<float> arr({flow.height, flow.width, 2});
  std::copy(flow.data.begin(), flow.data.end(), arr.mutable_data());
  return arr;
}

FlowField array_to_flow(py::array_t<float, py::array::c_style | py::array::forcecast> arr) {
  if (arr.ndim() != 3 || arr.shape(2) != 2)
    throw ShapeError("flow array must be HxWx2");
  FlowField flow(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)));
  std::copy(arr.data(), arr.data() + flow.data.size(), flow.data.begin());
  return flow;
}

py::array_t<uint8_t> mask_to_array(const BinaryMask& mask) {
  py::array_t<uint8_t> arr({mask.height, mask.width});
  std::copy(mask.data.begin(), mask.data.end(), arr.mutable_data());
  return arr;
}

BinaryMask array_to_mask(py::array_t<uint8_t, py::array::c_style | py::array::forcecast> arr) {
  if (arr.ndim() != 2) throw ShapeError("mask array must be HxW");
  BinaryMask mask(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)));
  for (size_t i = 0; i < mask.data.size(); ++i)
    mask.data[i] = arr.data()[i] ? 1 : 0;
  return mask;
}

AffineTransform array_to_affine(py::array_t<double, py::array::c_style | py::array::forcecast> arr) {
  if (arr.ndim() != 2 || arr.shape(0) != 3 || arr.shape(1) != 3)
    throw ShapeError("affine matrix must be 3x3");
  AffineTransform t;
  std::copy(arr.data(), arr.data() + 9, t.m.begin());
  return t;
}

GenerationConfig config_from_obj(const py::object& obj) {
  if (obj.is_none()) return GenerationConfig{};
  const std::string text = py::str(py::module_::import("json").attr("dumps")(obj));
  return parse_config(nlohmann::json::parse(text));
}

BorderPolicy border_from_str(const std::string& s) {
  if (s == "clamp") return BorderPolicy::ClampToEdge;
  if (s == "zero") return BorderPolicy::Zero;
  throw ParameterError("border must be 'clamp' or 'zero'");
}

}  // namespace

PYBIND11_MODULE(_flowgen, m) {
  m.doc() = "Synthetic optical-flow dataset generation core";

  py::register_exception<Error>(m, "FlowgenError");

  m.def(
      "make_affine",
      [](std::pair<double, double> translation, double rotation, double scale,
         std::pair<double, double> pivot) {
        AffineParams p;
        p.translation = {translation.first, translation.second};
        p.rotation = rotation;
        p.scale = scale;
        p.pivot = {pivot.first, pivot.second};
        const AffineTransform t = affine_from_params(p);
        py::array_t<double> arr({3, 3});
        std::copy(t.m.begin(), t.m.end(), arr.mutable_data());
        return arr;
      },
      py::arg("translation") = std::pair<double, double>{0.0, 0.0},
      py::arg("rotation") = 0.0, py::arg("scale") = 1.0,
      py::arg("pivot") = std::pair<double, double>{0.0, 0.0});

  m.def(
      "flow_from_affine",
      [](py::array_t<double, py::array::c_style | py::array::forcecast> matrix,
         int width, int height) {
        return flow_to_array(flow_from_affine(array_to_affine(matrix), width, height));
      },
      py::arg("matrix"), py::arg("width"), py::arg("height"));

  m.def(
      "inverse_warp_image",
      [](py::array_t<float, py::array::c_style | py::array::forcecast> image,
         py::array_t<float, py::array::c_style | py::array::forcecast> flow,
         const std::string& border) {
        return image_to_array(inverse_warp_image(
            array_to_image(image), array_to_flow(flow), border_from_str(border)));
      },
      py::arg("image"), py::arg("flow"), py::arg("border") = "clamp");

  m.def(
      "generate_sample",
      [](uint64_t master_seed, uint64_t index, const std::filesystem::path& asset_dir,
         const py::object& config) {
        const GenerationConfig cfg = config_from_obj(config);
        const AssetCatalog catalog =
            build_catalog(asset_dir / "backgrounds", asset_dir / "segments");
        const Sample s =
            generate_sample(SampleSeed{master_seed, index}, catalog, cfg);
        py::dict out;
        out["frame_a"] = image_to_array(s.frame_a);
        out["frame_b"] = image_to_array(s.frame_b);
        out["flow"] = flow_to_array(s.flow);
        out["occlusion"] = mask_to_array(s.occlusion);
        out["out_of_bounds"] = mask_to_array(s.out_of_bounds);
        out["config_hash"] = s.config_hash;
        return out;
      },
      py::arg("master_seed"), py::arg("index"), py::arg("asset_dir"),
      py::arg("config") = py::none());

  m.def(
      "generate_dataset",
      [](const std::filesystem::path& asset_dir, const std::filesystem::path& out_dir,
         uint64_t samples, uint64_t seed, int workers, const py::object& config,
         bool kitti, bool oob_mask) {
        GenerationRun run;
        run.config = config_from_obj(config);
        run.asset_dir = asset_dir;
        run.output_dir = out_dir;
        run.master_seed = seed;
        run.sample_count = samples;
        run.workers = workers;
        run.options.kitti = kitti;
        run.options.oob_mask = oob_mask;
        const DatasetManifest manifest = run_generation(run);
        return py::make_tuple(manifest.sample_count, manifest.config_hash);
      },
      py::arg("asset_dir"), py::arg("out_dir"), py::arg("samples"),
      py::arg("seed") = 0, py::arg("workers") = 1, py::arg("config") = py::none(),
      py::arg("kitti") = false, py::arg("oob_mask") = false);

  m.def("read_flo",
        [](const std::filesystem::path& path) { return flow_to_array(read_flo(path)); });
  m.def("write_flo",
        [](py::array_t<float, py::array::c_style | py::array::forcecast> flow,
           const std::filesystem::path& path) { write_flo(array_to_flow(flow), path); });

  m.def("epe", [](py::array_t<float, py::array::c_style | py::array::forcecast> est,
                  py::array_t<float, py::array::c_style | py::array::forcecast> gt,
                  py::array_t<uint8_t, py::array::c_style | py::array::forcecast> valid) {
    return epe(array_to_flow(est), array_to_flow(gt), array_to_mask(valid));
  });
  m.def("fl_rate", [](py::array_t<float, py::array::c_style | py::array::forcecast> est,
                      py::array_t<float, py::array::c_style | py::array::forcecast> gt,
                      py::array_t<uint8_t, py::array::c_style | py::array::forcecast> valid) {
    return fl_rate(array_to_flow(est), array_to_flow(gt), array_to_mask(valid));
  });
  m.def("acc_le1", [](py::array_t<float, py::array::c_style | py::array::forcecast> est,
                      py::array_t<float, py::array::c_style | py::array::forcecast> gt,
                      py::array_t<uint8_t, py::array::c_style | py::array::forcecast> valid) {
    return acc_le1(array_to_flow(est), array_to_flow(gt), array_to_mask(valid));
  });

  m.def("flow_to_color",
        [](py::array_t<float, py::array::c_style | py::array::forcecast> flow,
           double max_magnitude) {
          return image_to_array(flow_to_color(array_to_flow(flow), max_magnitude));
        },
        py::arg("flow"), py::arg("max_magnitude") = -1.0);

  m.def("make_demo_assets", &make_demo_assets, py::arg("dir"), py::arg("seed") = 0,
        py::arg("background_count") = 8, py::arg("segment_count") = 24);
}
