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

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "flowgen/config.hpp"
#include "flowgen/error.hpp"
#include "flowgen/generator.hpp"
#include "flowgen/image_io.hpp"
#include "flowgen/metrics.hpp"
#include "flowgen/visualize.hpp"

using nlohmann::json;
namespace fs = std::filesystem;
using namespace flowgen;

namespace {

// Exit codes: 0 success, 1 validation failure, 2 usage/config error.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::string asset_dir;
  uint64_t samples = 1;
  uint64_t seed = 0;
  int workers = 1;
  bool kitti = false;
  bool oob_mask = false;
  std::string distribution;
  std::string fg_count;
  int blur_kernel = -1;
};

fs::path resolve_assets(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("FLOWGEN_ASSET_DIR")) return env;
  throw ConfigError("no asset directory: pass --assets or set FLOWGEN_ASSET_DIR");
}

GenerationConfig build_config(const CommonOpts& o) {
  GenerationConfig cfg;
  if (!o.config_path.empty()) cfg = read_config(o.config_path);
  if (!o.distribution.empty()) {
    if (o.distribution == "exp")
      cfg.motion.fg_translation = TranslationDist::exponential();
    else if (o.distribution == "uniform")
      cfg.motion.fg_translation = TranslationDist::uniform_magnitude();
    else if (o.distribution == "cubed-gaussian")
      cfg.motion.fg_translation = TranslationDist::cubed_gaussian();
    else
      throw ConfigError("--distribution must be exp|uniform|cubed-gaussian");
  }
  if (!o.fg_count.empty()) {
    int lo = 0, hi = 0;
    if (std::sscanf(o.fg_count.c_str(), "%d..%d", &lo, &hi) != 2)
      throw ConfigError("--fg-count expects LO..HI");
    cfg.motion.fg_count_range[0] = lo;
    cfg.motion.fg_count_range[1] = hi;
  }
  if (o.blur_kernel >= 0) cfg.blur_kernel = o.blur_kernel;
  cfg.validate();
  return cfg;
}

int cmd_generate(const CommonOpts& o) {
  GenerationRun run;
  run.config = build_config(o);
  run.asset_dir = resolve_assets(o.asset_dir);
  run.output_dir = o.out_dir;
  run.master_seed = o.seed;
  run.sample_count = o.samples;
  run.workers = o.workers;
  run.options.kitti = o.kitti;
  run.options.oob_mask = o.oob_mask;

  const auto t0 = std::chrono::steady_clock::now();
  const DatasetManifest manifest = run_generation(run);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::cerr << "generated " << manifest.sample_count << " pairs in " << secs
            << " s (" << manifest.sample_count / secs << " pairs/s)\n";
  std::cout << json{{"samples", manifest.sample_count},
                    {"seconds", secs},
                    {"pairs_per_second", manifest.sample_count / secs},
                    {"output_dir", o.out_dir},
                    {"config_hash", manifest.config_hash}}
                   .dump(2)
            << "\n";
  return kExitOk;
}

int cmd_validate(const std::string& dataset_dir) {
  const ValidationReport report = validate_dataset(dataset_dir);
  json issues = json::array();
  for (const auto& i : report.issues)
    issues.push_back({{"sample", i.sample}, {"check", i.check}, {"detail", i.detail}});
  std::cout << json{{"samples_checked", report.samples_checked},
                    {"max_photometric_error", report.max_photometric_error},
                    {"ok", report.ok()},
                    {"issues", issues}}
                   .dump(2)
            << "\n";
  return report.ok() ? kExitOk : kExitValidation;
}

int cmd_stats(const std::string& dataset_dir, const std::string& out_dir) {
  const DatasetManifest manifest =
      read_manifest(fs::path(dataset_dir) / "manifest.json");
  if (manifest.samples.empty()) throw ConfigError("dataset is empty");

  MotionHistogram hist;
  double mean_mag = 0.0;
  uint64_t pixels = 0;
  for (const auto& entry : manifest.samples) {
    const FlowField flow = read_flo(fs::path(dataset_dir) / entry.rel_dir / "flow.flo");
    hist.accumulate(flow);
    for (int y = 0; y < flow.height; ++y)
      for (int x = 0; x < flow.width; ++x)
        mean_mag += std::hypot((double)flow.u(x, y), (double)flow.v(x, y));
    pixels += flow.pixel_count();
  }
  mean_mag /= static_cast<double>(pixels);

  const fs::path out = out_dir.empty() ? fs::path(dataset_dir) : fs::path(out_dir);
  fs::create_directories(out);
  hist.write_csv(out / "motion_histogram.csv");
  write_image_png(histogram_chart(hist), out / "motion_histogram.png");

  std::cout << json{{"samples", manifest.samples.size()},
                    {"pixels", pixels},
                    {"mean_flow_magnitude", mean_mag},
                    {"histogram_csv", (out / "motion_histogram.csv").string()},
                    {"histogram_png", (out / "motion_histogram.png").string()}}
                   .dump(2)
            << "\n";
  return kExitOk;
}

int cmd_preview(const std::string& sample_dir, const std::string& out_dir) {
  const fs::path dir(sample_dir);
  const FlowField flow = read_flo(dir / "flow.flo");
  const fs::path out = out_dir.empty() ? dir : fs::path(out_dir);
  fs::create_directories(out);
  write_image_png(flow_to_color(flow), out / "flow_vis.png");
  if (fs::exists(dir / "frame_a.png") && fs::exists(dir / "occ.png")) {
    const ImageBuffer frame = read_image(dir / "frame_a.png", 3);
    const BinaryMask occ = read_mask_png(dir / "occ.png");
    write_image_png(occlusion_overlay(frame, occ), out / "occ_overlay.png");
  }
  std::cout << json{{"flow_vis", (out / "flow_vis.png").string()}}.dump(2) << "\n";
  return kExitOk;
}

int cmd_bench(const CommonOpts& o) {
  fs::path assets;
  fs::path scratch = fs::temp_directory_path() / "flowgen_bench";
  if (!o.asset_dir.empty() || std::getenv("FLOWGEN_ASSET_DIR")) {
    assets = resolve_assets(o.asset_dir);
  } else {
    assets = scratch / "assets";
    std::cerr << "no asset dir given; using a procedural corpus\n";
    make_demo_assets(assets, 1, 8, 24);
  }

  json results = json::array();
  for (int fg : {2, 7, 15}) {
    GenerationRun run;
    run.config = build_config(o);
    run.config.motion.fg_count_range[0] = fg;
    run.config.motion.fg_count_range[1] = fg;
    run.asset_dir = assets;
    run.output_dir = scratch / ("out_fg" + std::to_string(fg));
    run.master_seed = o.seed;
    run.sample_count = o.samples;
    run.workers = o.workers;
    const auto t0 = std::chrono::steady_clock::now();
    run_generation(run);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "fg=" << fg << ": " << o.samples << " pairs in " << secs << " s\n";
    results.push_back({{"foregrounds", fg},
                       {"pairs", o.samples},
                       {"seconds", secs},
                       {"pairs_per_second", o.samples / secs}});
    fs::remove_all(run.output_dir);
  }
  std::cout << json{{"workers", o.workers}, {"results", results}}.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic optical-flow dataset generator"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string dataset_dir, out_dir;

  auto add_common = [&](CLI::App* sub, bool with_gen_flags) {
    sub->add_option("--config", opts.config_path, "JSON run config");
    if (with_gen_flags) {
      sub->add_option("--assets", opts.asset_dir,
                      "asset root with backgrounds/ and segments/ "
                      "(default: $FLOWGEN_ASSET_DIR)");
      sub->add_option("--samples", opts.samples, "number of pairs");
      sub->add_option("--seed", opts.seed, "master seed");
      sub->add_option("--workers", opts.workers, "worker threads")
          ->check(CLI::PositiveNumber);
      sub->add_option("--distribution", opts.distribution,
                      "foreground translation law: exp|uniform|cubed-gaussian");
      sub->add_option("--fg-count", opts.fg_count, "foreground count range LO..HI");
      sub->add_option("--blur-kernel", opts.blur_kernel,
                      "Gaussian blur kernel for foregrounds (odd, 0 = off)");
    }
  };

  CLI::App* gen = app.add_subcommand("generate", "Generate a dataset");
  add_common(gen, true);
  gen->add_option("--out", opts.out_dir, "output directory")->required();
  gen->add_flag("--kitti", opts.kitti, "also write KITTI-style 16-bit flow PNGs");
  gen->add_flag("--oob-mask", opts.oob_mask,
                "also write occlusion-union-out-of-bounds masks");

  CLI::App* val = app.add_subcommand("validate", "Re-check an existing dataset");
  val->add_option("dataset", dataset_dir, "dataset directory")->required();

  CLI::App* stats = app.add_subcommand("stats", "Dataset motion statistics");
  stats->add_option("dataset", dataset_dir, "dataset directory")->required();
  stats->add_option("--out", out_dir, "where to write CSV/PNG (default: dataset)");

  CLI::App* bench = app.add_subcommand("bench", "Generation throughput benchmark");
  add_common(bench, true);
  opts.samples = 1;

  CLI::App* preview = app.add_subcommand("preview", "Flow/occlusion visualizations");
  preview->add_option("sample", dataset_dir, "sample directory")->required();
  preview->add_option("--out", out_dir, "where to write PNGs (default: sample dir)");

  bench->parse_complete_callback([&] {
    if (bench->count("--samples") == 0) opts.samples = 100;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(opts);
    if (val->parsed()) return cmd_validate(dataset_dir);
    if (stats->parsed()) return cmd_stats(dataset_dir, out_dir);
    if (bench->parsed()) return cmd_bench(opts);
    if (preview->parsed()) return cmd_preview(dataset_dir, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
