// Copyright 2026 The Giffel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// giffel: GIF encoding toolkit.
//
//   giffel encode <input> <output.gif> [options]
//   giffel compare <corpus_dir> [options]
//   giffel banding <input> [--heatmap out.ppm]
//   giffel selftest [--fixtures dir] [--seed N]
//
// Exit codes: 0 success, 1 internal failure, 2 usage/input error.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "giffel/compare.h"
#include "giffel/gif.h"
#include "giffel/image_io.h"
#include "giffel/imageops.h"
#include "giffel/pipeline.h"
#include "giffel/selftest.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

#ifndef GIFFEL_DEFAULT_FIXTURE_DIR
#define GIFFEL_DEFAULT_FIXTURE_DIR ""
#endif

using namespace giffel;

std::vector<double> parse_double_list(const std::string& text, size_t expected,
                                      const std::string& flag) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(std::stod(item));
    } catch (...) {
      throw ConfigError(flag + ": cannot parse '" + item + "'");
    }
  }
  if (values.size() != expected) {
    throw ConfigError(flag + ": expected " + std::to_string(expected) + " values");
  }
  return values;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      values.push_back(std::stoi(item));
    } catch (...) {
      throw ConfigError(flag + ": cannot parse '" + item + "'");
    }
  }
  if (values.empty()) throw ConfigError(flag + ": empty list");
  return values;
}

std::string format_psnr(double v) {
  if (std::isinf(v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

// Shared encode-config flags; `given` collects which ones were set so file
// config and defaults can be overridden selectively (flags win).
struct ConfigFlags {
  std::string config_path;
  int np = 16;
  std::string pipeline = "classical";
  std::string weights;
  double eta = 1.5;
  std::string steps;
  std::string lrs;
  uint64_t seed = 1;
  bool serpentine = true;

  CLI::Option* np_opt = nullptr;
  CLI::Option* pipeline_opt = nullptr;
  CLI::Option* weights_opt = nullptr;
  CLI::Option* eta_opt = nullptr;
  CLI::Option* steps_opt = nullptr;
  CLI::Option* lr_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* serp_opt = nullptr;

  void attach(CLI::App* cmd, bool with_np = true) {
    cmd->add_option("--config", config_path, "JSON config file");
    if (with_np) np_opt = cmd->add_option("--np", np, "palette size (2..256)");
    pipeline_opt =
        cmd->add_option("--pipeline", pipeline, "classical or optimized");
    weights_opt = cmd->add_option(
        "--weights", weights, "loss weights lambda,gamma,delta,theta,beta");
    eta_opt = cmd->add_option("--eta", eta, "pyramid scale factor (>1)");
    steps_opt = cmd->add_option("--steps", steps, "stage steps s2,s3");
    lr_opt = cmd->add_option("--lr", lrs, "stage learning rates s2,s3");
    seed_opt = cmd->add_option("--seed", seed, "determinism seed");
    serp_opt = cmd->add_flag("--serpentine,!--no-serpentine", serpentine,
                             "serpentine Floyd-Steinberg scan");
  }

  EncodeConfig resolve() const {
    EncodeConfig c;
    if (!config_path.empty()) c = load_config_file(config_path);
    if (np_opt && np_opt->count()) c.np = np;
    if (pipeline_opt->count()) c.pipeline = pipeline_from_string(pipeline);
    if (weights_opt->count()) {
      const auto v = parse_double_list(weights, 5, "--weights");
      c.weights.lambda_fidelity = v[0];
      c.weights.gamma_error = v[1];
      c.weights.delta_banding = v[2];
      c.weights.theta_perceptual = v[3];
      c.weights.beta_palette = v[4];
    }
    if (eta_opt->count()) c.eta = eta;
    if (steps_opt->count()) {
      const auto v = parse_double_list(steps, 2, "--steps");
      c.schedule.stage2_steps = static_cast<int>(v[0]);
      c.schedule.stage3_steps = static_cast<int>(v[1]);
    }
    if (lr_opt->count()) {
      const auto v = parse_double_list(lrs, 2, "--lr");
      c.schedule.stage2_lr = v[0];
      c.schedule.stage3_lr = v[1];
    }
    if (seed_opt->count()) c.seed = seed;
    if (serp_opt->count()) c.fs_serpentine = serpentine;
    c.validate();
    return c;
  }
};

int cmd_encode(const std::string& input, const std::string& output,
               const ConfigFlags& flags) {
  if (!std::filesystem::exists(input)) {
    std::cerr << "giffel encode: no such input file: " << input << "\n";
    return kExitUsage;
  }
  const EncodeConfig config = flags.resolve();
  const auto start = std::chrono::steady_clock::now();
  const FloatImage img = read_image(input);
  const EncodeResult result = encode_image(img, config);
  write_gif_file(output, result.indexed);
  const double wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  std::printf("%s np=%d pipeline=%s psnr=%sdB ssim=%.4f banding=%.6f wall=%.0fms\n",
              input.c_str(), config.np, to_string(config.pipeline).c_str(),
              format_psnr(result.report.psnr_db).c_str(), result.report.ssim_score,
              result.report.banding_z, wall_ms);
  return kExitOk;
}

int cmd_compare(const std::string& corpus_dir, const std::string& np_list,
                const std::string& report_path, const std::string& gif_dir,
                int threads, const ConfigFlags& flags) {
  CompareOptions options;
  options.image_paths = list_corpus(corpus_dir);
  if (options.image_paths.empty()) {
    std::cerr << "giffel compare: no images in " << corpus_dir << "\n";
    return kExitUsage;
  }
  options.np_values = parse_int_list(np_list, "--np");
  options.base_config = flags.resolve();
  options.max_threads = threads;
  options.gif_dir = gif_dir;

  const MetricsReport report = run_compare(options);
  std::cout << report_to_table(report);
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw IoError("cannot write report " + report_path);
    out << report_to_json(report);
  }
  return kExitOk;
}

int cmd_banding(const std::string& input, const std::string& heatmap_path,
                double eta) {
  if (!std::filesystem::exists(input)) {
    std::cerr << "giffel banding: no such input file: " << input << "\n";
    return kExitUsage;
  }
  const FloatImage img = read_image(input);
  const BandingMap map = banding_inputs(img);
  double z = 0.0;
  for (double v : map.edge_map.data()) z += v;
  z /= static_cast<double>(map.edge_map.size());
  std::printf("Z = %.9f\n", z);

  if (!heatmap_path.empty()) {
    FloatImage heat = map.edge_map;
    double max_e = 0.0;
    for (double v : heat.data()) max_e = std::max(max_e, v);
    if (max_e > 0.0) {
      for (double& v : heat.data()) v /= max_e;  // display normalization only
    }
    write_ppm(heatmap_path, heat);
  }

  try {
    const double b = multiscale_banding(img, eta, nullptr);
    std::printf("B_%.3g = %.9f\n", eta, b);
  } catch (const SizeError& e) {
    std::cerr << "giffel banding: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int cmd_selftest(const std::string& fixtures_dir, uint64_t seed) {
  const auto results = run_selftest(fixtures_dir, seed);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] %s%s%s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.message.empty() ? "" : ": ", r.message.c_str());
    if (!r.passed) ++failed;
  }
  std::printf("%zu checks, %d failed\n", results.size(), failed);
  return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"giffel: GIF encoding toolkit"};
  app.require_subcommand(1);

  // encode
  auto* encode = app.add_subcommand("encode", "encode one image to GIF");
  std::string enc_input, enc_output;
  encode->add_option("input", enc_input, "input image (.ppm/.png)")->required();
  encode->add_option("output", enc_output, "output GIF path")->required();
  ConfigFlags enc_flags;
  enc_flags.attach(encode);

  // compare
  auto* compare = app.add_subcommand("compare", "run the corpus comparison");
  std::string cmp_dir, cmp_np = "16,32,64,128,256", cmp_report, cmp_gif_dir;
  int cmp_threads = 0;
  compare->add_option("corpus", cmp_dir, "directory of images")->required();
  compare->add_option("--np", cmp_np, "comma-separated palette sizes");
  compare->add_option("--report", cmp_report, "JSON report output path");
  compare->add_option("--gif-dir", cmp_gif_dir, "directory for encoded GIFs");
  compare->add_option("--threads", cmp_threads, "worker threads (0 = auto)");
  ConfigFlags cmp_flags;
  cmp_flags.attach(compare, /*with_np=*/false);  // compare owns --np as a list

  // banding
  auto* banding = app.add_subcommand("banding", "banding score and heatmap");
  std::string band_input, band_heatmap;
  double band_eta = 1.5;
  banding->add_option("input", band_input, "input image")->required();
  banding->add_option("--heatmap", band_heatmap, "write edge-map PPM here");
  banding->add_option("--eta", band_eta, "pyramid scale factor");

  // selftest
  auto* selftest = app.add_subcommand("selftest", "run embedded invariants");
  std::string st_fixtures = GIFFEL_DEFAULT_FIXTURE_DIR;
  uint64_t st_seed = 1;
  selftest->add_option("--fixtures", st_fixtures, "fixture directory");
  selftest->add_option("--seed", st_seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (encode->parsed()) return cmd_encode(enc_input, enc_output, enc_flags);
    if (compare->parsed()) {
      return cmd_compare(cmp_dir, cmp_np, cmp_report, cmp_gif_dir, cmp_threads,
                         cmp_flags);
    }
    if (banding->parsed()) return cmd_banding(band_input, band_heatmap, band_eta);
    if (selftest->parsed()) return cmd_selftest(st_fixtures, st_seed);
  } catch (const ConfigError& e) {
    std::cerr << "giffel: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "giffel: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    std::cerr << "giffel: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "giffel: internal error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
