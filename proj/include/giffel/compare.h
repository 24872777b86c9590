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
// Corpus runner: encodes every image with the classical pipeline, the
// optimized pipeline, and the optimized pipeline with the banding weight
// zeroed, then aggregates per-configuration means. Images may be processed
// in parallel; row order is always (file, np, pipeline).

#ifndef GIFFEL_COMPARE_H_
#define GIFFEL_COMPARE_H_

#include <optional>
#include <string>
#include <vector>

#include "giffel/config.h"
#include "giffel/pipeline.h"

namespace giffel {

struct MetricsRow {
  std::string file;
  int np = 0;
  std::string pipeline;
  double psnr_db = 0.0;
  double ssim = 0.0;
  double banding_score = 0.0;
  double wall_ms = 0.0;
  // Palette diagnostics, attached to classical rows only: PSNR of plain
  // hard quantization with the raw median-cut palette and after refinement.
  std::optional<double> psnr_mediancut_hard;
  std::optional<double> psnr_lloyd_hard;
};

struct MetricsReport {
  std::vector<MetricsRow> rows;
  struct Mean {
    int np = 0;
    std::string pipeline;
    double psnr_db = 0.0;
    double ssim = 0.0;
    double banding_score = 0.0;
  };
  std::vector<Mean> means;

  void validate() const;  // rows >= 1, all values finite
};

struct CompareOptions {
  std::vector<std::string> image_paths;
  std::vector<int> np_values;
  EncodeConfig base_config;
  int max_threads = 0;         // 0: hardware_concurrency, capped by GIFFEL_THREADS
  std::string gif_dir;         // when non-empty, encoded GIFs are written here
};

MetricsReport run_compare(const CompareOptions& options);

std::string report_to_json(const MetricsReport& report);
std::string report_to_table(const MetricsReport& report);

// Lists *.ppm and *.png in a directory, sorted by filename.
std::vector<std::string> list_corpus(const std::string& dir);

// Thread cap from options and the GIFFEL_THREADS environment variable.
int effective_thread_count(int requested, size_t items);

}  // namespace giffel

#endif  // GIFFEL_COMPARE_H_
