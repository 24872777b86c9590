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

#include "giffel/compare.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "giffel/gif.h"
#include "giffel/image_io.h"
#include "giffel/imageops.h"

namespace giffel {

namespace fs = std::filesystem;
using nlohmann::json;

void MetricsReport::validate() const {
  if (rows.empty()) throw ConfigError("metrics report: no rows");
  auto finite = [](double v) { return std::isfinite(v); };
  for (const MetricsRow& r : rows) {
    if (!finite(r.psnr_db) || !finite(r.ssim) || !finite(r.banding_score) ||
        !finite(r.wall_ms)) {
      throw NumericError("metrics report: non-finite value for " + r.file);
    }
  }
}

std::vector<std::string> list_corpus(const std::string& dir) {
  std::vector<std::string> files;
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir);
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".ppm" || ext == ".png") files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

int effective_thread_count(int requested, size_t items) {
  int n = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("GIFFEL_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return static_cast<int>(std::min<size_t>(n, std::max<size_t>(items, 1)));
}

namespace {

struct WorkItem {
  std::string path;
  int np = 0;
  std::string variant;  // classical | optimized | optimized_nobanding
};

std::string gif_name(const WorkItem& item) {
  return fs::path(item.path).stem().string() + "_np" + std::to_string(item.np) +
         "_" + item.variant + ".gif";
}

MetricsRow run_item(const WorkItem& item, const CompareOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const FloatImage img = read_image(item.path);

  EncodeConfig config = options.base_config;
  config.np = item.np;
  if (item.variant == "classical") {
    config.pipeline = PipelineKind::kClassical;
  } else {
    config.pipeline = PipelineKind::kOptimized;
    if (item.variant == "optimized_nobanding") config.weights.delta_banding = 0.0;
  }

  const EncodeResult encoded = encode_image(img, config);
  MetricsRow row;
  row.file = fs::path(item.path).filename().string();
  row.np = item.np;
  row.pipeline = item.variant;
  row.psnr_db = encoded.report.psnr_db;
  row.ssim = encoded.report.ssim_score;
  row.banding_score = encoded.report.banding_z;

  if (item.variant == "classical") {
    const Palette mc = median_cut(img, config.np);
    const Palette refined = lloyd_refine(img, mc, config.lloyd_iters, config.lloyd_tol);
    row.psnr_mediancut_hard = psnr(img, hard_project(img, mc).first);
    row.psnr_lloyd_hard = psnr(img, hard_project(img, refined).first);
  }

  if (!options.gif_dir.empty()) {
    write_gif_file((fs::path(options.gif_dir) / gif_name(item)).string(),
                   encoded.indexed);
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return row;
}

}  // namespace

MetricsReport run_compare(const CompareOptions& options) {
  if (options.image_paths.empty()) throw ConfigError("compare: empty corpus");
  if (options.np_values.empty()) throw ConfigError("compare: no palette sizes");
  options.base_config.validate();
  if (!options.gif_dir.empty()) fs::create_directories(options.gif_dir);

  static const char* kVariants[] = {"classical", "optimized", "optimized_nobanding"};
  std::vector<WorkItem> items;
  for (const std::string& path : options.image_paths) {
    for (int np : options.np_values) {
      for (const char* variant : kVariants) {
        items.push_back(WorkItem{path, np, variant});
      }
    }
  }

  std::vector<MetricsRow> rows(items.size());
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const int threads = effective_thread_count(options.max_threads, items.size());
  auto worker = [&] {
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      try {
        rows[i] = run_item(items[i], options);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  MetricsReport report;
  report.rows = std::move(rows);
  std::sort(report.rows.begin(), report.rows.end(),
            [](const MetricsRow& a, const MetricsRow& b) {
              return std::tie(a.file, a.np, a.pipeline) <
                     std::tie(b.file, b.np, b.pipeline);
            });

  std::map<std::pair<int, std::string>, std::vector<const MetricsRow*>> groups;
  for (const MetricsRow& r : report.rows) groups[{r.np, r.pipeline}].push_back(&r);
  for (const auto& [key, group] : groups) {
    MetricsReport::Mean mean;
    mean.np = key.first;
    mean.pipeline = key.second;
    for (const MetricsRow* r : group) {
      mean.psnr_db += r->psnr_db;
      mean.ssim += r->ssim;
      mean.banding_score += r->banding_score;
    }
    const double n = static_cast<double>(group.size());
    mean.psnr_db /= n;
    mean.ssim /= n;
    mean.banding_score /= n;
    report.means.push_back(mean);
  }
  report.validate();
  return report;
}

namespace {

json number_or_inf(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::string report_to_json(const MetricsReport& report) {
  json j;
  j["rows"] = json::array();
  for (const MetricsRow& r : report.rows) {
    json row = {{"file", r.file},
                {"np", r.np},
                {"pipeline", r.pipeline},
                {"psnr_db", number_or_inf(r.psnr_db)},
                {"ssim", number_or_inf(r.ssim)},
                {"banding_score", number_or_inf(r.banding_score)},
                {"wall_ms", r.wall_ms}};
    if (r.psnr_mediancut_hard) {
      row["psnr_mediancut_hard"] = number_or_inf(*r.psnr_mediancut_hard);
    }
    if (r.psnr_lloyd_hard) row["psnr_lloyd_hard"] = number_or_inf(*r.psnr_lloyd_hard);
    j["rows"].push_back(row);
  }
  j["means"] = json::array();
  for (const auto& m : report.means) {
    j["means"].push_back({{"np", m.np},
                          {"pipeline", m.pipeline},
                          {"psnr_db", number_or_inf(m.psnr_db)},
                          {"ssim", number_or_inf(m.ssim)},
                          {"banding_score", number_or_inf(m.banding_score)}});
  }
  return j.dump(2) + "\n";
}

std::string report_to_table(const MetricsReport& report) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-24s %4s %-20s %9s %7s %10s %9s\n", "file",
                "np", "pipeline", "psnr_db", "ssim", "banding", "wall_ms");
  out << line;
  for (const MetricsRow& r : report.rows) {
    std::snprintf(line, sizeof(line), "%-24s %4d %-20s %9.3f %7.4f %10.6f %9.1f\n",
                  r.file.c_str(), r.np, r.pipeline.c_str(), r.psnr_db, r.ssim,
                  r.banding_score, r.wall_ms);
    out << line;
  }
  out << "\n";
  std::snprintf(line, sizeof(line), "%-24s %4s %-20s %9s %7s %10s\n", "means", "np",
                "pipeline", "psnr_db", "ssim", "banding");
  out << line;
  for (const auto& m : report.means) {
    std::snprintf(line, sizeof(line), "%-24s %4d %-20s %9.3f %7.4f %10.6f\n", "",
                  m.np, m.pipeline.c_str(), m.psnr_db, m.ssim, m.banding_score);
    out << line;
  }
  return out.str();
}

}  // namespace giffel
