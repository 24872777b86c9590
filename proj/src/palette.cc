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

#include "giffel/palette.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace giffel {

void Palette::validate() const {
  if (colors.size() < 2 || colors.size() > 256) {
    throw ConfigError("palette: size must be in [2,256]");
  }
  for (const Rgb& c : colors) {
    for (double v : c) {
      if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("palette: component out of [0,1]");
    }
  }
}

void IndexedImage::validate() const {
  palette.validate();
  if (height <= 0 || width <= 0 ||
      indices.size() != static_cast<size_t>(height) * width) {
    throw ShapeError("indexed image: bad shape");
  }
  for (uint8_t i : indices) {
    if (i >= palette.colors.size()) throw ConfigError("indexed image: index out of range");
  }
}

namespace {

struct Box {
  std::vector<uint32_t> pixels;  // indices into the flat pixel array
};

Rgb box_mean(const std::vector<Rgb>& px, const Box& b) {
  Rgb m{0, 0, 0};
  for (uint32_t i : b.pixels) {
    for (int c = 0; c < 3; ++c) m[c] += px[i][c];
  }
  for (int c = 0; c < 3; ++c) m[c] /= static_cast<double>(b.pixels.size());
  return m;
}

// Largest single-channel range in the box; returns {range, channel}.
std::pair<double, int> box_spread(const std::vector<Rgb>& px, const Box& b) {
  Rgb lo{1, 1, 1}, hi{0, 0, 0};
  for (uint32_t i : b.pixels) {
    for (int c = 0; c < 3; ++c) {
      lo[c] = std::min(lo[c], px[i][c]);
      hi[c] = std::max(hi[c], px[i][c]);
    }
  }
  double best = -1.0;
  int ch = 0;
  for (int c = 0; c < 3; ++c) {
    if (hi[c] - lo[c] > best) {
      best = hi[c] - lo[c];
      ch = c;
    }
  }
  return {best, ch};
}

}  // namespace

Palette median_cut(const FloatImage& img, int num_colors) {
  if (img.channels() != 3) throw ShapeError("median_cut: expected 3 channels");
  if (num_colors < 2 || num_colors > 256) {
    throw ConfigError("median_cut: palette size must be in [2,256]");
  }
  const long n_pixels = img.pixels();
  if (num_colors > n_pixels) {
    throw ConfigError("median_cut: palette larger than pixel count");
  }

  std::vector<Rgb> px(n_pixels);
  for (long i = 0; i < n_pixels; ++i) {
    px[i] = {img.data()[3 * i], img.data()[3 * i + 1], img.data()[3 * i + 2]};
  }

  std::vector<Box> boxes(1);
  boxes[0].pixels.resize(n_pixels);
  std::iota(boxes[0].pixels.begin(), boxes[0].pixels.end(), 0);

  while (static_cast<int>(boxes.size()) < num_colors) {
    // Box with the largest single-channel range; ties keep the earliest box.
    double best_range = 0.0;
    int best_box = -1, best_ch = 0;
    for (size_t i = 0; i < boxes.size(); ++i) {
      auto [range, ch] = box_spread(px, boxes[i]);
      if (range > best_range) {
        best_range = range;
        best_box = static_cast<int>(i);
        best_ch = ch;
      }
    }
    if (best_box < 0) break;  // all boxes single-colored

    Box& box = boxes[best_box];
    const int ch = best_ch;
    std::sort(box.pixels.begin(), box.pixels.end(), [&](uint32_t a, uint32_t b) {
      if (px[a][ch] != px[b][ch]) return px[a][ch] < px[b][ch];
      if (px[a] != px[b]) return px[a] < px[b];
      return a < b;
    });
    // Median split, snapped to the nearest boundary where the sort channel
    // actually changes so both halves are non-empty and distinct colors
    // never straddle a cut accidentally.
    const long n = static_cast<long>(box.pixels.size());
    const long mid = n / 2;
    long split = -1;
    for (long off = 0; off < n && split < 0; ++off) {
      for (long cand : {mid + off, mid - off}) {
        if (cand >= 1 && cand <= n - 1 &&
            px[box.pixels[cand - 1]][ch] != px[box.pixels[cand]][ch]) {
          split = cand;
          break;
        }
      }
    }
    if (split < 0) break;  // range was positive, so this cannot happen

    Box upper;
    upper.pixels.assign(box.pixels.begin() + split, box.pixels.end());
    box.pixels.resize(split);
    boxes.push_back(std::move(upper));
  }

  Palette p;
  p.colors.reserve(num_colors);
  for (const Box& b : boxes) p.colors.push_back(box_mean(px, b));
  while (static_cast<int>(p.colors.size()) < num_colors) {
    p.colors.push_back(p.colors.back());
  }
  return p;
}

int nearest_palette_index(const Palette& p, double r, double g, double b) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int j = 0; j < p.size(); ++j) {
    const double dr = p.colors[j][0] - r;
    const double dg = p.colors[j][1] - g;
    const double db = p.colors[j][2] - b;
    const double d = dr * dr + dg * dg + db * db;
    if (d < best_d) {  // strict: ties keep the smallest index
      best_d = d;
      best = j;
    }
  }
  return best;
}

std::pair<FloatImage, IndexedImage> hard_project(const FloatImage& img,
                                                 const Palette& p) {
  if (img.channels() != 3) throw ShapeError("hard_project: expected 3 channels");
  p.validate();
  FloatImage out(img.height(), img.width(), 3);
  IndexedImage idx;
  idx.height = img.height();
  idx.width = img.width();
  idx.palette = p;
  idx.indices.resize(img.pixels());
  for (long i = 0; i < img.pixels(); ++i) {
    const int k = nearest_palette_index(p, img.data()[3 * i], img.data()[3 * i + 1],
                                        img.data()[3 * i + 2]);
    idx.indices[i] = static_cast<uint8_t>(k);
    for (int c = 0; c < 3; ++c) out.data()[3 * i + c] = p.colors[k][c];
  }
  return {std::move(out), std::move(idx)};
}

double palette_loss(const FloatImage& img, const Palette& p) {
  if (img.channels() != 3) throw ShapeError("palette_loss: expected 3 channels");
  p.validate();
  double total = 0.0;
  for (long i = 0; i < img.pixels(); ++i) {
    const double r = img.data()[3 * i], g = img.data()[3 * i + 1],
                 b = img.data()[3 * i + 2];
    const int k = nearest_palette_index(p, r, g, b);
    const double dr = r - p.colors[k][0];
    const double dg = g - p.colors[k][1];
    const double db = b - p.colors[k][2];
    total += dr * dr + dg * dg + db * db;
  }
  return total / static_cast<double>(img.pixels());
}

Palette lloyd_refine(const FloatImage& img, const Palette& p0, int max_iters,
                     double tol, std::vector<double>* loss_trace) {
  if (img.channels() != 3) throw ShapeError("lloyd_refine: expected 3 channels");
  p0.validate();
  Palette p = p0;
  double prev_loss = std::numeric_limits<double>::infinity();
  const long n = img.pixels();
  std::vector<double> sum(static_cast<size_t>(p.size()) * 3);
  std::vector<long> count(p.size());

  for (int it = 0; it < max_iters; ++it) {
    std::fill(sum.begin(), sum.end(), 0.0);
    std::fill(count.begin(), count.end(), 0L);
    double loss = 0.0;
    for (long i = 0; i < n; ++i) {
      const double r = img.data()[3 * i], g = img.data()[3 * i + 1],
                   b = img.data()[3 * i + 2];
      const int k = nearest_palette_index(p, r, g, b);
      const double dr = r - p.colors[k][0];
      const double dg = g - p.colors[k][1];
      const double db = b - p.colors[k][2];
      loss += dr * dr + dg * dg + db * db;
      sum[3 * k] += r;
      sum[3 * k + 1] += g;
      sum[3 * k + 2] += b;
      ++count[k];
    }
    loss /= static_cast<double>(n);
    if (loss_trace) loss_trace->push_back(loss);
    if (prev_loss - loss < tol) break;
    prev_loss = loss;
    for (int j = 0; j < p.size(); ++j) {
      if (count[j] > 0) {
        for (int c = 0; c < 3; ++c) {
          p.colors[j][c] = clamp01(sum[3 * j + c] / count[j]);
        }
      }
    }
  }
  return p;
}

Palette read_palette_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  Palette p;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    int r, g, b;
    if (!(ss >> r >> g >> b)) throw IoError("palette text: malformed line");
    if (r < 0 || r > 255 || g < 0 || g > 255 || b < 0 || b > 255) {
      throw IoError("palette text: component out of [0,255]");
    }
    p.colors.push_back({r / 255.0, g / 255.0, b / 255.0});
  }
  p.validate();
  return p;
}

void write_palette_text(const std::string& path, const Palette& p) {
  p.validate();
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (const Rgb& c : p.colors) {
    out << static_cast<int>(std::lround(c[0] * 255.0)) << " "
        << static_cast<int>(std::lround(c[1] * 255.0)) << " "
        << static_cast<int>(std::lround(c[2] * 255.0)) << "\n";
  }
}

}  // namespace giffel
