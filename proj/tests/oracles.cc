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

#include "oracles.h"

#include <algorithm>
#include <cmath>

namespace giffel::testing {

namespace {

int clampi(int i, int n) { return std::max(0, std::min(i, n - 1)); }

}  // namespace

std::vector<double> naive_banding_edge_map(const FloatImage& rgb) {
  const int h = rgb.height(), w = rgb.width();
  std::vector<double> y(static_cast<size_t>(h) * w);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      y[r * w + c] = 0.299 * rgb.at(r, c, 0) + 0.587 * rgb.at(r, c, 1) +
                     0.114 * rgb.at(r, c, 2);
    }
  }
  auto yy = [&](int r, int c) { return y[clampi(r, h) * w + clampi(c, w)]; };

  const double kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
  const double ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
  std::vector<double> cmap(y.size());
  std::vector<double> gmap(y.size());
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double gx = 0, gy = 0;
      for (int i = -1; i <= 1; ++i) {
        for (int j = -1; j <= 1; ++j) {
          gx += kx[i + 1][j + 1] / 8.0 * yy(r + i, c + j);
          gy += ky[i + 1][j + 1] / 8.0 * yy(r + i, c + j);
        }
      }
      const double g = std::sqrt(gx * gx + gy * gy);
      gmap[r * w + c] = g;
      cmap[r * w + c] = std::min(g, 1.0);
    }
  }
  std::vector<double> e(y.size());
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      double win = 0;
      for (int i = -3; i <= 3; ++i) {
        for (int j = -3; j <= 3; ++j) {
          win += cmap[clampi(r + i, h) * w + clampi(c + j, w)];
        }
      }
      e[r * w + c] = win * win * gmap[r * w + c];
    }
  }
  return e;
}

double naive_banding_score(const FloatImage& rgb) {
  const std::vector<double> e = naive_banding_edge_map(rgb);
  double sum = 0;
  for (double v : e) sum += v;
  return sum / static_cast<double>(e.size());
}

double naive_palette_loss(const FloatImage& img,
                          const std::vector<std::array<double, 3>>& colors) {
  double total = 0;
  for (long i = 0; i < img.pixels(); ++i) {
    double best = 1e18;
    for (const auto& col : colors) {
      double d = 0;
      for (int c = 0; c < 3; ++c) {
        const double t = img.data()[3 * i + c] - col[c];
        d += t * t;
      }
      best = std::min(best, d);
    }
    total += best;
  }
  return total / static_cast<double>(img.pixels());
}

}  // namespace giffel::testing
