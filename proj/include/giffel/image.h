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

#ifndef GIFFEL_IMAGE_H_
#define GIFFEL_IMAGE_H_

#include <algorithm>
#include <cstddef>
#include <vector>

#include "giffel/error.h"

namespace giffel {

inline double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// H x W x C raster of doubles, row-major, channel-interleaved.
//
// The working convention is values in [0,1]; operations that produce
// displayable images clamp on write. A few producers (Sobel gradients,
// banding edge maps, error images) intentionally store out-of-range
// samples; the container itself does not enforce the range.
class FloatImage {
 public:
  FloatImage() = default;
  FloatImage(int height, int width, int channels, double fill = 0.0)
      : height_(height), width_(width), channels_(channels) {
    if (height <= 0 || width <= 0 || (channels != 1 && channels != 3)) {
      throw ShapeError("FloatImage: bad shape");
    }
    data_.assign(static_cast<size_t>(height) * width * channels, fill);
  }

  int height() const { return height_; }
  int width() const { return width_; }
  int channels() const { return channels_; }
  size_t size() const { return data_.size(); }
  long pixels() const { return static_cast<long>(height_) * width_; }

  double at(int r, int c, int ch = 0) const {
    return data_[idx(r, c, ch)];
  }
  double& at(int r, int c, int ch = 0) { return data_[idx(r, c, ch)]; }

  // Clamping store for [0,1]-typed outputs.
  void set(int r, int c, int ch, double v) { data_[idx(r, c, ch)] = clamp01(v); }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  size_t idx(int r, int c, int ch) const {
    return (static_cast<size_t>(r) * width_ + c) * channels_ + ch;
  }

  bool same_shape(const FloatImage& o) const {
    return height_ == o.height_ && width_ == o.width_ && channels_ == o.channels_;
  }

  void clamp_all() {
    for (double& v : data_) v = clamp01(v);
  }

 private:
  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<double> data_;
};

// Per-pixel quantization offsets live in [-1,1] but share the raster layout.
using ErrorImage = FloatImage;

// Square odd-sized filter kernel.
struct Kernel2D {
  int size = 0;                 // odd
  std::vector<double> weights;  // size*size, row-major

  Kernel2D() = default;
  Kernel2D(int n, double fill) : size(n), weights(static_cast<size_t>(n) * n, fill) {
    if (n <= 0 || n % 2 == 0) throw ShapeError("Kernel2D: size must be odd");
  }
  double at(int r, int c) const { return weights[static_cast<size_t>(r) * size + c]; }
  double& at(int r, int c) { return weights[static_cast<size_t>(r) * size + c]; }
};

}  // namespace giffel

#endif  // GIFFEL_IMAGE_H_
