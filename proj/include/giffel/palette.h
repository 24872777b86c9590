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
// Palette extraction and nearest-color projection.

#ifndef GIFFEL_PALETTE_H_
#define GIFFEL_PALETTE_H_

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "giffel/image.h"

namespace giffel {

using Rgb = std::array<double, 3>;

// Ordered quantization codebook; 2..256 colors with components in [0,1].
struct Palette {
  std::vector<Rgb> colors;

  int size() const { return static_cast<int>(colors.size()); }
  void validate() const;
};

// Pre-compression GIF payload: per-pixel palette indices plus the palette.
struct IndexedImage {
  int height = 0;
  int width = 0;
  std::vector<uint8_t> indices;  // height*width, row-major
  Palette palette;

  void validate() const;
};

// Textbook median cut: repeatedly split the box with the largest
// single-channel range, sorted on that channel, at the value boundary
// nearest the median pixel. Each entry is the mean color of its box,
// ordered by box creation. Single-color boxes are never split; if the
// image runs out of splittable boxes, the last centroid is duplicated.
Palette median_cut(const FloatImage& img, int num_colors);

// Nearest palette color per pixel in squared RGB distance; ties go to the
// smallest palette index.
std::pair<FloatImage, IndexedImage> hard_project(const FloatImage& img,
                                                 const Palette& p);

// Index of the nearest palette color for one pixel (same tie-break).
int nearest_palette_index(const Palette& p, double r, double g, double b);

// Mean over pixels of the squared RGB distance to the nearest palette color
// (summed over the 3 channels per pixel).
double palette_loss(const FloatImage& img, const Palette& p);

// Alternating nearest-assignment / centroid-update refinement. Empty
// clusters keep their previous centroid. Stops after max_iters or when the
// loss decrease falls below tol. Never increases palette_loss. When given,
// loss_trace receives the loss evaluated at the start of every iteration.
Palette lloyd_refine(const FloatImage& img, const Palette& p0, int max_iters,
                     double tol, std::vector<double>* loss_trace = nullptr);

// Fixture text format: one "R G B" byte triple per line.
Palette read_palette_text(const std::string& path);
void write_palette_text(const std::string& path, const Palette& p);

}  // namespace giffel

#endif  // GIFFEL_PALETTE_H_
