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
// Color conversion, filtering, resampling and fidelity metrics shared by the
// rest of the toolkit. Everything here is a pure function; filters use
// replicate padding at the borders.

#ifndef GIFFEL_IMAGEOPS_H_
#define GIFFEL_IMAGEOPS_H_

#include <array>
#include <span>
#include <utility>

#include "giffel/image.h"

namespace giffel {

// BT.601 full-range RGB -> YUV with chroma centered at 0.5.
// Y = 0.299 R + 0.587 G + 0.114 B; all three outputs stay in [0,1].
FloatImage rgb_to_yuv(const FloatImage& img);

// Luma plane only (Y of rgb_to_yuv). Accepts 1-channel input unchanged.
FloatImage luma(const FloatImage& img);

// 3x3 Sobel derivatives normalized by 1/8 (|gx|,|gy| <= 0.5 for [0,1]
// input), replicate padding. Outputs are signed and exempt from clamping.
// gx responds to left-to-right increase, gy to top-to-bottom.
std::pair<FloatImage, FloatImage> sobel_gradients(const FloatImage& y);

// Bilinear resample to an explicit target size, half-pixel center alignment.
FloatImage resample_bilinear(const FloatImage& img, int out_height, int out_width);

// Convenience: target dims = round(original / scale); scale 1 is identity.
FloatImage resample_bilinear(const FloatImage& img, double scale);

// 5x5 Gaussian, sigma = 1, kernel normalized to sum 1, replicate padding.
FloatImage gaussian_smooth(const FloatImage& img);

double psnr(const FloatImage& a, const FloatImage& b);  // +inf when identical
double ssim(const FloatImage& a, const FloatImage& b);  // on luma, 11x11 window

// --- shared filter plumbing (also used by the differentiable paths) ---

Kernel2D gaussian_kernel5();
Kernel2D ones_kernel(int size);
Kernel2D sobel_x_kernel();
Kernel2D sobel_y_kernel();

// Correlation with replicate padding, same-size output, applied per channel.
FloatImage correlate_replicate(const FloatImage& img, const Kernel2D& k);

// Adjoint of correlate_replicate: scatters `upstream` back through the
// clamped border indexing. Needed for exact gradients of smoothed losses.
FloatImage correlate_replicate_adjoint(const FloatImage& upstream, const Kernel2D& k);

// Separable correlation (row pass, then column pass, same odd-length taps)
// with replicate padding; the fast path for the Gaussian and box windows.
FloatImage correlate_separable(const FloatImage& img, std::span<const double> taps);
FloatImage correlate_separable_adjoint(const FloatImage& upstream,
                                       std::span<const double> taps);

std::array<double, 5> gaussian_taps5();

// Adjoint of resample_bilinear (explicit-size form).
FloatImage resample_bilinear_adjoint(const FloatImage& upstream, int in_height,
                                     int in_width);

}  // namespace giffel

#endif  // GIFFEL_IMAGEOPS_H_
