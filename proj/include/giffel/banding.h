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
// Banding-edge extraction and the differentiable banding score. The score
// is the mean of the edge map E = W*G, where G is the luma gradient
// magnitude, C = min(G,1), and W is the squared 7x7 window sum of C. High
// E marks long, shallow contours: the signature of quantization banding.

#ifndef GIFFEL_BANDING_H_
#define GIFFEL_BANDING_H_

#include "giffel/diffquant.h"
#include "giffel/image.h"

namespace giffel {

// Luma plane plus non-negative banding-edge channel of equal size.
struct BandingMap {
  FloatImage luma;      // Y in [0,1]
  FloatImage edge_map;  // E >= 0, unclamped
};

// Luma + Sobel + window-weighting pipeline; zero E on constant input.
BandingMap banding_inputs(const FloatImage& rgb);

// One pyramid level: upscale(downscale(smooth(img), eta), original size).
// Output dims equal input dims. Requires the downscaled image >= 8x8.
FloatImage pyramid_level(const FloatImage& img, double eta);

// Z(img) = mean(E). When grad_img is non-null, accumulates the exact
// gradient with respect to every input RGB sample. Requires >= 16x16.
double banding_score(const FloatImage& rgb, GradBuffer* grad_img);

// B_eta(img) = sum of Z over four pyramid levels eta^1..eta^4, gradients
// flowing through the resamplers and smoothing.
double multiscale_banding(const FloatImage& rgb, double eta, GradBuffer* grad_img);

}  // namespace giffel

#endif  // GIFFEL_BANDING_H_
