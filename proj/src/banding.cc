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

#include "giffel/banding.h"

#include <cmath>

#include "giffel/imageops.h"

namespace giffel {

namespace {

struct BandingForward {
  FloatImage y;   // luma
  FloatImage gx;  // sobel x
  FloatImage gy;  // sobel y
  FloatImage g;   // gradient magnitude
  FloatImage c;   // min(g, 1)
  FloatImage u;   // 7x7 window sum of c
  FloatImage e;   // u^2 * g
};

BandingForward banding_forward(const FloatImage& rgb) {
  if (rgb.channels() != 3) throw ShapeError("banding: expected 3 channels");
  BandingForward f;
  f.y = luma(rgb);
  auto [gx, gy] = sobel_gradients(f.y);
  f.gx = std::move(gx);
  f.gy = std::move(gy);
  const int h = f.y.height(), w = f.y.width();
  f.g = FloatImage(h, w, 1);
  f.c = FloatImage(h, w, 1);
  for (size_t i = 0; i < f.g.size(); ++i) {
    const double m = std::hypot(f.gx.data()[i], f.gy.data()[i]);
    f.g.data()[i] = m;
    f.c.data()[i] = std::min(m, 1.0);
  }
  static const double kOnes7[7] = {1, 1, 1, 1, 1, 1, 1};
  f.u = correlate_separable(f.c, kOnes7);
  f.e = FloatImage(h, w, 1);
  for (size_t i = 0; i < f.e.size(); ++i) {
    f.e.data()[i] = f.u.data()[i] * f.u.data()[i] * f.g.data()[i];
  }
  return f;
}

// Scatters dY back into the RGB gradient buffer through the luma weights.
void luma_backward(const FloatImage& d_y, GradBuffer* grad_rgb) {
  for (size_t i = 0; i < d_y.size(); ++i) {
    const double u = d_y.data()[i];
    if (u == 0.0) continue;
    grad_rgb->data[3 * i] += 0.299 * u;
    grad_rgb->data[3 * i + 1] += 0.587 * u;
    grad_rgb->data[3 * i + 2] += 0.114 * u;
  }
}

}  // namespace

BandingMap banding_inputs(const FloatImage& rgb) {
  BandingForward f = banding_forward(rgb);
  return BandingMap{std::move(f.y), std::move(f.e)};
}

FloatImage pyramid_level(const FloatImage& img, double eta) {
  if (!(eta > 1.0)) throw ConfigError("pyramid_level: eta must exceed 1");
  const int dh = static_cast<int>(std::floor(img.height() / eta + 0.5));
  const int dw = static_cast<int>(std::floor(img.width() / eta + 0.5));
  if (dh < 8 || dw < 8) throw SizeError("pyramid_level: downscaled image below 8x8");
  const FloatImage down = resample_bilinear(gaussian_smooth(img), dh, dw);
  return resample_bilinear(down, img.height(), img.width());
}

double banding_score(const FloatImage& rgb, GradBuffer* grad_img) {
  if (rgb.height() < 16 || rgb.width() < 16) {
    throw SizeError("banding_score: image below 16x16");
  }
  BandingForward f = banding_forward(rgb);
  const double n = static_cast<double>(f.e.size());
  double sum = 0.0;
  for (double v : f.e.data()) sum += v;
  const double score = sum / n;
  if (!grad_img) return score;
  if (grad_img->size() != rgb.size()) {
    throw ShapeError("banding_score: gradient size mismatch");
  }

  const int h = rgb.height(), w = rgb.width();
  // dZ/dE = 1/n; E = U^2 G.
  FloatImage d_u(h, w, 1);
  FloatImage d_g(h, w, 1);
  for (size_t i = 0; i < d_u.size(); ++i) {
    const double de = 1.0 / n;
    d_u.data()[i] = de * 2.0 * f.u.data()[i] * f.g.data()[i];
    d_g.data()[i] = de * f.u.data()[i] * f.u.data()[i];
  }
  // U = ones7x7 * C.
  static const double kOnes7[7] = {1, 1, 1, 1, 1, 1, 1};
  const FloatImage d_c = correlate_separable_adjoint(d_u, kOnes7);
  // C = min(G, 1): pass-through below the clip, zero above.
  for (size_t i = 0; i < d_g.size(); ++i) {
    if (f.g.data()[i] < 1.0) d_g.data()[i] += d_c.data()[i];
  }
  // G = sqrt(gx^2 + gy^2); zero gradient at the apex G = 0.
  FloatImage d_gx(h, w, 1);
  FloatImage d_gy(h, w, 1);
  for (size_t i = 0; i < d_g.size(); ++i) {
    const double g = f.g.data()[i];
    if (g > 0.0) {
      d_gx.data()[i] = d_g.data()[i] * f.gx.data()[i] / g;
      d_gy.data()[i] = d_g.data()[i] * f.gy.data()[i] / g;
    }
  }
  FloatImage d_y = correlate_replicate_adjoint(d_gx, sobel_x_kernel());
  const FloatImage d_y2 = correlate_replicate_adjoint(d_gy, sobel_y_kernel());
  for (size_t i = 0; i < d_y.size(); ++i) d_y.data()[i] += d_y2.data()[i];
  luma_backward(d_y, grad_img);
  return score;
}

double multiscale_banding(const FloatImage& rgb, double eta, GradBuffer* grad_img) {
  if (!(eta > 1.0)) throw ConfigError("multiscale_banding: eta must exceed 1");
  if (grad_img && grad_img->size() != rgb.size()) {
    throw ShapeError("multiscale_banding: gradient size mismatch");
  }
  {
    const double eta4 = std::pow(eta, 4);
    if (std::floor(rgb.height() / eta4 + 0.5) < 8 ||
        std::floor(rgb.width() / eta4 + 0.5) < 8) {
      throw SizeError("multiscale_banding: deepest level below 8x8");
    }
  }
  double total = 0.0;
  const FloatImage smoothed = gaussian_smooth(rgb);
  for (int k = 1; k <= 4; ++k) {
    const double eta_k = std::pow(eta, k);
    const int dh = static_cast<int>(std::floor(rgb.height() / eta_k + 0.5));
    const int dw = static_cast<int>(std::floor(rgb.width() / eta_k + 0.5));
    const FloatImage down = resample_bilinear(smoothed, dh, dw);
    const FloatImage level = resample_bilinear(down, rgb.height(), rgb.width());
    if (!grad_img) {
      total += banding_score(level, nullptr);
      continue;
    }
    GradBuffer d_level(level.size());
    total += banding_score(level, &d_level);
    // Adjoint chain: upsample -> downsample -> gaussian.
    FloatImage d_level_img(level.height(), level.width(), 3);
    d_level_img.data() = std::move(d_level.data);
    const FloatImage d_down = resample_bilinear_adjoint(d_level_img, dh, dw);
    const FloatImage d_smoothed =
        resample_bilinear_adjoint(d_down, rgb.height(), rgb.width());
    const FloatImage d_rgb =
        correlate_separable_adjoint(d_smoothed, gaussian_taps5());
    for (size_t i = 0; i < d_rgb.size(); ++i) grad_img->data[i] += d_rgb.data()[i];
  }
  return total;
}

}  // namespace giffel
