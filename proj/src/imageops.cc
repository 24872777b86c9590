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

#include "giffel/imageops.h"

#include <cmath>
#include <limits>

namespace giffel {

namespace {

inline int clamp_index(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

}  // namespace

FloatImage rgb_to_yuv(const FloatImage& img) {
  if (img.channels() != 3) throw ShapeError("rgb_to_yuv: expected 3 channels");
  FloatImage out(img.height(), img.width(), 3);
  const int h = img.height(), w = img.width();
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const double R = img.at(r, c, 0), G = img.at(r, c, 1), B = img.at(r, c, 2);
      const double y = 0.299 * R + 0.587 * G + 0.114 * B;
      const double u = -0.168736 * R - 0.331264 * G + 0.5 * B + 0.5;
      const double v = 0.5 * R - 0.418688 * G - 0.081312 * B + 0.5;
      out.set(r, c, 0, y);
      out.set(r, c, 1, u);
      out.set(r, c, 2, v);
    }
  }
  return out;
}

FloatImage luma(const FloatImage& img) {
  if (img.channels() == 1) return img;
  if (img.channels() != 3) throw ShapeError("luma: expected 1 or 3 channels");
  FloatImage out(img.height(), img.width(), 1);
  for (int r = 0; r < img.height(); ++r) {
    for (int c = 0; c < img.width(); ++c) {
      out.set(r, c, 0,
              0.299 * img.at(r, c, 0) + 0.587 * img.at(r, c, 1) +
                  0.114 * img.at(r, c, 2));
    }
  }
  return out;
}

Kernel2D sobel_x_kernel() {
  Kernel2D k(3, 0.0);
  const double v[9] = {-1, 0, 1, -2, 0, 2, -1, 0, 1};
  for (int i = 0; i < 9; ++i) k.weights[i] = v[i] / 8.0;
  return k;
}

Kernel2D sobel_y_kernel() {
  Kernel2D k(3, 0.0);
  const double v[9] = {-1, -2, -1, 0, 0, 0, 1, 2, 1};
  for (int i = 0; i < 9; ++i) k.weights[i] = v[i] / 8.0;
  return k;
}

Kernel2D ones_kernel(int size) { return Kernel2D(size, 1.0); }

std::array<double, 5> gaussian_taps5() {
  std::array<double, 5> taps;
  double sum = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double d = i - 2;
    taps[i] = std::exp(-d * d / 2.0);  // sigma = 1
    sum += taps[i];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

Kernel2D gaussian_kernel5() {
  const std::array<double, 5> taps = gaussian_taps5();
  Kernel2D k(5, 0.0);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) k.at(r, c) = taps[r] * taps[c];
  return k;
}

FloatImage correlate_separable(const FloatImage& img, std::span<const double> taps) {
  const int n = static_cast<int>(taps.size());
  if (n % 2 == 0) throw ShapeError("correlate_separable: taps must be odd-length");
  const int rad = n / 2;
  const int h = img.height(), w = img.width(), ch = img.channels();
  FloatImage tmp(h, w, ch), out(h, w, ch);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int m = 0; m < ch; ++m) {
        double acc = 0.0;
        for (int d = -rad; d <= rad; ++d) {
          acc += taps[d + rad] * img.at(r, clamp_index(c + d, w), m);
        }
        tmp.at(r, c, m) = acc;
      }
    }
  }
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int m = 0; m < ch; ++m) {
        double acc = 0.0;
        for (int d = -rad; d <= rad; ++d) {
          acc += taps[d + rad] * tmp.at(clamp_index(r + d, h), c, m);
        }
        out.at(r, c, m) = acc;
      }
    }
  }
  return out;
}

FloatImage correlate_separable_adjoint(const FloatImage& upstream,
                                       std::span<const double> taps) {
  const int n = static_cast<int>(taps.size());
  if (n % 2 == 0) throw ShapeError("correlate_separable_adjoint: taps must be odd-length");
  const int rad = n / 2;
  const int h = upstream.height(), w = upstream.width(), ch = upstream.channels();
  FloatImage d_tmp(h, w, ch), grad(h, w, ch);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int m = 0; m < ch; ++m) {
        const double u = upstream.at(r, c, m);
        if (u == 0.0) continue;
        for (int d = -rad; d <= rad; ++d) {
          d_tmp.at(clamp_index(r + d, h), c, m) += taps[d + rad] * u;
        }
      }
    }
  }
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int m = 0; m < ch; ++m) {
        const double u = d_tmp.at(r, c, m);
        if (u == 0.0) continue;
        for (int d = -rad; d <= rad; ++d) {
          grad.at(r, clamp_index(c + d, w), m) += taps[d + rad] * u;
        }
      }
    }
  }
  return grad;
}

FloatImage correlate_replicate(const FloatImage& img, const Kernel2D& k) {
  const int h = img.height(), w = img.width(), ch = img.channels();
  const int rad = k.size / 2;
  FloatImage out(h, w, ch);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int m = 0; m < ch; ++m) {
        double acc = 0.0;
        for (int dr = -rad; dr <= rad; ++dr) {
          const int rr = clamp_index(r + dr, h);
          for (int dc = -rad; dc <= rad; ++dc) {
            const int cc = clamp_index(c + dc, w);
            acc += k.at(dr + rad, dc + rad) * img.at(rr, cc, m);
          }
        }
        out.at(r, c, m) = acc;  // unclamped; callers decide the range
      }
    }
  }
  return out;
}

FloatImage correlate_replicate_adjoint(const FloatImage& upstream, const Kernel2D& k) {
  const int h = upstream.height(), w = upstream.width(), ch = upstream.channels();
  const int rad = k.size / 2;
  FloatImage grad(h, w, ch);
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int m = 0; m < ch; ++m) {
        const double u = upstream.at(r, c, m);
        if (u == 0.0) continue;
        for (int dr = -rad; dr <= rad; ++dr) {
          const int rr = clamp_index(r + dr, h);
          for (int dc = -rad; dc <= rad; ++dc) {
            const int cc = clamp_index(c + dc, w);
            grad.at(rr, cc, m) += k.at(dr + rad, dc + rad) * u;
          }
        }
      }
    }
  }
  return grad;
}

std::pair<FloatImage, FloatImage> sobel_gradients(const FloatImage& y) {
  if (y.channels() != 1) throw ShapeError("sobel_gradients: expected 1 channel");
  const int h = y.height(), w = y.width();
  FloatImage gx(h, w, 1), gy(h, w, 1);
  auto at = [&](int r, int c) { return y.at(clamp_index(r, h), clamp_index(c, w)); };
  // Opposite lobes are computed with identical expressions so constant
  // regions cancel exactly and transposition swaps gx/gy bitwise.
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const double xp = at(r - 1, c + 1) + 2.0 * at(r, c + 1) + at(r + 1, c + 1);
      const double xn = at(r - 1, c - 1) + 2.0 * at(r, c - 1) + at(r + 1, c - 1);
      const double yp = at(r + 1, c - 1) + 2.0 * at(r + 1, c) + at(r + 1, c + 1);
      const double yn = at(r - 1, c - 1) + 2.0 * at(r - 1, c) + at(r - 1, c + 1);
      gx.at(r, c) = (xp - xn) / 8.0;
      gy.at(r, c) = (yp - yn) / 8.0;
    }
  }
  return {std::move(gx), std::move(gy)};
}

FloatImage resample_bilinear(const FloatImage& img, int out_height, int out_width) {
  if (out_height < 1 || out_width < 1) {
    throw SizeError("resample_bilinear: degenerate target size");
  }
  const int h = img.height(), w = img.width(), ch = img.channels();
  FloatImage out(out_height, out_width, ch);
  for (int r = 0; r < out_height; ++r) {
    double sr = (r + 0.5) * static_cast<double>(h) / out_height - 0.5;
    sr = std::clamp(sr, 0.0, static_cast<double>(h - 1));
    const int r0 = static_cast<int>(std::floor(sr));
    const int r1 = std::min(r0 + 1, h - 1);
    const double fr = sr - r0;
    for (int c = 0; c < out_width; ++c) {
      double sc = (c + 0.5) * static_cast<double>(w) / out_width - 0.5;
      sc = std::clamp(sc, 0.0, static_cast<double>(w - 1));
      const int c0 = static_cast<int>(std::floor(sc));
      const int c1 = std::min(c0 + 1, w - 1);
      const double fc = sc - c0;
      for (int m = 0; m < ch; ++m) {
        // lerp as a + f*(b-a): exact at endpoints and on constant input
        const double i00 = img.at(r0, c0, m);
        const double i01 = img.at(r0, c1, m);
        const double i10 = img.at(r1, c0, m);
        const double i11 = img.at(r1, c1, m);
        const double top = i00 + fc * (i01 - i00);
        const double bot = i10 + fc * (i11 - i10);
        out.set(r, c, m, top + fr * (bot - top));
      }
    }
  }
  return out;
}

FloatImage resample_bilinear(const FloatImage& img, double scale) {
  if (!(scale > 0.0)) throw SizeError("resample_bilinear: scale must be positive");
  const int oh = static_cast<int>(std::floor(img.height() / scale + 0.5));
  const int ow = static_cast<int>(std::floor(img.width() / scale + 0.5));
  return resample_bilinear(img, oh, ow);
}

FloatImage resample_bilinear_adjoint(const FloatImage& upstream, int in_height,
                                     int in_width) {
  const int oh = upstream.height(), ow = upstream.width(), ch = upstream.channels();
  FloatImage grad(in_height, in_width, ch);
  for (int r = 0; r < oh; ++r) {
    double sr = (r + 0.5) * static_cast<double>(in_height) / oh - 0.5;
    sr = std::clamp(sr, 0.0, static_cast<double>(in_height - 1));
    const int r0 = static_cast<int>(std::floor(sr));
    const int r1 = std::min(r0 + 1, in_height - 1);
    const double fr = sr - r0;
    for (int c = 0; c < ow; ++c) {
      double sc = (c + 0.5) * static_cast<double>(in_width) / ow - 0.5;
      sc = std::clamp(sc, 0.0, static_cast<double>(in_width - 1));
      const int c0 = static_cast<int>(std::floor(sc));
      const int c1 = std::min(c0 + 1, in_width - 1);
      const double fc = sc - c0;
      for (int m = 0; m < ch; ++m) {
        const double u = upstream.at(r, c, m);
        if (u == 0.0) continue;
        grad.at(r0, c0, m) += (1 - fr) * (1 - fc) * u;
        grad.at(r0, c1, m) += (1 - fr) * fc * u;
        grad.at(r1, c0, m) += fr * (1 - fc) * u;
        grad.at(r1, c1, m) += fr * fc * u;
      }
    }
  }
  return grad;
}

FloatImage gaussian_smooth(const FloatImage& img) {
  const std::array<double, 5> taps = gaussian_taps5();
  FloatImage out = correlate_separable(img, taps);
  out.clamp_all();
  return out;
}

double psnr(const FloatImage& a, const FloatImage& b) {
  if (!a.same_shape(b)) throw ShapeError("psnr: shape mismatch");
  double se = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a.data()[i] - b.data()[i];
    se += d * d;
  }
  const double mse = se / static_cast<double>(a.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

double ssim(const FloatImage& a, const FloatImage& b) {
  if (!a.same_shape(b)) throw ShapeError("ssim: shape mismatch");
  constexpr int kWin = 11;
  constexpr double kSigma = 1.5;
  constexpr double kC1 = 0.01 * 0.01;
  constexpr double kC2 = 0.03 * 0.03;
  const FloatImage ya = luma(a);
  const FloatImage yb = luma(b);
  const int h = ya.height(), w = ya.width();
  if (h < kWin || w < kWin) throw SizeError("ssim: image smaller than window");

  double win[kWin][kWin];
  double taps[kWin];
  double sum = 0.0;
  for (int i = 0; i < kWin; ++i) {
    const double d = i - kWin / 2;
    taps[i] = std::exp(-d * d / (2.0 * kSigma * kSigma));
    sum += taps[i];
  }
  for (int i = 0; i < kWin; ++i) taps[i] /= sum;
  for (int r = 0; r < kWin; ++r)
    for (int c = 0; c < kWin; ++c) win[r][c] = taps[r] * taps[c];

  double total = 0.0;
  long count = 0;
  for (int r = 0; r + kWin <= h; ++r) {
    for (int c = 0; c + kWin <= w; ++c) {
      double mx = 0, my = 0, exx = 0, eyy = 0, exy = 0;
      for (int i = 0; i < kWin; ++i) {
        for (int j = 0; j < kWin; ++j) {
          const double x = ya.at(r + i, c + j);
          const double y = yb.at(r + i, c + j);
          const double wt = win[i][j];
          mx += wt * x;
          my += wt * y;
          exx += wt * x * x;
          eyy += wt * y * y;
          exy += wt * x * y;
        }
      }
      const double sx = exx - mx * mx;
      const double sy = eyy - my * my;
      const double sxy = exy - mx * my;
      total += ((2 * mx * my + kC1) * (2 * sxy + kC2)) /
               ((mx * mx + my * my + kC1) * (sx + sy + kC2));
      ++count;
    }
  }
  return total / count;
}

}  // namespace giffel
