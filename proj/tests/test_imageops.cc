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
#include <random>

#include "doctest.h"
#include "giffel/image_io.h"

using namespace giffel;

namespace {

FloatImage random_image(uint64_t seed, int h, int w, int ch = 3, double lo = 0.0,
                        double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  FloatImage img(h, w, ch);
  for (double& v : img.data()) v = dist(rng);
  return img;
}

FloatImage transpose(const FloatImage& img) {
  FloatImage out(img.width(), img.height(), img.channels());
  for (int r = 0; r < img.height(); ++r)
    for (int c = 0; c < img.width(); ++c)
      for (int m = 0; m < img.channels(); ++m) out.at(c, r, m) = img.at(r, c, m);
  return out;
}

}  // namespace

TEST_SUITE("imageops") {

TEST_CASE("rgb_to_yuv known colors") {
  FloatImage img(1, 3, 3);
  // white, black, pure red
  img.at(0, 0, 0) = 1;  img.at(0, 0, 1) = 1;  img.at(0, 0, 2) = 1;
  img.at(0, 1, 0) = 0;  img.at(0, 1, 1) = 0;  img.at(0, 1, 2) = 0;
  img.at(0, 2, 0) = 1;  img.at(0, 2, 1) = 0;  img.at(0, 2, 2) = 0;
  const FloatImage yuv = rgb_to_yuv(img);
  CHECK(yuv.at(0, 0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(yuv.at(0, 1, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(yuv.at(0, 1, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(yuv.at(0, 1, 2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(yuv.at(0, 2, 0) == doctest::Approx(0.299).epsilon(1e-12));
}

TEST_CASE("rgb_to_yuv rejects single channel") {
  FloatImage gray(4, 4, 1, 0.5);
  CHECK_THROWS_AS(rgb_to_yuv(gray), ShapeError);
}

TEST_CASE("yuv output stays in unit range on random input") {
  const FloatImage img = random_image(11, 16, 16);
  const FloatImage yuv = rgb_to_yuv(img);
  for (double v : yuv.data()) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("sobel of constant image is exactly zero") {
  FloatImage y(9, 9, 1, 0.37);
  auto [gx, gy] = sobel_gradients(y);
  for (double v : gx.data()) CHECK(v == 0.0);
  for (double v : gy.data()) CHECK(v == 0.0);
}

TEST_CASE("sobel of horizontal ramp") {
  const int w = 5;
  FloatImage y(5, w, 1);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < w; ++c) y.at(r, c) = static_cast<double>(c) / (w - 1);
  auto [gx, gy] = sobel_gradients(y);
  // interior: (sum of +column) - (sum of -column) = 4 * (2/(W-1)) / 8
  for (int r = 1; r < 4; ++r) {
    for (int c = 1; c < 4; ++c) {
      CHECK(gx.at(r, c) == doctest::Approx(1.0 / (w - 1)).epsilon(1e-12));
      CHECK(gy.at(r, c) == doctest::Approx(0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("sobel transpose symmetry is exact") {
  const FloatImage y = random_image(12, 12, 9, 1);
  auto [gx, gy] = sobel_gradients(y);
  auto [tgx, tgy] = sobel_gradients(transpose(y));
  CHECK(tgx.data() == transpose(gy).data());
  CHECK(tgy.data() == transpose(gx).data());
}

TEST_CASE("resample at scale 1 is the identity") {
  const FloatImage img = random_image(13, 10, 7);
  const FloatImage out = resample_bilinear(img, 1.0);
  CHECK(out.data() == img.data());
}

TEST_CASE("resample keeps constants constant") {
  FloatImage img(12, 12, 3, 0.77);
  for (double scale : {0.5, 1.3, 2.0, 3.7}) {
    const FloatImage out = resample_bilinear(img, scale);
    for (double v : out.data()) CHECK(v == 0.77);
  }
}

TEST_CASE("bilinear 2x2 checker to 4x4 golden") {
  FloatImage img(2, 2, 1);
  img.at(0, 0) = 0; img.at(0, 1) = 1;
  img.at(1, 0) = 1; img.at(1, 1) = 0;
  const FloatImage out = resample_bilinear(img, 4, 4);
  // hand-evaluated: value(r,c) = fr + fc - 2 fr fc at coords {0,.25,.75,1}
  const double expect[4][4] = {{0, 0.25, 0.75, 1},
                               {0.25, 0.375, 0.625, 0.75},
                               {0.75, 0.625, 0.375, 0.25},
                               {1, 0.75, 0.25, 0}};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      CHECK(out.at(r, c) == doctest::Approx(expect[r][c]).epsilon(1e-12));
  // the image midpoint interpolates to 0.5: mean of the four center samples
  const double center =
      (out.at(1, 1) + out.at(1, 2) + out.at(2, 1) + out.at(2, 2)) / 4.0;
  CHECK(center == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("resample rejects degenerate targets") {
  const FloatImage img = random_image(14, 6, 6);
  CHECK_THROWS_AS(resample_bilinear(img, 0, 4), SizeError);
  CHECK_THROWS_AS(resample_bilinear(img, 100.0), SizeError);
  CHECK_THROWS_AS(resample_bilinear(img, -1.0), SizeError);
}

TEST_CASE("gaussian smooth leaves constants unchanged") {
  FloatImage img(16, 16, 3, 0.42);
  const FloatImage out = gaussian_smooth(img);
  for (double v : out.data()) CHECK(v == doctest::Approx(0.42).epsilon(1e-14));
}

TEST_CASE("gaussian impulse response replicates the kernel") {
  FloatImage img(9, 9, 1, 0.0);
  img.at(4, 4) = 1.0;
  const FloatImage out = gaussian_smooth(img);
  // independent tap computation
  double taps[5];
  double sum = 0;
  for (int i = 0; i < 5; ++i) {
    taps[i] = std::exp(-(i - 2) * (i - 2) / 2.0);
    sum += taps[i];
  }
  for (double& t : taps) t /= sum;
  for (int r = 0; r < 9; ++r) {
    for (int c = 0; c < 9; ++c) {
      const double expect =
          (std::abs(r - 4) <= 2 && std::abs(c - 4) <= 2) ? taps[r - 2] * taps[c - 2]
                                                         : 0.0;
      CHECK(out.at(r, c) == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("gaussian preserves the mean when the border is flat") {
  FloatImage img = random_image(15, 64, 64, 3);
  // flat 2-pixel border: clamped taps then redistribute equal values
  for (int r = 0; r < 64; ++r) {
    for (int c = 0; c < 64; ++c) {
      if (r < 2 || r >= 62 || c < 2 || c >= 62) {
        for (int m = 0; m < 3; ++m) img.at(r, c, m) = 0.5;
      }
    }
  }
  const FloatImage out = gaussian_smooth(img);
  double mean_in = 0, mean_out = 0;
  for (double v : img.data()) mean_in += v;
  for (double v : out.data()) mean_out += v;
  mean_in /= img.size();
  mean_out /= out.size();
  CHECK(std::abs(mean_in - mean_out) < 1e-9);
}

TEST_CASE("smoothing and resampling are linear operators") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  const FloatImage a = random_image(17, 20, 14);
  const FloatImage b = random_image(18, 20, 14);
  const double alpha = dist(rng);
  FloatImage mix(20, 14, 3);
  for (size_t i = 0; i < mix.size(); ++i) {
    mix.data()[i] = alpha * a.data()[i] + (1 - alpha) * b.data()[i];
  }

  const FloatImage ga = gaussian_smooth(a);
  const FloatImage gb = gaussian_smooth(b);
  const FloatImage gm = gaussian_smooth(mix);
  for (size_t i = 0; i < gm.size(); ++i) {
    CHECK(gm.data()[i] ==
          doctest::Approx(alpha * ga.data()[i] + (1 - alpha) * gb.data()[i])
              .epsilon(1e-12));
  }

  const FloatImage ra = resample_bilinear(a, 9, 11);
  const FloatImage rb = resample_bilinear(b, 9, 11);
  const FloatImage rm = resample_bilinear(mix, 9, 11);
  for (size_t i = 0; i < rm.size(); ++i) {
    CHECK(rm.data()[i] ==
          doctest::Approx(alpha * ra.data()[i] + (1 - alpha) * rb.data()[i])
              .epsilon(1e-12));
  }
}

TEST_CASE("bilinear adjoint matches the forward operator") {
  // <R x, u> == <x, R^T u> for random x, u
  const FloatImage x = random_image(19, 12, 10);
  const FloatImage u = random_image(20, 7, 15);
  const FloatImage rx = resample_bilinear(x, 7, 15);
  const FloatImage rtu = resample_bilinear_adjoint(u, 12, 10);
  double lhs = 0, rhs = 0;
  for (size_t i = 0; i < rx.size(); ++i) lhs += rx.data()[i] * u.data()[i];
  for (size_t i = 0; i < x.size(); ++i) rhs += x.data()[i] * rtu.data()[i];
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("separable adjoint matches the forward operator") {
  const FloatImage x = random_image(21, 11, 13, 1);
  const FloatImage u = random_image(22, 11, 13, 1);
  const auto taps = gaussian_taps5();
  const FloatImage fx = correlate_separable(x, taps);
  const FloatImage ftu = correlate_separable_adjoint(u, taps);
  double lhs = 0, rhs = 0;
  for (size_t i = 0; i < fx.size(); ++i) lhs += fx.data()[i] * u.data()[i];
  for (size_t i = 0; i < x.size(); ++i) rhs += x.data()[i] * ftu.data()[i];
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("psnr closed forms") {
  FloatImage a(8, 8, 3, 0.5);
  CHECK(std::isinf(psnr(a, a)));
  FloatImage b(8, 8, 3, 0.5 + 1.0 / 255.0);
  CHECK(psnr(a, b) == doctest::Approx(20.0 * std::log10(255.0)).epsilon(1e-12));
  CHECK(psnr(a, b) == doctest::Approx(48.1308036).epsilon(1e-6));
  FloatImage c(8, 8, 3, 1.0);
  FloatImage d(8, 8, 3, 0.5);
  CHECK(psnr(c, d) == doctest::Approx(10.0 * std::log10(4.0)).epsilon(1e-12));
  CHECK(psnr(c, d) == doctest::Approx(6.0205999).epsilon(1e-6));
}

TEST_CASE("psnr and ssim are symmetric") {
  const FloatImage a = random_image(23, 16, 16);
  const FloatImage b = random_image(24, 16, 16);
  CHECK(psnr(a, b) == psnr(b, a));
  CHECK(ssim(a, b) == doctest::Approx(ssim(b, a)).epsilon(1e-12));
}

TEST_CASE("metrics reject shape mismatches") {
  const FloatImage a = random_image(25, 8, 8);
  const FloatImage b = random_image(26, 8, 9);
  CHECK_THROWS_AS(psnr(a, b), ShapeError);
  CHECK_THROWS_AS(ssim(a, b), ShapeError);
}

TEST_CASE("ssim of an image with itself is 1") {
  const FloatImage a = random_image(27, 16, 20);
  CHECK(ssim(a, a) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ssim of inverted checkerboard is strongly negative") {
  FloatImage cb(16, 16, 1);
  for (int r = 0; r < 16; ++r)
    for (int c = 0; c < 16; ++c) cb.at(r, c) = (r + c) % 2;
  FloatImage inv(16, 16, 1);
  for (size_t i = 0; i < cb.size(); ++i) inv.data()[i] = 1.0 - cb.data()[i];
  const double score = ssim(cb, inv);
  CHECK(score < 0.0);
  // brute-force oracle value (windowed moments evaluated directly)
  CHECK(score == doctest::Approx(-0.9964064683569569).epsilon(1e-9));
}

TEST_CASE("ssim is invariant to shifting the content of both inputs") {
  // same 12x12 pattern embedded at two offsets in a flat canvas
  const FloatImage patch = random_image(28, 12, 12, 1);
  auto embed = [&](int r0, int c0) {
    FloatImage canvas(48, 48, 1, 0.5);
    for (int r = 0; r < 12; ++r)
      for (int c = 0; c < 12; ++c) canvas.at(r0 + r, c0 + c) = patch.at(r, c);
    return canvas;
  };
  const FloatImage patch2 = random_image(29, 12, 12, 1);
  auto embed2 = [&](int r0, int c0) {
    FloatImage canvas(48, 48, 1, 0.5);
    for (int r = 0; r < 12; ++r)
      for (int c = 0; c < 12; ++c) canvas.at(r0 + r, c0 + c) = patch2.at(r, c);
    return canvas;
  };
  const double s1 = ssim(embed(12, 12), embed2(12, 12));
  const double s2 = ssim(embed(17, 20), embed2(17, 20));
  CHECK(s1 == doctest::Approx(s2).epsilon(1e-12));
}

TEST_CASE("ssim rejects images smaller than the window") {
  const FloatImage a = random_image(30, 8, 8);
  CHECK_THROWS_AS(ssim(a, a), SizeError);
}

TEST_CASE("ppm round-trip through bytes") {
  const FloatImage img = random_image(31, 9, 13);
  const std::string path = "/tmp/giffel_test_roundtrip.ppm";
  write_ppm(path, img);
  const FloatImage back = read_ppm(path);
  REQUIRE(back.same_shape(img));
  for (size_t i = 0; i < img.size(); ++i) {
    CHECK(std::abs(back.data()[i] - img.data()[i]) <= 0.5 / 255.0 + 1e-12);
  }
  // byte-quantized values survive exactly
  const FloatImage again = read_ppm((write_ppm(path, back), path));
  CHECK(again.data() == back.data());
}

TEST_CASE("png round-trip") {
  const FloatImage img = random_image(32, 11, 7);
  const std::string path = "/tmp/giffel_test_roundtrip.png";
  write_png(path, img);
  const FloatImage back = read_png(path);
  REQUIRE(back.same_shape(img));
  for (size_t i = 0; i < img.size(); ++i) {
    CHECK(std::abs(back.data()[i] - img.data()[i]) <= 0.5 / 255.0 + 1e-12);
  }
}

}  // TEST_SUITE
