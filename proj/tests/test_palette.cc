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
#include <random>

#include "doctest.h"
#include "giffel/imageops.h"
#include "oracles.h"

using namespace giffel;

namespace {

FloatImage random_image(uint64_t seed, int h, int w) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  FloatImage img(h, w, 3);
  for (double& v : img.data()) v = dist(rng);
  return img;
}

bool close_rgb(const Rgb& a, const Rgb& b, double tol) {
  for (int c = 0; c < 3; ++c) {
    if (std::abs(a[c] - b[c]) > tol) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("palette") {

TEST_CASE("median cut recovers a two-color image exactly") {
  // 3:1 split forces the boundary-snapped median
  FloatImage img(2, 2, 3);
  const Rgb a{0.2, 0.4, 0.6}, b{0.9, 0.1, 0.3};
  for (int i = 0; i < 3; ++i)
    for (int c = 0; c < 3; ++c) img.data()[3 * i + c] = a[c];
  for (int c = 0; c < 3; ++c) img.data()[9 + c] = b[c];

  const Palette p = median_cut(img, 2);
  REQUIRE(p.size() == 2);
  const bool order1 = close_rgb(p.colors[0], a, 1e-12) && close_rgb(p.colors[1], b, 1e-12);
  const bool order2 = close_rgb(p.colors[0], b, 1e-12) && close_rgb(p.colors[1], a, 1e-12);
  CHECK((order1 || order2));
  CHECK(palette_loss(img, p) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("median cut of a constant image duplicates the color") {
  FloatImage img(8, 8, 3, 0.3);
  const Palette p = median_cut(img, 4);
  REQUIRE(p.size() == 4);
  for (const Rgb& c : p.colors) CHECK(close_rgb(c, Rgb{0.3, 0.3, 0.3}, 1e-12));
}

TEST_CASE("median cut box count never exceeds distinct colors") {
  // 3 distinct colors, request 8: means of single-color boxes + padding
  FloatImage img(1, 6, 3);
  const Rgb cols[3] = {{0.1, 0.1, 0.1}, {0.5, 0.5, 0.5}, {0.9, 0.9, 0.9}};
  for (int i = 0; i < 6; ++i)
    for (int c = 0; c < 3; ++c) img.data()[3 * i + c] = cols[i % 3][c];
  const Palette p = median_cut(img, 8);
  REQUIRE(p.size() == 8);
  CHECK(palette_loss(img, p) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("median cut rejects bad arguments") {
  const FloatImage img = random_image(40, 2, 2);
  CHECK_THROWS_AS(median_cut(img, 16), ConfigError);  // np > pixels
  CHECK_THROWS_AS(median_cut(img, 1), ConfigError);
  CHECK_THROWS_AS(median_cut(img, 257), ConfigError);
}

TEST_CASE("median cut is deterministic") {
  const FloatImage img = random_image(41, 24, 24);
  const Palette p1 = median_cut(img, 16);
  const Palette p2 = median_cut(img, 16);
  CHECK(p1.colors == p2.colors);
}

TEST_CASE("hard projection picks exact matches and nearest colors") {
  Palette p;
  p.colors = {{1, 0, 0}, {0, 0, 1}};
  FloatImage img(1, 2, 3);
  img.data() = {0.9, 0.0, 0.0,  // near red
                0.0, 0.0, 1.0};  // exactly blue
  auto [quant, idx] = hard_project(img, p);
  CHECK(idx.indices[0] == 0);
  CHECK(idx.indices[1] == 1);
  CHECK(quant.at(0, 0, 0) == 1.0);
  CHECK(quant.at(0, 1, 2) == 1.0);
}

TEST_CASE("hard projection breaks ties toward the smallest index") {
  Palette p;
  p.colors = {{0.9, 0.9, 0.9}, {0.2, 0.2, 0.2}, {0.9, 0.9, 0.9}, {0.8, 0.8, 0.8}};
  // pixel equidistant from entries 1 and 3: 0.5 is 0.3 from both
  FloatImage img(1, 1, 3, 0.5);
  auto [quant, idx] = hard_project(img, p);
  CHECK(idx.indices[0] == 1);
}

TEST_CASE("hard projection is idempotent") {
  const FloatImage img = random_image(42, 16, 16);
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Palette p;
  for (int j = 0; j < 8; ++j) p.colors.push_back({dist(rng), dist(rng), dist(rng)});
  auto [quant, idx] = hard_project(img, p);
  auto [quant2, idx2] = hard_project(quant, p);
  CHECK(quant2.data() == quant.data());
  CHECK(idx2.indices == idx.indices);
}

TEST_CASE("permuting the palette permutes indices but not colors") {
  const FloatImage img = random_image(44, 12, 12);
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Palette p;
  for (int j = 0; j < 7; ++j) p.colors.push_back({dist(rng), dist(rng), dist(rng)});
  Palette reversed;
  reversed.colors.assign(p.colors.rbegin(), p.colors.rend());
  auto [quant1, idx1] = hard_project(img, p);
  auto [quant2, idx2] = hard_project(img, reversed);
  CHECK(quant1.data() == quant2.data());
  bool any_differs = false;
  for (size_t i = 0; i < idx1.indices.size(); ++i) {
    if (idx1.indices[i] != idx2.indices[i]) any_differs = true;
  }
  CHECK(any_differs);
}

TEST_CASE("palette loss closed forms and oracle agreement") {
  FloatImage gray(8, 8, 3, 0.5);
  Palette bw;
  bw.colors = {{0, 0, 0}, {1, 1, 1}};
  CHECK(palette_loss(gray, bw) == doctest::Approx(0.75).epsilon(1e-12));

  const FloatImage img = random_image(46, 10, 10);
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  Palette p;
  std::vector<Rgb> colors;
  for (int j = 0; j < 6; ++j) {
    Rgb c{dist(rng), dist(rng), dist(rng)};
    p.colors.push_back(c);
    colors.push_back(c);
  }
  CHECK(palette_loss(img, p) ==
        doctest::Approx(testing::naive_palette_loss(img, colors)).epsilon(1e-12));
}

TEST_CASE("palette loss matches psnr of the hard projection") {
  const FloatImage img = random_image(48, 16, 16);
  const Palette p = median_cut(img, 8);
  const double loss = palette_loss(img, p);
  const double psnr_direct = psnr(img, hard_project(img, p).first);
  CHECK(psnr_direct == doctest::Approx(10.0 * std::log10(3.0 / loss)).epsilon(1e-12));
}

TEST_CASE("lloyd refinement leaves a fixed point unchanged") {
  // two tight clusters with the palette already at their means
  FloatImage img(1, 4, 3);
  img.data() = {0.1, 0.1, 0.1, 0.3, 0.3, 0.3, 0.7, 0.7, 0.7, 0.9, 0.9, 0.9};
  Palette p;
  p.colors = {{0.2, 0.2, 0.2}, {0.8, 0.8, 0.8}};
  const Palette refined = lloyd_refine(img, p, 10, 0.0);
  CHECK(refined.colors == p.colors);
}

TEST_CASE("lloyd loss trace is monotone non-increasing") {
  const FloatImage img = random_image(49, 32, 32);
  const Palette p0 = median_cut(img, 12);
  std::vector<double> trace;
  lloyd_refine(img, p0, 25, 0.0, &trace);
  REQUIRE(trace.size() >= 2);
  for (size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] <= trace[i - 1] + 1e-12);
}

TEST_CASE("lloyd recovers well-separated cluster means") {
  std::mt19937_64 rng(50);
  std::normal_distribution<double> noise(0.0, 0.01);
  const Rgb centers[4] = {
      {0.1, 0.1, 0.1}, {0.9, 0.1, 0.1}, {0.1, 0.9, 0.9}, {0.9, 0.9, 0.9}};
  FloatImage img(16, 16, 3);
  Rgb sums[4] = {};
  long counts[4] = {};
  for (long i = 0; i < img.pixels(); ++i) {
    const int k = static_cast<int>(i % 4);
    for (int c = 0; c < 3; ++c) {
      const double v = clamp01(centers[k][c] + noise(rng));
      img.data()[3 * i + c] = v;
      sums[k][c] += v;
    }
    ++counts[k];
  }
  const Palette mc = median_cut(img, 4);
  const Palette p = lloyd_refine(img, mc, 50, 0.0);
  for (int k = 0; k < 4; ++k) {
    Rgb mean;
    for (int c = 0; c < 3; ++c) mean[c] = sums[k][c] / counts[k];
    bool found = false;
    for (const Rgb& col : p.colors) {
      if (close_rgb(col, mean, 1e-6)) found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("lloyd never increases the loss relative to its start") {
  for (uint64_t seed : {51, 52, 53}) {
    const FloatImage img = random_image(seed, 20, 20);
    const Palette p0 = median_cut(img, 9);
    const Palette p1 = lloyd_refine(img, p0, 30, 1e-12);
    CHECK(palette_loss(img, p1) <= palette_loss(img, p0) + 1e-12);
  }
}

TEST_CASE("palette text fixture round-trip") {
  Palette p;
  p.colors = {{0, 0, 0}, {1, 1, 1}, {32 / 255.0, 64 / 255.0, 128 / 255.0}};
  const std::string path = "/tmp/giffel_palette.txt";
  write_palette_text(path, p);
  const Palette back = read_palette_text(path);
  CHECK(back.colors == p.colors);

  const Palette fixture =
      read_palette_text(std::string(GIFFEL_ASSET_DIR) + "/palettes/bw.txt");
  CHECK(fixture.size() == 2);
  CHECK(fixture.colors[0] == Rgb{0, 0, 0});
  CHECK(fixture.colors[1] == Rgb{1, 1, 1});
}

}  // TEST_SUITE
