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

#include "giffel/selftest.h"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "giffel/dither.h"
#include "giffel/gif.h"
#include "giffel/imageops.h"

namespace giffel {

namespace {

struct CheckFailure {
  std::string message;
};

void expect(bool cond, const std::string& message) {
  if (!cond) throw CheckFailure{message};
}

FloatImage random_image(std::mt19937_64& rng, int h, int w, double lo = 0.0,
                        double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  FloatImage img(h, w, 3);
  for (double& v : img.data()) v = dist(rng);
  return img;
}

// Byte-quantized colors so container round-trips reproduce them exactly.
Palette random_palette(std::mt19937_64& rng, int np) {
  std::uniform_int_distribution<int> dist(0, 255);
  Palette p;
  for (int j = 0; j < np; ++j) {
    p.colors.push_back({dist(rng) / 255.0, dist(rng) / 255.0, dist(rng) / 255.0});
  }
  return p;
}

void check_lzw_roundtrip(uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int trial = 0; trial < 200; ++trial) {
    const int mcs = 2 + static_cast<int>(rng() % 7);
    std::uniform_int_distribution<int> sym(0, (1 << mcs) - 1);
    std::uniform_int_distribution<int> len(1, 4000);
    std::vector<uint8_t> data(len(rng));
    for (uint8_t& v : data) v = static_cast<uint8_t>(sym(rng));
    const auto decoded = lzw_decode(lzw_encode(data, mcs), mcs);
    expect(decoded == data, "lzw round-trip mismatch");
  }
}

void check_gif_roundtrip(uint64_t seed) {
  std::mt19937_64 rng(seed + 1);
  const int palette_sizes[] = {2, 4, 16, 256};
  for (int trial = 0; trial < 50; ++trial) {
    IndexedImage img;
    img.height = 1 + static_cast<int>(rng() % 48);
    img.width = 1 + static_cast<int>(rng() % 48);
    img.palette = random_palette(rng, palette_sizes[rng() % 4]);
    img.indices.resize(static_cast<size_t>(img.height) * img.width);
    std::uniform_int_distribution<int> idx(0, img.palette.size() - 1);
    for (uint8_t& v : img.indices) v = static_cast<uint8_t>(idx(rng));
    const IndexedImage back = read_gif(write_gif(img));
    expect(back.indices == img.indices, "gif round-trip index mismatch");
    for (int j = 0; j < img.palette.size(); ++j) {
      for (int c = 0; c < 3; ++c) {
        expect(back.palette.colors[j][c] == img.palette.colors[j][c],
               "gif round-trip palette mismatch");
      }
    }
  }
}

void check_gif_reference(const std::string& fixtures_dir) {
  const IndexedImage img = read_gif_file(fixtures_dir + "/ref_4x4.gif");
  const std::vector<uint8_t> expected = {0, 1, 2, 3, 3, 2, 1, 0,
                                         1, 1, 2, 2, 0, 3, 0, 3};
  expect(img.height == 4 && img.width == 4, "reference gif: wrong dims");
  expect(img.indices == expected, "reference gif: wrong indices");
  const Rgb expected_colors[4] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}};
  for (int j = 0; j < 4; ++j) {
    for (int c = 0; c < 3; ++c) {
      expect(std::abs(img.palette.colors[j][c] - expected_colors[j][c]) < 1e-9,
             "reference gif: wrong palette entry");
    }
  }
}

void check_soft_hard_consistency(uint64_t seed) {
  std::mt19937_64 rng(seed + 2);
  for (int trial = 0; trial < 20; ++trial) {
    const Palette p = random_palette(rng, 2 + static_cast<int>(rng() % 7));
    FloatImage img = random_image(rng, 6, 6);
    // enforce a unique nearest color with margin on every pixel
    for (long i = 0; i < img.pixels(); ++i) {
      double* x = &img.data()[3 * i];
      for (int attempt = 0; attempt < 200; ++attempt) {
        double d0 = 1e9, d1 = 1e9;
        for (int j = 0; j < p.size(); ++j) {
          double d = 0;
          for (int c = 0; c < 3; ++c) {
            const double t = p.colors[j][c] - x[c];
            d += t * t;
          }
          if (d < d0) {
            d1 = d0;
            d0 = d;
          } else if (d < d1) {
            d1 = d;
          }
        }
        if (d1 - d0 >= 0.01) break;
        std::uniform_real_distribution<double> dist(0.0, 1.0);
        for (int c = 0; c < 3; ++c) x[c] = dist(rng);
      }
    }
    const FloatImage hard = hard_project(img, p).first;
    const FloatImage soft = soft_project(img, p, 1e-4);
    double max_dev = 0.0;
    for (size_t i = 0; i < hard.size(); ++i) {
      max_dev = std::max(max_dev, std::abs(hard.data()[i] - soft.data()[i]));
    }
    expect(max_dev < 1e-3, "soft/hard deviation " + std::to_string(max_dev));
  }
}

void check_fd_soft_project(uint64_t seed) {
  std::mt19937_64 rng(seed + 3);
  const FloatImage img = random_image(rng, 4, 4);
  const Palette p = random_palette(rng, 4);
  const double t = 0.1;
  // Scalar probe loss: weighted sum of outputs.
  std::vector<double> probe(img.size());
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double& v : probe) v = dist(rng);

  std::vector<double> params(static_cast<size_t>(p.size()) * 3);
  for (int j = 0; j < p.size(); ++j)
    for (int c = 0; c < 3; ++c) params[3 * j + c] = p.colors[j][c];
  auto loss_fn = [&](std::span<const double> q) {
    Palette pp = p;
    for (int j = 0; j < pp.size(); ++j)
      for (int c = 0; c < 3; ++c) pp.colors[j][c] = q[3 * j + c];
    const FloatImage out = soft_project(img, pp, t);
    double acc = 0.0;
    for (size_t i = 0; i < out.size(); ++i) acc += probe[i] * out.data()[i];
    return acc;
  };
  GradBuffer upstream(img.size());
  upstream.data = probe;
  GradBuffer grad_p(params.size());
  soft_project_backward(img, p, t, upstream, &grad_p, nullptr);
  FdCheckOptions opts;
  opts.seed = seed + 4;
  const double err = finite_diff_check(loss_fn, params, grad_p.data, opts);
  expect(err < 1e-4, "soft_project palette grad rel err " + std::to_string(err));
}

void check_fd_banding(uint64_t seed) {
  std::mt19937_64 rng(seed + 5);
  FloatImage img = gaussian_smooth(random_image(rng, 16, 16, 0.2, 0.8));
  GradBuffer grad(img.size());
  banding_score(img, &grad);
  auto loss_fn = [&](std::span<const double> q) {
    FloatImage im = img;
    std::copy(q.begin(), q.end(), im.data().begin());
    return banding_score(im, nullptr);
  };
  FdCheckOptions opts;
  opts.seed = seed + 6;
  const double err = finite_diff_check(loss_fn, img.data(), grad.data, opts);
  expect(err < 1e-3, "banding grad rel err " + std::to_string(err));
}

void check_lloyd_descent(uint64_t seed) {
  std::mt19937_64 rng(seed + 7);
  const FloatImage img = random_image(rng, 24, 24);
  const Palette mc = median_cut(img, 8);
  std::vector<double> trace;
  lloyd_refine(img, mc, 20, 0.0, &trace);
  for (size_t i = 1; i < trace.size(); ++i) {
    expect(trace[i] <= trace[i - 1] + 1e-12, "lloyd loss increased");
  }
}

void check_fs_golden_row() {
  FloatImage img(1, 2, 3, 0.5);
  Palette p;
  p.colors = {{0, 0, 0}, {1, 1, 1}};
  const IndexedImage out = floyd_steinberg(img, p, true);
  expect(out.indices[0] == 0 && out.indices[1] == 1, "fs golden row mismatch");
}

void check_psnr_closed_form() {
  FloatImage a(8, 8, 3, 0.5);
  FloatImage b(8, 8, 3, 0.5 + 1.0 / 255.0);
  expect(std::abs(psnr(a, b) - 20.0 * std::log10(255.0)) < 1e-9,
         "psnr closed form mismatch");
}

void check_banding_nullity() {
  const FloatImage img(64, 64, 3, 0.42);
  expect(banding_score(img, nullptr) == 0.0, "Z nonzero on constant image");
  expect(multiscale_banding(img, 1.5, nullptr) == 0.0, "B nonzero on constant image");
}

void check_adam_bowl() {
  std::vector<double> x{0.5};
  OptimizerState state(0.05);
  for (int k = 0; k < 200; ++k) {
    const std::vector<double> g{2.0 * x[0]};
    adam_step(x, g, state, -1.0, 1.0);
  }
  expect(std::abs(x[0]) < 1e-2, "adam failed to reach the bowl minimum");
}

}  // namespace

std::vector<SelftestResult> run_selftest(const std::string& fixtures_dir,
                                         uint64_t seed) {
  using Check = std::pair<std::string, std::function<void()>>;
  const std::vector<Check> checks = {
      {"lzw_roundtrip_random", [&] { check_lzw_roundtrip(seed); }},
      {"gif_roundtrip_random", [&] { check_gif_roundtrip(seed); }},
      {"gif_reference_fixture", [&] { check_gif_reference(fixtures_dir); }},
      {"soft_hard_consistency", [&] { check_soft_hard_consistency(seed); }},
      {"fd_soft_project", [&] { check_fd_soft_project(seed); }},
      {"fd_banding_score", [&] { check_fd_banding(seed); }},
      {"lloyd_descent", [&] { check_lloyd_descent(seed); }},
      {"fs_golden_row", check_fs_golden_row},
      {"psnr_closed_form", check_psnr_closed_form},
      {"banding_nullity", check_banding_nullity},
      {"adam_quadratic_bowl", check_adam_bowl},
  };

  std::vector<SelftestResult> results;
  for (const auto& [name, fn] : checks) {
    SelftestResult r;
    r.name = name;
    try {
      fn();
      r.passed = true;
    } catch (const CheckFailure& f) {
      r.passed = false;
      r.message = f.message;
    } catch (const std::exception& e) {
      r.passed = false;
      r.message = e.what();
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace giffel
