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

#include "giffel/dither.h"

#include <cmath>

#include "giffel/imageops.h"

namespace giffel {

void DitherLossWeights::validate() const {
  for (double v : {lambda_fidelity, gamma_error, delta_banding, theta_perceptual,
                   beta_palette}) {
    if (!(std::isfinite(v) && v >= 0.0)) {
      throw ConfigError("dither weights: must be finite and non-negative");
    }
  }
}

void StageSchedule::validate() const {
  if (stage2_steps < 0 || stage3_steps < 0) {
    throw ConfigError("schedule: step counts must be non-negative");
  }
  if (!(stage2_lr > 0.0) || !(stage3_lr > 0.0)) {
    throw ConfigError("schedule: learning rates must be positive");
  }
  if (!(stage3_lr < stage2_lr)) {
    throw ConfigError("schedule: stage3 rate must be below stage2");
  }
  TemperatureSchedule{t_start, t_end, 1}.validate();
}

TemperatureSchedule StageSchedule::stage_temperature(int steps) const {
  return TemperatureSchedule{t_start, t_end, std::max(1, steps)};
}

IndexedImage floyd_steinberg(const FloatImage& img, const Palette& p,
                             bool serpentine) {
  if (img.channels() != 3) throw ShapeError("floyd_steinberg: expected 3 channels");
  p.validate();
  const int h = img.height(), w = img.width();
  std::vector<double> buf(img.data());  // working copy, unclamped
  IndexedImage out;
  out.height = h;
  out.width = w;
  out.palette = p;
  out.indices.resize(img.pixels());

  for (int r = 0; r < h; ++r) {
    const bool reverse = serpentine && (r % 2 == 1);
    const int c_begin = reverse ? w - 1 : 0;
    const int c_end = reverse ? -1 : w;
    const int step = reverse ? -1 : 1;
    for (int c = c_begin; c != c_end; c += step) {
      const size_t base = (static_cast<size_t>(r) * w + c) * 3;
      const double pr = clamp01(buf[base]);
      const double pg = clamp01(buf[base + 1]);
      const double pb = clamp01(buf[base + 2]);
      const int k = nearest_palette_index(p, pr, pg, pb);
      out.indices[static_cast<size_t>(r) * w + c] = static_cast<uint8_t>(k);
      const double err[3] = {buf[base] - p.colors[k][0],
                             buf[base + 1] - p.colors[k][1],
                             buf[base + 2] - p.colors[k][2]};
      auto spread = [&](int rr, int cc, double weight) {
        if (rr < 0 || rr >= h || cc < 0 || cc >= w) return;
        const size_t t = (static_cast<size_t>(rr) * w + cc) * 3;
        for (int m = 0; m < 3; ++m) buf[t + m] += err[m] * weight;
      };
      spread(r, c + step, 7.0 / 16.0);
      spread(r + 1, c - step, 3.0 / 16.0);
      spread(r + 1, c, 5.0 / 16.0);
      spread(r + 1, c + step, 1.0 / 16.0);
    }
  }
  return out;
}

ErrorImage error_image(const FloatImage& img, const Palette& p) {
  const FloatImage quant = hard_project(img, p).first;
  ErrorImage e(img.height(), img.width(), 3);
  for (size_t i = 0; i < e.size(); ++i) {
    e.data()[i] = std::clamp(img.data()[i] - quant.data()[i], -1.0, 1.0);
  }
  return e;
}

namespace {

FloatImage dithered_input(const FloatImage& img, const ErrorImage& e_prime) {
  if (!img.same_shape(e_prime)) throw ShapeError("apply_dither: shape mismatch");
  FloatImage sum(img.height(), img.width(), 3);
  for (size_t i = 0; i < sum.size(); ++i) {
    sum.data()[i] = clamp01(img.data()[i] + e_prime.data()[i]);
  }
  return sum;
}

}  // namespace

FloatImage apply_dither(const FloatImage& img, const ErrorImage& e_prime,
                        const Palette& p, ProjectionMode mode, double t) {
  const FloatImage sum = dithered_input(img, e_prime);
  if (mode == ProjectionMode::kHard) return hard_project(sum, p).first;
  return soft_project(sum, p, t);
}

double perceptual_proxy(const FloatImage& img, const FloatImage& img_hat,
                        GradBuffer* grad_hat) {
  if (!img.same_shape(img_hat)) throw ShapeError("perceptual_proxy: shape mismatch");
  if (grad_hat && grad_hat->size() != img_hat.size()) {
    throw ShapeError("perceptual_proxy: gradient size mismatch");
  }
  const std::array<double, 5> g5 = gaussian_taps5();
  const Kernel2D kx = sobel_x_kernel();
  const Kernel2D ky = sobel_y_kernel();

  struct Side {
    FloatImage y, gx, gy, mag, smooth;
  };
  auto run = [&](const FloatImage& im) {
    Side s;
    s.y = luma(im);
    auto [gx, gy] = sobel_gradients(s.y);
    s.gx = std::move(gx);
    s.gy = std::move(gy);
    s.mag = FloatImage(s.y.height(), s.y.width(), 1);
    for (size_t i = 0; i < s.mag.size(); ++i) {
      s.mag.data()[i] = std::hypot(s.gx.data()[i], s.gy.data()[i]);
    }
    s.smooth = correlate_separable(s.mag, g5);
    return s;
  };
  const Side a = run(img);
  const Side b = run(img_hat);

  double value = 0.0;
  FloatImage d_smooth_b(b.smooth.height(), b.smooth.width(), 1);
  for (size_t i = 0; i < a.smooth.size(); ++i) {
    const double d = a.smooth.data()[i] - b.smooth.data()[i];
    value += std::abs(d);
    if (d != 0.0) d_smooth_b.data()[i] = d > 0.0 ? -1.0 : 1.0;  // d/d(b.smooth)
  }
  if (!grad_hat) return value;

  const FloatImage d_mag = correlate_separable_adjoint(d_smooth_b, g5);
  FloatImage d_gx(d_mag.height(), d_mag.width(), 1);
  FloatImage d_gy(d_mag.height(), d_mag.width(), 1);
  for (size_t i = 0; i < d_mag.size(); ++i) {
    const double m = b.mag.data()[i];
    if (m > 0.0) {
      d_gx.data()[i] = d_mag.data()[i] * b.gx.data()[i] / m;
      d_gy.data()[i] = d_mag.data()[i] * b.gy.data()[i] / m;
    }
  }
  FloatImage d_y = correlate_replicate_adjoint(d_gx, kx);
  const FloatImage d_y2 = correlate_replicate_adjoint(d_gy, ky);
  for (size_t i = 0; i < d_y.size(); ++i) d_y.data()[i] += d_y2.data()[i];
  for (size_t i = 0; i < d_y.size(); ++i) {
    const double u = d_y.data()[i];
    if (u == 0.0) continue;
    grad_hat->data[3 * i] += 0.299 * u;
    grad_hat->data[3 * i + 1] += 0.587 * u;
    grad_hat->data[3 * i + 2] += 0.114 * u;
  }
  return value;
}

DitherLossParts dither_loss(const FloatImage& img, const ErrorImage& e_prime,
                            const Palette& p, const DitherLossWeights& w,
                            double t, double eta, GradBuffer* grad_eprime,
                            GradBuffer* grad_palette) {
  w.validate();
  if (!img.same_shape(e_prime)) throw ShapeError("dither_loss: shape mismatch");
  if (grad_eprime && grad_eprime->size() != e_prime.size()) {
    throw ShapeError("dither_loss: e' gradient size mismatch");
  }

  DitherLossParts parts;
  const bool need_hat =
      w.lambda_fidelity > 0.0 || w.delta_banding > 0.0 || w.theta_perceptual > 0.0;
  const bool want_grad = grad_eprime != nullptr || grad_palette != nullptr;

  FloatImage sum;                  // clamp01(I + E')
  FloatImage hat;                  // soft projection of sum
  GradBuffer d_hat;                // dL/d(hat), accumulated over terms
  if (need_hat) {
    sum = dithered_input(img, e_prime);
    hat = soft_project(sum, p, t);
    if (want_grad) d_hat = GradBuffer(hat.size());
  }

  if (w.lambda_fidelity > 0.0) {
    GradBuffer d_fid(want_grad ? hat.size() : 0);
    parts.fidelity = l1_loss(hat.data(), img.data(), want_grad ? &d_fid : nullptr);
    if (want_grad) {
      for (size_t i = 0; i < d_hat.size(); ++i) {
        d_hat.data[i] += w.lambda_fidelity * d_fid.data[i];
      }
    }
  }

  if (w.gamma_error > 0.0) {
    const ErrorImage target = error_image(img, p);  // I - hard(I), constant
    GradBuffer d_ep(want_grad && grad_eprime ? e_prime.size() : 0);
    parts.error_term = l1_loss(e_prime.data(), target.data(),
                               grad_eprime ? &d_ep : nullptr);
    if (grad_eprime) {
      for (size_t i = 0; i < d_ep.size(); ++i) {
        grad_eprime->data[i] += w.gamma_error * d_ep.data[i];
      }
    }
  }

  if (w.delta_banding > 0.0) {
    GradBuffer d_b(want_grad ? hat.size() : 0);
    parts.banding = multiscale_banding(hat, eta, want_grad ? &d_b : nullptr);
    if (want_grad) {
      for (size_t i = 0; i < d_hat.size(); ++i) {
        d_hat.data[i] += w.delta_banding * d_b.data[i];
      }
    }
  }

  if (w.theta_perceptual > 0.0) {
    GradBuffer d_r(want_grad ? hat.size() : 0);
    parts.perceptual = perceptual_proxy(img, hat, want_grad ? &d_r : nullptr);
    if (want_grad) {
      for (size_t i = 0; i < d_hat.size(); ++i) {
        d_hat.data[i] += w.theta_perceptual * d_r.data[i];
      }
    }
  }

  if (need_hat && want_grad && d_hat.max_abs() > 0.0) {
    GradBuffer d_sum(grad_eprime ? sum.size() : 0);
    soft_project_backward(sum, p, t, d_hat, grad_palette,
                          grad_eprime ? &d_sum : nullptr);
    if (grad_eprime) {
      // Through clamp01(I + E'): pass where the raw sum is in range.
      for (size_t i = 0; i < d_sum.size(); ++i) {
        const double raw = img.data()[i] + e_prime.data()[i];
        if (raw >= 0.0 && raw <= 1.0) grad_eprime->data[i] += d_sum.data[i];
      }
    }
  }

  parts.total = w.lambda_fidelity * parts.fidelity + w.gamma_error * parts.error_term +
                w.delta_banding * parts.banding + w.theta_perceptual * parts.perceptual;
  if (!std::isfinite(parts.total)) throw NumericError("dither_loss: non-finite loss");
  return parts;
}

OptimizeDitherResult optimize_dither(const FloatImage& img, const Palette& p,
                                     const DitherLossWeights& w,
                                     const StageSchedule& schedule, double eta) {
  w.validate();
  schedule.validate();
  OptimizeDitherResult result;
  result.e_prime = ErrorImage(img.height(), img.width(), 3, 0.0);
  const double t_eval = schedule.t_end;
  result.entry = dither_loss(img, result.e_prime, p, w, t_eval, eta, nullptr);
  result.best = result.entry;

  ErrorImage current = result.e_prime;
  OptimizerState state(schedule.stage2_lr);
  const TemperatureSchedule temps = schedule.stage_temperature(schedule.stage2_steps);
  GradBuffer grad(current.size());

  for (int k = 0; k < schedule.stage2_steps; ++k) {
    grad.zero();
    DitherLossParts parts;
    try {
      parts = dither_loss(img, current, p, w, temps.at(k), eta, &grad);
    } catch (const NumericError&) {
      throw NumericError("optimize_dither: diverged at step " + std::to_string(k) +
                         " of stage 2; " + std::to_string(result.trace.size()) +
                         " trace records accumulated");
    }
    result.trace.push_back(LossRecord{2, k, parts});
    adam_step(current.data(), grad.data, state, -1.0, 1.0);
    const DitherLossParts cand = dither_loss(img, current, p, w, t_eval, eta, nullptr);
    if (cand.total < result.best.total) {
      result.best = cand;
      result.e_prime = current;
    }
  }
  return result;
}

}  // namespace giffel
