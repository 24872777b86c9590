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

#include "giffel/diffquant.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace giffel {

double GradBuffer::max_abs() const {
  double m = 0.0;
  for (double v : data) m = std::max(m, std::abs(v));
  return m;
}

bool GradBuffer::all_finite() const {
  return std::all_of(data.begin(), data.end(),
                     [](double v) { return std::isfinite(v); });
}

void TemperatureSchedule::validate() const {
  if (!(t_end > 0.0) || !(t_start >= t_end)) {
    throw ConfigError("temperature schedule: need t_start >= t_end > 0");
  }
  if (steps < 1) throw ConfigError("temperature schedule: steps must be >= 1");
}

double TemperatureSchedule::at(int k) const {
  validate();
  if (steps == 1) return t_start;
  const int kk = std::clamp(k, 0, steps - 1);
  const double frac = static_cast<double>(kk) / (steps - 1);
  return t_start * std::pow(t_end / t_start, frac);
}

void OptimizerState::reset(size_t n) {
  step = 0;
  m.assign(n, 0.0);
  v.assign(n, 0.0);
}

void adam_step(std::span<double> params, std::span<const double> grads,
               OptimizerState& state, double lo, double hi) {
  if (params.size() != grads.size()) {
    throw ShapeError("adam_step: parameter/gradient size mismatch");
  }
  if (state.m.size() != params.size()) state.reset(params.size());
  for (double g : grads) {
    if (!std::isfinite(g)) throw NumericError("adam_step: non-finite gradient");
  }
  ++state.step;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (size_t i = 0; i < params.size(); ++i) {
    state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grads[i];
    state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * grads[i] * grads[i];
    const double mhat = state.m[i] / bc1;
    const double vhat = state.v[i] / bc2;
    params[i] = std::clamp(
        params[i] - state.learning_rate * mhat / (std::sqrt(vhat) + state.epsilon),
        lo, hi);
  }
}

void soft_weights(const Palette& p, const double* pixel, double t, double* w) {
  const int np = p.size();
  double max_logit = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < np; ++j) {
    const double dr = p.colors[j][0] - pixel[0];
    const double dg = p.colors[j][1] - pixel[1];
    const double db = p.colors[j][2] - pixel[2];
    const double logit = -(dr * dr + dg * dg + db * db) / t;
    w[j] = logit;
    max_logit = std::max(max_logit, logit);
  }
  double sum = 0.0;
  for (int j = 0; j < np; ++j) {
    w[j] = std::exp(w[j] - max_logit);
    sum += w[j];
  }
  for (int j = 0; j < np; ++j) w[j] /= sum;
}

FloatImage soft_project(const FloatImage& img, const Palette& p, double t) {
  if (img.channels() != 3) throw ShapeError("soft_project: expected 3 channels");
  if (!(t > 0.0)) throw ConfigError("soft_project: temperature must be positive");
  p.validate();
  const int np = p.size();
  FloatImage out(img.height(), img.width(), 3);
  std::vector<double> w(np);
  for (long i = 0; i < img.pixels(); ++i) {
    soft_weights(p, &img.data()[3 * i], t, w.data());
    double acc[3] = {0, 0, 0};
    for (int j = 0; j < np; ++j) {
      acc[0] += w[j] * p.colors[j][0];
      acc[1] += w[j] * p.colors[j][1];
      acc[2] += w[j] * p.colors[j][2];
    }
    for (int c = 0; c < 3; ++c) out.data()[3 * i + c] = clamp01(acc[c]);
  }
  return out;
}

void soft_project_backward(const FloatImage& img, const Palette& p, double t,
                           const GradBuffer& upstream, GradBuffer* grad_palette,
                           GradBuffer* grad_img) {
  if (img.channels() != 3) throw ShapeError("soft_project_backward: expected 3 channels");
  if (!(t > 0.0)) throw ConfigError("soft_project_backward: temperature must be positive");
  p.validate();
  const int np = p.size();
  if (upstream.size() != img.size()) {
    throw ShapeError("soft_project_backward: upstream size mismatch");
  }
  if (grad_palette && grad_palette->size() != static_cast<size_t>(np) * 3) {
    throw ShapeError("soft_project_backward: palette grad size mismatch");
  }
  if (grad_img && grad_img->size() != img.size()) {
    throw ShapeError("soft_project_backward: image grad size mismatch");
  }

  std::vector<double> w(np);
  std::vector<double> g(np);  // u . P[j] per palette entry
  for (long i = 0; i < img.pixels(); ++i) {
    const double* x = &img.data()[3 * i];
    const double* u = &upstream.data[3 * i];
    if (u[0] == 0.0 && u[1] == 0.0 && u[2] == 0.0) continue;
    soft_weights(p, x, t, w.data());

    // out = sum_j w_j P[j]; with logits s_j = -|P[j]-x|^2 / t:
    //   d out / d s_j flows through the softmax Jacobian w_j (delta - w).
    double avg = 0.0;
    for (int j = 0; j < np; ++j) {
      g[j] = u[0] * p.colors[j][0] + u[1] * p.colors[j][1] + u[2] * p.colors[j][2];
      avg += g[j] * w[j];
    }
    for (int j = 0; j < np; ++j) {
      const double ds = w[j] * (g[j] - avg);  // dL/ds_j
      if (grad_palette) {
        for (int c = 0; c < 3; ++c) {
          // direct convex-combination term + logit term
          (*grad_palette).data[3 * j + c] +=
              u[c] * w[j] + ds * (-2.0 / t) * (p.colors[j][c] - x[c]);
        }
      }
      if (grad_img) {
        for (int c = 0; c < 3; ++c) {
          (*grad_img).data[3 * i + c] += ds * (2.0 / t) * (p.colors[j][c] - x[c]);
        }
      }
    }
  }
}

double l1_loss(std::span<const double> a, std::span<const double> b,
               GradBuffer* grad_a) {
  if (a.size() != b.size()) throw ShapeError("l1_loss: shape mismatch");
  if (grad_a && grad_a->size() != a.size()) {
    throw ShapeError("l1_loss: gradient size mismatch");
  }
  double total = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    total += std::abs(d);
    if (grad_a && d != 0.0) grad_a->data[i] += d > 0.0 ? 1.0 : -1.0;
  }
  return total;
}

double palette_loss_with_grad(const FloatImage& img, const Palette& p,
                              GradBuffer* grad_palette) {
  if (img.channels() != 3) throw ShapeError("palette_loss_with_grad: expected 3 channels");
  p.validate();
  if (grad_palette && grad_palette->size() != static_cast<size_t>(p.size()) * 3) {
    throw ShapeError("palette_loss_with_grad: gradient size mismatch");
  }
  const double n = static_cast<double>(img.pixels());
  double total = 0.0;
  for (long i = 0; i < img.pixels(); ++i) {
    const double* x = &img.data()[3 * i];
    const int k = nearest_palette_index(p, x[0], x[1], x[2]);
    for (int c = 0; c < 3; ++c) {
      const double d = x[c] - p.colors[k][c];
      total += d * d;
      if (grad_palette) grad_palette->data[3 * k + c] += -2.0 * d / n;
    }
  }
  return total / n;
}

double finite_diff_check(const std::function<double(std::span<const double>)>& loss_fn,
                         std::span<const double> params,
                         std::span<const double> analytic_grad,
                         const FdCheckOptions& opts) {
  if (params.size() != analytic_grad.size()) {
    throw ShapeError("finite_diff_check: size mismatch");
  }
  std::vector<size_t> coords(params.size());
  std::iota(coords.begin(), coords.end(), 0);
  if (opts.coord_ok) {
    coords.erase(std::remove_if(coords.begin(), coords.end(),
                                [&](size_t i) { return !opts.coord_ok(i); }),
                 coords.end());
  }
  if (static_cast<int>(coords.size()) > opts.max_coords) {
    std::mt19937_64 rng(opts.seed);
    std::shuffle(coords.begin(), coords.end(), rng);
    coords.resize(opts.max_coords);
  }

  std::vector<double> perturbed(params.begin(), params.end());
  double max_rel = 0.0;
  for (size_t i : coords) {
    const double orig = perturbed[i];
    perturbed[i] = orig + opts.h;
    const double up = loss_fn(perturbed);
    perturbed[i] = orig - opts.h;
    const double down = loss_fn(perturbed);
    perturbed[i] = orig;
    const double fd = (up - down) / (2.0 * opts.h);
    const double an = analytic_grad[i];
    const double denom = std::max({std::abs(fd), std::abs(an), 1e-8});
    max_rel = std::max(max_rel, std::abs(fd - an) / denom);
  }
  return max_rel;
}

}  // namespace giffel
