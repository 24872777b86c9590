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
// The differentiable half of the toolkit: softmax relaxation of nearest-
// color projection, hand-derived backward passes, an Adam optimizer, and a
// finite-difference harness that every gradient in the project is checked
// against. There is no autodiff tape; each loss ships its own backward.

#ifndef GIFFEL_DIFFQUANT_H_
#define GIFFEL_DIFFQUANT_H_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "giffel/image.h"
#include "giffel/palette.h"

namespace giffel {

// Flat gradient accumulator paired with a parameter block of equal size.
struct GradBuffer {
  std::vector<double> data;

  GradBuffer() = default;
  explicit GradBuffer(size_t n) : data(n, 0.0) {}
  size_t size() const { return data.size(); }
  void zero() { std::fill(data.begin(), data.end(), 0.0); }
  double max_abs() const;
  bool all_finite() const;
};

// Geometric decay from t_start to t_end across a fixed number of steps.
struct TemperatureSchedule {
  double t_start = 1.0;
  double t_end = 0.01;
  int steps = 1;

  void validate() const;
  // Temperature for step k in [0, steps-1]; k is clamped to the range.
  double at(int k) const;
};

// Adam with bias correction; beta1=0.9, beta2=0.999, eps=1e-8.
struct OptimizerState {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  long step = 0;
  std::vector<double> m;  // first moment
  std::vector<double> v;  // second moment

  explicit OptimizerState(double lr = 1e-3) : learning_rate(lr) {}
  void reset(size_t n);
};

// One Adam update in place; parameters are clamped to [lo, hi] afterwards
// ([0,1] for images/palettes, [-1,1] for error images). Non-finite
// gradients raise NumericError.
void adam_step(std::span<double> params, std::span<const double> grads,
               OptimizerState& state, double lo, double hi);

// Softmax weights of one pixel against the palette: w_j proportional to
// exp(-|P[j] - x|^2 / t), computed with max subtraction. Sums to 1.
void soft_weights(const Palette& p, const double* pixel, double t, double* w);

// Soft projection: each output pixel is the weight-averaged palette color.
// Converges to hard_project as t -> 0.
FloatImage soft_project(const FloatImage& img, const Palette& p, double t);

// Exact gradients of soft_project through the softmax Jacobian, accumulated
// into grad_palette (Np*3) and grad_img (H*W*3).
void soft_project_backward(const FloatImage& img, const Palette& p, double t,
                           const GradBuffer& upstream, GradBuffer* grad_palette,
                           GradBuffer* grad_img);

// Sum of absolute differences with subgradient sign(a-b), sign(0) = 0.
double l1_loss(std::span<const double> a, std::span<const double> b,
               GradBuffer* grad_a);

// palette_loss plus its gradient with respect to the palette entries. The
// nearest-color assignment is locally constant, so away from assignment
// boundaries the loss is smooth with d/dP[k] = (2/(H*W)) (P[k] - I) summed
// over the pixels assigned to k.
double palette_loss_with_grad(const FloatImage& img, const Palette& p,
                              GradBuffer* grad_palette);

// Central-difference gradient check.
struct FdCheckOptions {
  double h = 1e-5;
  int max_coords = 32;       // random subset size (all coords if fewer)
  uint64_t seed = 0x9e3779b97f4a7c15ull;
  // Kink guard: return false to skip a coordinate that sits too close to a
  // non-smooth point of the loss.
  std::function<bool(size_t)> coord_ok;
};

// Max relative error between analytic and central-difference gradients over
// the sampled coordinates. loss_fn must be deterministic.
double finite_diff_check(const std::function<double(std::span<const double>)>& loss_fn,
                         std::span<const double> params,
                         std::span<const double> analytic_grad,
                         const FdCheckOptions& opts = {});

}  // namespace giffel

#endif  // GIFFEL_DIFFQUANT_H_
