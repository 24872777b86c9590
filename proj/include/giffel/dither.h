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
// Dithering: the Floyd-Steinberg baseline and the optimization-based
// alternative that descends a composite loss over a per-image error field.

#ifndef GIFFEL_DITHER_H_
#define GIFFEL_DITHER_H_

#include <vector>

#include "giffel/banding.h"
#include "giffel/diffquant.h"
#include "giffel/image.h"
#include "giffel/palette.h"

namespace giffel {

// Weights of the composite dither loss; beta scales the palette L2 term
// used during joint fine-tuning.
struct DitherLossWeights {
  double lambda_fidelity = 1.0;
  double gamma_error = 0.5;
  double delta_banding = 0.1;
  double theta_perceptual = 0.0;
  double beta_palette = 1.0;

  void validate() const;
};

// Step counts, learning rates and temperature annealing for the two
// optimization stages. Stage 3 fine-tunes jointly at the lower rate.
struct StageSchedule {
  int stage2_steps = 300;
  int stage3_steps = 100;
  double stage2_lr = 0.02;
  double stage3_lr = 0.002;
  double t_start = 1.0;
  double t_end = 0.01;

  void validate() const;
  TemperatureSchedule stage_temperature(int steps) const;
};

struct DitherLossParts {
  double total = 0.0;
  double fidelity = 0.0;    // L1(I, projected(I + E'))
  double error_term = 0.0;  // L1(E', I - hard(I))
  double banding = 0.0;     // multiscale banding of the projection
  double perceptual = 0.0;  // gradient-domain proxy
};

// One row of the optimization trace (serialized to JSON by the CLI).
struct LossRecord {
  int stage = 0;
  int step = 0;
  DitherLossParts parts;
};

// Classical error diffusion: nearest palette color per pixel (same
// tie-break as hard_project), residual pushed onto unvisited neighbors
// with weights 7/16, 3/16, 5/16, 1/16, mirrored on reverse rows when
// scanning serpentine. The working buffer is left unclamped; only the
// value fed to the projection is clamped to [0,1].
IndexedImage floyd_steinberg(const FloatImage& img, const Palette& p,
                             bool serpentine);

// E = I - hard_project(I, P); in [-1,1] by construction.
ErrorImage error_image(const FloatImage& img, const Palette& p);

enum class ProjectionMode { kHard, kSoft };

// proj(clamp01(I + E'), P) with soft (temperature t) or hard projection.
FloatImage apply_dither(const FloatImage& img, const ErrorImage& e_prime,
                        const Palette& p, ProjectionMode mode, double t = 1e-4);

// Gradient-domain fidelity: L1 between gaussian-smoothed Sobel magnitudes
// of the two lumas. Invariant to DC shifts. Gradient w.r.t. img_hat.
double perceptual_proxy(const FloatImage& img, const FloatImage& img_hat,
                        GradBuffer* grad_hat);

// Composite loss at temperature t (soft projection inside):
//   lambda L1(I, Ihat) + gamma L1(E', I - Ihard) + delta B_eta(Ihat)
//   + theta R(I, Ihat)
// Terms with zero weight are skipped entirely. Ihard is a constant with
// respect to both E' and the palette. grad_eprime/grad_palette, when
// non-null, receive exact gradients (accumulated).
DitherLossParts dither_loss(const FloatImage& img, const ErrorImage& e_prime,
                            const Palette& p, const DitherLossWeights& w,
                            double t, double eta, GradBuffer* grad_eprime,
                            GradBuffer* grad_palette = nullptr);

struct OptimizeDitherResult {
  ErrorImage e_prime;             // best iterate under the eval temperature
  std::vector<LossRecord> trace;  // per-step losses at the annealed temperature
  DitherLossParts entry;          // loss of E' = 0 at the eval temperature
  DitherLossParts best;           // loss of the returned iterate, same basis
};

// Adam descent on dither_loss over E' (palette fixed), starting from
// E' = 0, annealing the temperature over stage2_steps. Candidates are
// ranked at the fixed final temperature so the returned iterate never
// loses to the E' = 0 baseline. Divergence raises NumericError.
OptimizeDitherResult optimize_dither(const FloatImage& img, const Palette& p,
                                     const DitherLossWeights& w,
                                     const StageSchedule& schedule, double eta);

}  // namespace giffel

#endif  // GIFFEL_DITHER_H_
