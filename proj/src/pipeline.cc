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

#include "giffel/pipeline.h"

#include <cmath>

#include "giffel/imageops.h"

namespace giffel {

namespace {

void fill_quality_metrics(const FloatImage& original, const FloatImage& result,
                          EncodeReport* report) {
  report->psnr_db = psnr(original, result);
  report->ssim_score = ssim(original, result);
  report->banding_z = banding_score(result, nullptr);
}

// Mean squared palette-fit error through the soft projection; the
// differentiable stand-in for the hard palette loss during stage 3.
double soft_palette_l2(const FloatImage& img, const Palette& p, double t,
                       GradBuffer* grad_palette) {
  const FloatImage proj = soft_project(img, p, t);
  const double n = static_cast<double>(img.pixels());
  double loss = 0.0;
  GradBuffer upstream(grad_palette ? img.size() : 0);
  for (size_t i = 0; i < img.size(); ++i) {
    const double d = img.data()[i] - proj.data()[i];
    loss += d * d;
    if (grad_palette) upstream.data[i] = -2.0 * d / n;
  }
  loss /= n;
  if (grad_palette) {
    soft_project_backward(img, p, t, upstream, grad_palette, nullptr);
  }
  return loss;
}

struct JointLoss {
  double total = 0.0;
  DitherLossParts dither;
  double palette_term = 0.0;
};

JointLoss joint_loss(const FloatImage& img, const Palette& p,
                     const ErrorImage& e_prime, const DitherLossWeights& w,
                     double t, double eta, GradBuffer* grad_eprime,
                     GradBuffer* grad_palette) {
  JointLoss out;
  if (w.beta_palette > 0.0) {
    out.palette_term = soft_palette_l2(img, p, t, grad_palette);
  }
  out.dither = dither_loss(img, e_prime, p, w, t, eta, grad_eprime, grad_palette);
  out.total = w.beta_palette * out.palette_term + out.dither.total;
  return out;
}

}  // namespace

EncodeResult classical_encode(const FloatImage& img, const EncodeConfig& config) {
  config.validate();
  EncodeResult result;
  const Palette pal = median_cut(img, config.np);
  result.indexed = floyd_steinberg(img, pal, config.fs_serpentine);

  FloatImage reconstructed(img.height(), img.width(), 3);
  for (long i = 0; i < img.pixels(); ++i) {
    const Rgb& c = pal.colors[result.indexed.indices[i]];
    for (int m = 0; m < 3; ++m) reconstructed.data()[3 * i + m] = c[m];
  }
  fill_quality_metrics(img, reconstructed, &result.report);
  return result;
}

EncodeResult three_stage_encode(const FloatImage& img, const EncodeConfig& config) {
  config.validate();
  EncodeResult result;
  EncodeReport& report = result.report;

  // Stage 1: palette fit.
  const Palette initial = median_cut(img, config.np);
  Palette pal = lloyd_refine(img, initial, config.lloyd_iters, config.lloyd_tol,
                             &report.stage1_palette_loss);

  // Stage 2: error-field optimization, palette fixed.
  OptimizeDitherResult stage2 =
      optimize_dither(img, pal, config.weights, config.schedule, config.eta);
  ErrorImage e_prime = std::move(stage2.e_prime);
  report.stage2_trace = std::move(stage2.trace);
  report.stage2_entry = stage2.entry;
  report.stage2_best = stage2.best;

  // Stage 3: joint fine-tune at the lower learning rate.
  const double t_eval = config.schedule.t_end;
  {
    const JointLoss entry = joint_loss(img, pal, e_prime, config.weights, t_eval,
                                       config.eta, nullptr, nullptr);
    report.stage3_entry_total = entry.total;
    report.stage3_exit_total = entry.total;

    Palette best_pal = pal;
    ErrorImage best_e = e_prime;

    std::vector<double> pal_params(static_cast<size_t>(pal.size()) * 3);
    auto load_params = [&](const Palette& p) {
      for (int j = 0; j < p.size(); ++j)
        for (int c = 0; c < 3; ++c) pal_params[3 * j + c] = p.colors[j][c];
    };
    auto store_params = [&](Palette* p) {
      for (int j = 0; j < p->size(); ++j)
        for (int c = 0; c < 3; ++c) p->colors[j][c] = pal_params[3 * j + c];
    };
    load_params(pal);

    OptimizerState pal_state(config.schedule.stage3_lr);
    OptimizerState err_state(config.schedule.stage3_lr);
    const TemperatureSchedule temps =
        config.schedule.stage_temperature(config.schedule.stage3_steps);
    GradBuffer grad_pal(pal_params.size());
    GradBuffer grad_err(e_prime.size());

    for (int k = 0; k < config.schedule.stage3_steps; ++k) {
      grad_pal.zero();
      grad_err.zero();
      const JointLoss step_loss = joint_loss(img, pal, e_prime, config.weights,
                                             temps.at(k), config.eta, &grad_err,
                                             &grad_pal);
      report.stage3_trace.push_back(LossRecord{3, k, step_loss.dither});
      adam_step(pal_params, grad_pal.data, pal_state, 0.0, 1.0);
      adam_step(e_prime.data(), grad_err.data, err_state, -1.0, 1.0);
      store_params(&pal);

      const JointLoss cand = joint_loss(img, pal, e_prime, config.weights, t_eval,
                                        config.eta, nullptr, nullptr);
      if (cand.total < report.stage3_exit_total) {
        report.stage3_exit_total = cand.total;
        best_pal = pal;
        best_e = e_prime;
      }
    }
    pal = std::move(best_pal);
    e_prime = std::move(best_e);
  }

  // Final projection in hard mode: proj_h(clamp01(I + E')).
  FloatImage dithered_sum(img.height(), img.width(), 3);
  for (size_t i = 0; i < dithered_sum.size(); ++i) {
    dithered_sum.data()[i] = clamp01(img.data()[i] + e_prime.data()[i]);
  }
  auto [quantized, indexed] = hard_project(dithered_sum, pal);
  result.indexed = std::move(indexed);
  fill_quality_metrics(img, quantized, &report);
  return result;
}

EncodeResult encode_image(const FloatImage& img, const EncodeConfig& config) {
  return config.pipeline == PipelineKind::kClassical ? classical_encode(img, config)
                                                     : three_stage_encode(img, config);
}

}  // namespace giffel
