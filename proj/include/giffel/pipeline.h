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
// End-to-end encoders. The classical pipeline is median-cut plus
// Floyd-Steinberg. The optimized pipeline runs three stages: palette fit
// (median cut + refinement), error-field optimization against the
// composite loss with the palette fixed, then a low-rate joint fine-tune
// of palette and error field with gradients through the soft projection.

#ifndef GIFFEL_PIPELINE_H_
#define GIFFEL_PIPELINE_H_

#include <utility>
#include <vector>

#include "giffel/config.h"
#include "giffel/dither.h"

namespace giffel {

struct EncodeReport {
  double psnr_db = 0.0;
  double ssim_score = 0.0;
  double banding_z = 0.0;  // single-scale banding score of the result
  std::vector<double> stage1_palette_loss;  // per refinement iteration
  std::vector<LossRecord> stage2_trace;
  std::vector<LossRecord> stage3_trace;
  DitherLossParts stage2_entry;  // dither loss of E'=0, eval temperature
  DitherLossParts stage2_best;   // dither loss of the kept iterate
  double stage3_entry_total = 0.0;  // joint loss incl. palette term
  double stage3_exit_total = 0.0;
};

struct EncodeResult {
  IndexedImage indexed;
  EncodeReport report;
};

EncodeResult classical_encode(const FloatImage& img, const EncodeConfig& config);
EncodeResult three_stage_encode(const FloatImage& img, const EncodeConfig& config);

// Dispatches on config.pipeline.
EncodeResult encode_image(const FloatImage& img, const EncodeConfig& config);

}  // namespace giffel

#endif  // GIFFEL_PIPELINE_H_
