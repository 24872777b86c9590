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

#ifndef GIFFEL_CONFIG_H_
#define GIFFEL_CONFIG_H_

#include <cstdint>
#include <string>

#include "giffel/dither.h"

namespace giffel {

enum class PipelineKind { kClassical, kOptimized };

std::string to_string(PipelineKind kind);
PipelineKind pipeline_from_string(const std::string& name);

// Everything an encode run depends on. JSON-serializable so experiment
// configurations are diffable; command-line flags override file values.
struct EncodeConfig {
  int np = 16;
  PipelineKind pipeline = PipelineKind::kClassical;
  DitherLossWeights weights;
  StageSchedule schedule;
  double eta = 1.5;
  uint64_t seed = 1;
  bool fs_serpentine = true;
  int lloyd_iters = 32;
  double lloyd_tol = 1e-10;

  void validate() const;
};

// JSON round-trip; parse failures and invariant violations raise ConfigError.
EncodeConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const EncodeConfig& config);
EncodeConfig load_config_file(const std::string& path);

}  // namespace giffel

#endif  // GIFFEL_CONFIG_H_
