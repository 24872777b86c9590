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

#include "giffel/config.h"

#include <fstream>

#include "json.hpp"

namespace giffel {

using nlohmann::json;

std::string to_string(PipelineKind kind) {
  return kind == PipelineKind::kClassical ? "classical" : "optimized";
}

PipelineKind pipeline_from_string(const std::string& name) {
  if (name == "classical") return PipelineKind::kClassical;
  if (name == "optimized") return PipelineKind::kOptimized;
  throw ConfigError("unknown pipeline: " + name);
}

void EncodeConfig::validate() const {
  if (np < 2 || np > 256) throw ConfigError("config: np must be in [2,256]");
  if (!(eta > 1.0)) throw ConfigError("config: eta must exceed 1");
  if (lloyd_iters < 0) throw ConfigError("config: lloyd_iters must be >= 0");
  if (!(lloyd_tol >= 0.0)) throw ConfigError("config: lloyd_tol must be >= 0");
  weights.validate();
  schedule.validate();
}

EncodeConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  EncodeConfig c;
  try {
    if (j.contains("np")) c.np = j.at("np").get<int>();
    if (j.contains("pipeline")) {
      c.pipeline = pipeline_from_string(j.at("pipeline").get<std::string>());
    }
    if (j.contains("weights")) {
      const json& w = j.at("weights");
      if (w.contains("lambda")) c.weights.lambda_fidelity = w.at("lambda").get<double>();
      if (w.contains("gamma")) c.weights.gamma_error = w.at("gamma").get<double>();
      if (w.contains("delta")) c.weights.delta_banding = w.at("delta").get<double>();
      if (w.contains("theta")) c.weights.theta_perceptual = w.at("theta").get<double>();
      if (w.contains("beta")) c.weights.beta_palette = w.at("beta").get<double>();
    }
    if (j.contains("schedule")) {
      const json& s = j.at("schedule");
      if (s.contains("stage2_steps")) c.schedule.stage2_steps = s.at("stage2_steps").get<int>();
      if (s.contains("stage3_steps")) c.schedule.stage3_steps = s.at("stage3_steps").get<int>();
      if (s.contains("stage2_lr")) c.schedule.stage2_lr = s.at("stage2_lr").get<double>();
      if (s.contains("stage3_lr")) c.schedule.stage3_lr = s.at("stage3_lr").get<double>();
      if (s.contains("t_start")) c.schedule.t_start = s.at("t_start").get<double>();
      if (s.contains("t_end")) c.schedule.t_end = s.at("t_end").get<double>();
    }
    if (j.contains("eta")) c.eta = j.at("eta").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<uint64_t>();
    if (j.contains("fs_serpentine")) c.fs_serpentine = j.at("fs_serpentine").get<bool>();
    if (j.contains("lloyd_iters")) c.lloyd_iters = j.at("lloyd_iters").get<int>();
    if (j.contains("lloyd_tol")) c.lloyd_tol = j.at("lloyd_tol").get<double>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: bad field type: ") + e.what());
  }
  c.validate();
  return c;
}

std::string config_to_json_text(const EncodeConfig& c) {
  json j;
  j["np"] = c.np;
  j["pipeline"] = to_string(c.pipeline);
  j["weights"] = {{"lambda", c.weights.lambda_fidelity},
                  {"gamma", c.weights.gamma_error},
                  {"delta", c.weights.delta_banding},
                  {"theta", c.weights.theta_perceptual},
                  {"beta", c.weights.beta_palette}};
  j["schedule"] = {{"stage2_steps", c.schedule.stage2_steps},
                   {"stage3_steps", c.schedule.stage3_steps},
                   {"stage2_lr", c.schedule.stage2_lr},
                   {"stage3_lr", c.schedule.stage3_lr},
                   {"t_start", c.schedule.t_start},
                   {"t_end", c.schedule.t_end}};
  j["eta"] = c.eta;
  j["seed"] = c.seed;
  j["fs_serpentine"] = c.fs_serpentine;
  j["lloyd_iters"] = c.lloyd_iters;
  j["lloyd_tol"] = c.lloyd_tol;
  return j.dump(2) + "\n";
}

EncodeConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return config_from_json_text(text);
}

}  // namespace giffel
