// Copyright 2026 The pat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pat/noise.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "json.hpp"
#include "pat/error.hpp"

namespace pat {

std::size_t phase_samples(std::size_t delta_len, const SlideSchedule& sched) {
  if (delta_len == 0) {
    throw Error(ErrorCode::kInvalidArgument, "phase_samples: empty clip");
  }
  if (sched.beta <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "phase_samples: beta must be > 0");
  }
  // Integer sample arithmetic: (n * beta) mod l_delta_p computed as
  // (n * beta_samples) mod delta_len, immune to floating-point drift at
  // large n.
  const auto beta_samples =
      static_cast<std::uint64_t>(std::llround(sched.beta * kSampleRate));
  return static_cast<std::size_t>((sched.n * beta_samples) % delta_len);
}

Waveform splice(const NoiseClip& clip, std::size_t n_copies) {
  if (n_copies == 0) {
    throw Error(ErrorCode::kInvalidArgument, "splice: n_copies must be >= 1");
  }
  Waveform out;
  out.sample_rate = clip.delta.sample_rate;
  out.samples.reserve(clip.delta.size() * n_copies);
  for (std::size_t c = 0; c < n_copies; ++c) {
    out.samples.insert(out.samples.end(), clip.delta.samples.begin(),
                       clip.delta.samples.end());
  }
  return out;
}

Waveform inject(const Waveform& x, const NoiseClip& clip,
                const SlideSchedule& sched) {
  const std::size_t len = clip.delta.size();
  if (len > x.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "inject: clip longer than carrier (" + std::to_string(len) +
                    " > " + std::to_string(x.size()) + " samples)");
  }
  const std::size_t phase = phase_samples(len, sched);
  Waveform out;
  out.sample_rate = x.sample_rate;
  out.samples.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out.samples[i] = clip.delta.samples[(i + phase) % len];
  }
  return out;
}

std::vector<double> fold_gradient(const std::vector<double>& grad_x,
                                  std::size_t delta_len,
                                  const SlideSchedule& sched) {
  if (delta_len == 0 || grad_x.size() < delta_len) {
    throw Error(ErrorCode::kShapeMismatch, "fold_gradient: bad lengths");
  }
  const std::size_t phase = phase_samples(delta_len, sched);
  std::vector<double> clip_grad(delta_len, 0.0);
  for (std::size_t i = 0; i < grad_x.size(); ++i) {
    clip_grad[(i + phase) % delta_len] += grad_x[i];
  }
  return clip_grad;
}

void project_linf(NoiseClip* clip) {
  for (double& s : clip->delta.samples) {
    s = std::clamp(s, -clip->epsilon, clip->epsilon);
  }
}

void save_noise(const NoiseClip& clip, const std::string& wav_path) {
  save_wav(clip.delta, wav_path);
  nlohmann::json side = {{"l_delta_p", clip.meta.l_delta_p},
                         {"epsilon", clip.epsilon},
                         {"beta", clip.meta.beta},
                         {"seed", clip.meta.seed},
                         {"model_id", clip.meta.model_id},
                         {"config_hash", clip.meta.config_hash}};
  std::ofstream os(wav_path + ".json");
  if (!os) {
    throw Error(ErrorCode::kUnwritablePath,
                "cannot write noise sidecar: " + wav_path + ".json");
  }
  os << side.dump(2) << "\n";
}

NoiseClip load_noise(const std::string& wav_path) {
  NoiseClip clip;
  clip.delta = load_wav(wav_path);
  std::ifstream is(wav_path + ".json");
  if (!is) {
    throw Error(ErrorCode::kFileNotFound,
                "missing noise sidecar: " + wav_path + ".json");
  }
  nlohmann::json side;
  try {
    is >> side;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                "bad noise sidecar " + wav_path + ".json: " + e.what());
  }
  clip.epsilon = side.at("epsilon").get<double>();
  clip.meta.l_delta_p = side.at("l_delta_p").get<double>();
  clip.meta.beta = side.at("beta").get<double>();
  clip.meta.seed = side.at("seed").get<std::uint64_t>();
  clip.meta.model_id = side.at("model_id").get<std::string>();
  if (side.contains("config_hash")) {
    clip.meta.config_hash = side["config_hash"].get<std::string>();
  }
  project_linf(&clip);
  return clip;
}

}  // namespace pat
