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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pat/audio.hpp"

namespace pat {

struct NoiseMeta {
  std::uint64_t seed = 0;
  double l_delta_p = 0.2;     // clip duration, seconds
  double beta = 0.77;         // sliding step used during optimization, seconds
  std::string model_id;       // hash of the model the clip was optimized on
  std::string config_hash;    // hash of the creating configuration
};

// The short noise clip under optimization, with its amplitude budget.
// Every mutation goes through project_linf, so max |sample| <= epsilon
// holds at all times.
struct NoiseClip {
  Waveform delta;
  double epsilon = 0.0;
  NoiseMeta meta;
};

// The sliding schedule: at iteration n the clip is injected with phase
// (n * beta) mod l_delta_p. beta and the clip length are converted to
// whole samples once so the phase arithmetic is exact at any n.
struct SlideSchedule {
  double beta = 0.77;    // seconds
  std::uint64_t n = 0;   // global iteration index
};

// Phase offset in samples for iteration n of the schedule.
std::size_t phase_samples(std::size_t delta_len, const SlideSchedule& sched);

// Concatenates n_copies of the clip.
Waveform splice(const NoiseClip& clip, std::size_t n_copies);

// The noise track for carrier x at iteration n: sample i of the output is
// delta[(i + phase) mod len(delta)]. The caller mixes it with x.
Waveform inject(const Waveform& x, const NoiseClip& clip,
                const SlideSchedule& sched);

// Exact adjoint of inject's indexing: accumulates an utterance-length
// gradient onto clip positions.
std::vector<double> fold_gradient(const std::vector<double>& grad_x,
                                  std::size_t delta_len,
                                  const SlideSchedule& sched);

// Clamps every sample into [-epsilon, epsilon]. Idempotent.
void project_linf(NoiseClip* clip);

// Persists the clip as WAV plus a `<path>.json` sidecar carrying epsilon,
// geometry, seed, and model id.
void save_noise(const NoiseClip& clip, const std::string& wav_path);

// Loads WAV + sidecar. The samples are re-projected onto the epsilon ball:
// 16-bit quantization can leave a sample one step above the bound.
NoiseClip load_noise(const std::string& wav_path);

}  // namespace pat
