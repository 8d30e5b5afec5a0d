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

#include <cmath>
#include <cstdint>
#include <string>

#include "pat/corpus.hpp"
#include "pat/evaluation.hpp"
#include "pat/model.hpp"
#include "pat/noise.hpp"

namespace pat {

// The -33 dB budget against corpus peaks normalized near 0.9.
inline const double kDefaultEpsilon = 0.9 * std::pow(10.0, -33.0 / 20.0);

struct AttackConfig {
  double epsilon = kDefaultEpsilon;  // l-infinity bound
  double l_delta_p = 0.2;            // clip duration, seconds
  double alpha = 0.2;                // density threshold, phonemes/second
  double beta = 0.77;                // sliding step, seconds
  std::size_t k_instances = 10;
  int epochs = 20;                   // passes over the selected instances
  int iters = 50;                    // optimizer steps per instance per epoch
  double step_size = 0.0;            // 0 -> epsilon / 10
  std::uint64_t seed = 17;
  bool rir_enabled = true;
  double rir_prob = 0.5;
  std::string rir_file;              // fixed response WAV instead of random rooms
  double crop_seconds = 2.0;         // per-iteration training window
  bool pdbs_enabled = true;          // off -> optimize over the full corpus
  bool check_constraint = true;      // count per-iteration bound violations
};

// Canonical hash of every config field; recorded with each artifact.
std::string attack_config_hash(const AttackConfig& cfg);

struct AttackResult {
  NoiseClip noise;
  AttackReport report;  // optimization-side fields; run evaluate() for metrics
};

// The full optimization loop: density-balanced instance selection, sliding
// injection with a globally incrementing phase index, stochastic room
// augmentation, sign-gradient ascent on the CTC loss against the model's
// own clean transcriptions, and an l-infinity projection after every step.
AttackResult generate(const AcousticModel& model, const Corpus& corpus,
                      const AttackConfig& cfg);

// White Gaussian noise rescaled so its peak is exactly epsilon.
NoiseClip baseline_gaussian(double epsilon, double l_delta_p,
                            std::uint64_t seed);

// Two-factor switch: pdbs_on=false widens the training set to the whole
// corpus; spni_on=false pins beta to the clip length so every injection
// lands at phase zero.
AttackConfig ablation_arm(const AttackConfig& cfg, bool pdbs_on, bool spni_on);

}  // namespace pat
