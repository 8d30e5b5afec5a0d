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

#include "pat/corpus.hpp"
#include "pat/features.hpp"

namespace pat {

// Output alphabet: CTC blank at index 0, then 'a'..'z', then space.
inline constexpr int kNumClasses = 28;
inline constexpr int kBlank = 0;

int char_to_class(char c);
char class_to_char(int k);

// Validates that the text uses only 'a'..'z' and space.
std::vector<int> text_to_labels(const std::string& text);
std::string labels_to_text(const std::vector<int>& labels);

// frames x kNumClasses grid, row-major.
struct Logits {
  std::vector<double> values;
  std::size_t frames = 0;

  double& at(std::size_t t, int k) { return values[t * kNumClasses + k]; }
  double at(std::size_t t, int k) const { return values[t * kNumClasses + k]; }
};

// Temporal convolution with same-padding, weights [out][in][kernel].
struct ConvLayer {
  int in_ch = 0;
  int out_ch = 0;
  int kernel = 0;
  std::vector<double> w;
  std::vector<double> b;
};

// Compact recognizer: input scaling -> conv -> tanh -> conv -> tanh ->
// per-frame affine to class logits. The "base" architecture is 64 channels
// with kernel 5; "variant" (48 channels, kernel 7) exists for transfer
// experiments. All gradients are hand-written.
struct AcousticModel {
  std::string arch = "base";
  ConvLayer conv1;           // n_bands -> channels
  ConvLayer conv2;           // channels -> channels
  std::vector<double> out_w;  // [kNumClasses][channels]
  std::vector<double> out_b;  // [kNumClasses]

  int channels() const { return conv1.out_ch; }
  // Hash of the architecture string and all weight bytes.
  std::string model_id() const;
};

// Randomly initialized model; arch is "base" or "variant".
AcousticModel make_model(const std::string& arch, std::uint64_t seed);

// Intermediate activations kept for the backward pass.
struct ForwardCache {
  std::vector<double> scaled;  // (feature + 10) * 0.1, frames x bands
  std::vector<double> pre1, act1;  // frames x channels
  std::vector<double> pre2, act2;
  std::size_t frames = 0;
  Logits logits;
};

Logits forward(const AcousticModel& m, const FeatureMatrix& f);
void forward_cached(const AcousticModel& m, const FeatureMatrix& f,
                    ForwardCache* cache);

// Per-parameter gradient accumulator, same shapes as the model.
struct ModelGrad {
  std::vector<double> conv1_w, conv1_b;
  std::vector<double> conv2_w, conv2_b;
  std::vector<double> out_w, out_b;
};

ModelGrad zero_grad(const AcousticModel& m);

// Backward through affine/conv/tanh/scaling. Returns d(loss)/d(features);
// accumulates parameter gradients into *wg when non-null.
FeatureGradient model_backward(const AcousticModel& m, const ForwardCache& cache,
                               const Logits& dlogits, ModelGrad* wg);

struct CtcResult {
  double loss = 0.0;   // -log p(label)
  Logits dlogits;      // softmax minus per-frame symbol posterior
};

// Log-space forward-backward over the blank-extended label. Labels that
// cannot fit in the frame count raise an infeasible-label error.
CtcResult ctc_loss(const Logits& logits, const std::vector<int>& label);

// Per-frame argmax -> collapse repeats -> drop blanks.
std::string greedy_decode(const Logits& logits);

struct WaveGrad {
  double loss = 0.0;
  std::vector<double> grad;  // d(loss)/d(sample), len(w)
};

// Full chain: waveform -> features -> model -> CTC, then adjoints all the
// way back to the samples.
WaveGrad backward_to_waveform(const AcousticModel& m, const Waveform& w,
                              const std::vector<int>& label);

struct TrainConfig {
  int epochs = 30;
  double lr = 3e-3;
  double momentum = 0.9;
  int batch = 8;
  std::uint64_t seed = 17;
  // Additive Gaussian augmentation amplitude. Training on bit-clean
  // synthetic audio leaves the recognizer brittle to *any* perturbation,
  // which would let a random-noise baseline match the optimized attack;
  // a little input noise restores the intended contrast.
  double noise_aug = 0.01;
  // CTC gradients grow with utterance length, and momentum amplifies them
  // another 1/(1-momentum)x; without a ceiling the default step size
  // diverges within an epoch. Joint l2 clip over all parameter tensors.
  double clip_norm = 35.0;
  // When positive, the ceiling decays linearly from clip_norm in the first
  // epoch to this value in the last: large early steps cross the CTC
  // warm-up plateau, small late steps let momentum settle instead of
  // orbiting the minimum.
  double clip_norm_end = 3.0;
  // Leading epochs presented in shortest-first order; CTC alignments lock
  // in on short label sequences first and carry over to long ones.
  int curriculum_epochs = 2;
};

// SGD with momentum on the mean per-utterance CTC loss, deterministic in
// the seed. Returns the per-epoch mean training loss. Aborts with a
// divergence error if the loss goes non-finite.
std::vector<double> train(AcousticModel* m, const std::vector<CorpusEntry>& data,
                          const TrainConfig& cfg);

// JSON checkpoint with shape header and model_id; the loader rejects shape
// or hash mismatches.
void save_model(const AcousticModel& m, const std::string& path);
AcousticModel load_model(const std::string& path);

}  // namespace pat
