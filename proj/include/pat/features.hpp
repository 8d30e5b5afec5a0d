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

#include <cstddef>
#include <string>
#include <vector>

#include "pat/audio.hpp"

namespace pat {

// Front-end geometry: 25 ms frames, 10 ms hop, zero-padded 512-point DFT,
// 40 triangular mel bands, log floor to keep every output finite.
inline constexpr int kFrameLen = 400;
inline constexpr int kFrameHop = 160;
inline constexpr int kFftSize = 512;
inline constexpr int kNumBands = 40;
inline constexpr double kLogFloor = 1e-10;

// frames x bands grid, row-major.
struct FeatureMatrix {
  std::vector<double> values;
  std::size_t frames = 0;
  std::size_t bands = 0;
  int frame_hop = kFrameHop;
  int frame_len = kFrameLen;

  double& at(std::size_t f, std::size_t b) { return values[f * bands + b]; }
  double at(std::size_t f, std::size_t b) const { return values[f * bands + b]; }
};

// Gradient of a scalar loss with respect to a FeatureMatrix; same layout.
using FeatureGradient = FeatureMatrix;

// Triangular mel filters stored sparsely: each band covers a contiguous run
// of DFT bins starting at first_bin[b].
struct MelFilterbank {
  std::vector<std::size_t> first_bin;
  std::vector<std::vector<double>> weights;
  std::vector<double> center_hz;  // triangle apex frequency per band
};

// The process-wide filterbank for the fixed front-end geometry above.
const MelFilterbank& mel_filterbank();

std::size_t num_frames(std::size_t n_samples);

// Per frame: Hann window -> magnitude spectrum (512-point DFT, bins
// 0..256) -> mel filterbank -> log(x + floor).
FeatureMatrix log_mel_forward(const Waveform& w);

// Exact adjoint of log_mel_forward: propagates d(loss)/d(features) back to
// d(loss)/d(sample) via log -> filterbank transpose -> magnitude derivative
// (zero-guarded at |z| < 1e-12) -> DFT adjoint -> window -> overlap-add.
std::vector<double> log_mel_backward(const Waveform& w,
                                     const FeatureGradient& g);

// Writes a P5 (binary) PGM of the log-magnitude STFT, time on the
// horizontal axis, bin 0 on the bottom row, values linearly mapped to
// [0, 255] over the image's own range.
void export_spectrogram(const Waveform& w, const std::string& path);

}  // namespace pat
