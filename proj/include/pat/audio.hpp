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

#include <string>
#include <vector>

namespace pat {

// Canonical pipeline rate. All corpus audio is resampled to this on ingest.
inline constexpr int kSampleRate = 16000;

// Mono PCM audio. Samples live in [-1, 1]; load and mix clamp on write.
struct Waveform {
  std::vector<double> samples;
  int sample_rate = kSampleRate;

  double duration_seconds() const {
    return static_cast<double>(samples.size()) / sample_rate;
  }
  bool empty() const { return samples.empty(); }
  std::size_t size() const { return samples.size(); }
};

// Peak level in decibels. A peak of 1.0 maps to exactly 0 dB.
struct DbReading {
  double value = 0.0;
};

double peak_amplitude(const Waveform& w);

// Reads a 16-bit PCM mono RIFF/WAVE file. Samples are scaled to [-1, 1].
Waveform load_wav(const std::string& path);

// Writes a canonical 44-byte-header 16-bit PCM mono WAV. Samples are
// clamped to [-1, 1] before quantization.
void save_wav(const Waveform& w, const std::string& path);

// 20*log10(peak(noise)) - 20*log10(peak(reference)).
DbReading db_relative(const Waveform& noise, const Waveform& reference);

// Elementwise sum, clamped to [-1, 1]. Rates and lengths must match.
Waveform mix(const Waveform& a, const Waveform& b);

// Linear-interpolation resample. Identity when rates already match.
Waveform resample_linear(const Waveform& w, int target_rate);

}  // namespace pat
