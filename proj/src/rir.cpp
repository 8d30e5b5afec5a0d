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

#include "pat/rir.hpp"

#include <algorithm>
#include <cmath>

#include "pat/error.hpp"
#include "pat/fft.hpp"
#include "pat/rng.hpp"

namespace pat {

namespace {

constexpr double kRirSeconds = 0.25;

}  // namespace

RoomImpulse identity_rir() {
  RoomImpulse h;
  h.taps = {1.0};
  return h;
}

RoomImpulse make_rir(double rt60, std::uint64_t seed) {
  if (rt60 < 0.05 || rt60 > 1.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "rt60 out of [0.05, 1.0]: " + std::to_string(rt60));
  }
  const auto n = static_cast<std::size_t>(kRirSeconds * kSampleRate);
  RoomImpulse h;
  h.rt60 = rt60;
  h.seed = seed;
  h.taps.resize(n);
  h.taps[0] = 1.0;

  Rng rng(seed);
  const double decay = 3.0 * std::log(10.0) / rt60;  // 60 dB over rt60
  double tail_energy = 0.0;
  for (std::size_t t = 1; t < n; ++t) {
    const double sec = static_cast<double>(t) / kSampleRate;
    h.taps[t] = rng.normal() * std::exp(-decay * sec);
    tail_energy += h.taps[t] * h.taps[t];
  }
  if (tail_energy > 0.0) {
    const double s = 1.0 / std::sqrt(tail_energy);
    for (std::size_t t = 1; t < n; ++t) h.taps[t] *= s;
  }
  return h;
}

Waveform apply_rir(const Waveform& w, const RoomImpulse& h) {
  if (w.empty() || h.taps.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "apply_rir on empty input");
  }
  const std::vector<double> full = fft_convolve(w.samples, h.taps);
  Waveform out;
  out.sample_rate = w.sample_rate;
  out.samples.resize(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    out.samples[i] = std::clamp(full[i], -1.0, 1.0);
  }
  return out;
}

std::vector<double> rir_backward(const std::vector<double>& g,
                                 const RoomImpulse& h) {
  if (g.empty() || h.taps.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "rir_backward on empty input");
  }
  return fft_correlate(g, h.taps);
}

}  // namespace pat
