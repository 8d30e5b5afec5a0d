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
#include <vector>

#include "pat/audio.hpp"

namespace pat {

// Synthetic room response: a unit direct path followed by an exponentially
// decaying white-noise tail whose energy is normalized to the direct path's.
struct RoomImpulse {
  std::vector<double> taps;
  double rt60 = 0.0;      // 60 dB decay time, seconds
  std::uint64_t seed = 0;
};

// taps = {1}: the whole RIR stage becomes a no-op ("RIR off" switch).
RoomImpulse identity_rir();

// 0.25 s of taps: taps[0] = 1; taps[t>0] = normal draw * the RT60 envelope
// exp(-3 ln10 t / rt60), tail energy normalized to 1. rt60 in [0.05, 1.0].
RoomImpulse make_rir(double rt60, std::uint64_t seed);

// Linear convolution truncated to len(w), clamped to [-1, 1].
Waveform apply_rir(const Waveform& w, const RoomImpulse& h);

// Correlation of g with the taps — the exact adjoint of the truncated
// convolution (the clamp is treated as identity; attack mixtures stay well
// inside full scale).
std::vector<double> rir_backward(const std::vector<double>& g,
                                 const RoomImpulse& h);

}  // namespace pat
