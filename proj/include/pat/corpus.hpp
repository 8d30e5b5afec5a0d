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
#include "pat/g2p.hpp"
#include "pat/rng.hpp"

namespace pat {

// One manifest row with its derived statistics. The decoded audio is kept
// in memory: the corpora this toolkit targets are small and the training
// and attack loops revisit every entry many times.
struct CorpusEntry {
  std::string audio_path;
  std::string transcript;
  Waveform audio;
  double duration = 0.0;  // seconds
  double density = 0.0;   // phonemes per second
  double peak = 0.0;      // linear peak amplitude
};

// Pooled over the whole corpus: avg_density is the ratio of sums, not the
// mean of per-entry ratios.
struct DatasetStats {
  double avg_density = 0.0;
  std::size_t total_phonemes = 0;
  double total_duration = 0.0;
};

struct Corpus {
  std::vector<CorpusEntry> entries;
  DatasetStats stats;
};

// Reads a JSON-lines manifest ({"audio": ..., "text": ...} per line; audio
// paths relative to the manifest), loads and resamples every file to the
// canonical rate, and derives per-entry and pooled statistics.
Corpus ingest(const std::string& manifest_path, const G2pDictionary& dict);

struct SynthConfig {
  std::vector<std::string> vocab;  // empty -> default_vocab()
  int n_utterances = 120;
  int min_words = 3;
  int max_words = 8;
  std::uint64_t seed = 17;
};

// Renders one utterance from its word sequence: per-phoneme formant/noise
// templates, 5 ms crossfades, 60 ms inter-word gaps, one speaking-rate
// jitter and one peak target drawn from `rng`.
Waveform synth_utterance(const std::vector<std::string>& words,
                         const G2pDictionary& dict, Rng* rng);

// Writes WAVs plus a manifest under out_dir and returns the manifest path.
// Bitwise-deterministic in (config, seed).
std::string synth_corpus(const SynthConfig& cfg, const G2pDictionary& dict,
                         const std::string& out_dir);

}  // namespace pat
