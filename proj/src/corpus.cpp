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

#include "pat/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "json.hpp"
#include "pat/error.hpp"

namespace pat {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kCrossfadeSamples = 80;   // 5 ms
constexpr int kWordGapSamples = 960;    // 60 ms

// Acoustic recipe for one phoneme. Tones are two-sinusoid formant pairs
// (diphthongs glide between two targets); the rest are white noise shaped
// by a two-pole resonator, optionally over a low voicing tone; stops spend
// the first part of their duration as closure silence.
struct PhonemeTemplate {
  enum Kind { kTone, kGlide, kNoise, kStop };
  Kind kind;
  double f1, f2;      // tone formants, or resonator center (f1) and bandwidth (f2)
  double g1, g2;      // glide end formants (kGlide only)
  double base_ms;     // duration before rate jitter
  bool voiced;        // noise kinds: add a low voicing tone
};

const std::map<std::string, PhonemeTemplate>& phoneme_table() {
  using P = PhonemeTemplate;
  // Formants start from the classic American English F1/F2 chart but are
  // nudged so every pair of templates sits at least a few mel bands apart
  // on one axis; the chart's true values put AA/AH and UW/M/R inside a
  // single filterbank band of each other, which no frame classifier can
  // undo. Voiced/voiceless burst pairs get separated centers on top of the
  // voicing tone for the same reason.
  static const std::map<std::string, PhonemeTemplate> table = {
      {"AA", {P::kTone, 850, 700, 0, 0, 160, true}},
      {"AE", {P::kTone, 780, 1450, 0, 0, 160, true}},
      {"AH", {P::kTone, 550, 1050, 0, 0, 160, true}},
      {"AO", {P::kTone, 570, 840, 0, 0, 140, true}},
      {"EH", {P::kTone, 550, 1900, 0, 0, 160, true}},
      {"ER", {P::kTone, 490, 1350, 0, 0, 130, true}},
      {"IH", {P::kTone, 350, 2350, 0, 0, 160, true}},
      {"IY", {P::kTone, 270, 2350, 0, 0, 140, true}},
      {"UH", {P::kTone, 470, 1020, 0, 0, 140, true}},
      {"UW", {P::kTone, 330, 870, 0, 0, 140, true}},
      {"AW", {P::kGlide, 850, 980, 470, 1020, 145, true}},
      {"AY", {P::kGlide, 850, 980, 430, 2050, 145, true}},
      {"EY", {P::kGlide, 620, 1800, 430, 2050, 145, true}},
      {"OW", {P::kGlide, 570, 840, 470, 1020, 145, true}},
      {"OY", {P::kGlide, 570, 840, 430, 2050, 145, true}},
      // Liquids, glides, nasals: darker tone pairs. R is rendered as a
      // falling-F2 sweep so it cannot be mistaken for any static vowel.
      {"L", {P::kTone, 430, 3000, 0, 0, 110, true}},
      {"R", {P::kGlide, 430, 1900, 430, 950, 110, true}},
      {"W", {P::kTone, 240, 600, 0, 0, 110, true}},
      {"Y", {P::kTone, 270, 2100, 0, 0, 100, true}},
      {"M", {P::kTone, 200, 1150, 0, 0, 110, true}},
      {"N", {P::kTone, 220, 1700, 0, 0, 110, true}},
      {"NG", {P::kTone, 250, 1600, 0, 0, 100, true}},
      // Fricatives: resonator center / bandwidth in the f1/f2 slots.
      {"S", {P::kNoise, 6000, 900, 0, 0, 110, false}},
      {"Z", {P::kNoise, 6000, 900, 0, 0, 110, true}},
      {"SH", {P::kNoise, 2700, 700, 0, 0, 110, false}},
      {"ZH", {P::kNoise, 2700, 700, 0, 0, 110, true}},
      {"F", {P::kNoise, 7400, 700, 0, 0, 110, false}},
      {"V", {P::kNoise, 5000, 600, 0, 0, 110, true}},
      {"TH", {P::kNoise, 4800, 2500, 0, 0, 110, false}},
      {"DH", {P::kNoise, 4800, 2500, 0, 0, 110, true}},
      {"HH", {P::kNoise, 1300, 1000, 0, 0, 110, false}},
      // Affricates: long bursts at the postalveolar center.
      {"CH", {P::kStop, 2500, 700, 0, 0, 120, false}},
      {"JH", {P::kStop, 2500, 700, 0, 0, 120, true}},
      // Stops: a burst at a place-of-articulation center.
      {"P", {P::kStop, 1000, 800, 0, 0, 100, false}},
      {"B", {P::kStop, 500, 600, 0, 0, 100, true}},
      {"T", {P::kStop, 4200, 900, 0, 0, 100, false}},
      {"D", {P::kStop, 3400, 800, 0, 0, 100, true}},
      {"K", {P::kStop, 1700, 700, 0, 0, 100, false}},
      {"G", {P::kStop, 1700, 700, 0, 0, 100, true}},
  };
  return table;
}

// Two-pole resonator applied in place; gain is rough, segments are peak
// normalized afterwards.
void resonate(std::vector<double>* x, double center_hz, double bandwidth_hz) {
  const double r = std::exp(-kPi * bandwidth_hz / kSampleRate);
  const double c = 2.0 * r * std::cos(2.0 * kPi * center_hz / kSampleRate);
  const double g = 1.0 - r * r;
  double y1 = 0.0, y2 = 0.0;
  for (double& v : *x) {
    const double y = g * v + c * y1 - r * r * y2;
    y2 = y1;
    y1 = y;
    v = y;
  }
}

void normalize_peak(std::vector<double>* x, double target) {
  double peak = 0.0;
  for (double v : *x) peak = std::max(peak, std::abs(v));
  if (peak <= 0.0) return;
  const double s = target / peak;
  for (double& v : *x) v *= s;
}

std::vector<double> render_phoneme(const PhonemeTemplate& t, double rate,
                                   Rng* rng) {
  const int n = std::max(1, static_cast<int>(std::lround(
                                t.base_ms * rate * kSampleRate / 1000.0)));
  std::vector<double> seg(n, 0.0);
  switch (t.kind) {
    case PhonemeTemplate::kTone:
      for (int i = 0; i < n; ++i) {
        const double ts = static_cast<double>(i) / kSampleRate;
        seg[i] = 0.6 * std::sin(2.0 * kPi * t.f1 * ts) +
                 0.4 * std::sin(2.0 * kPi * t.f2 * ts);
      }
      break;
    case PhonemeTemplate::kGlide: {
      // Phase-continuous sweep between the two formant targets.
      double p1 = 0.0, p2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const double u = static_cast<double>(i) / n;
        const double f1 = t.f1 + (t.g1 - t.f1) * u;
        const double f2 = t.f2 + (t.g2 - t.f2) * u;
        seg[i] = 0.6 * std::sin(p1) + 0.4 * std::sin(p2);
        p1 += 2.0 * kPi * f1 / kSampleRate;
        p2 += 2.0 * kPi * f2 / kSampleRate;
      }
      break;
    }
    case PhonemeTemplate::kNoise:
    case PhonemeTemplate::kStop: {
      // Stops decay sharply after the attack; sustained fricatives do not.
      // Closure silence would alias against word gaps and against every
      // other stop, so place identity lives entirely in the shaped burst.
      for (double& v : seg) v = rng->normal();
      resonate(&seg, t.f1, t.f2);
      normalize_peak(&seg, 1.0);
      if (t.kind == PhonemeTemplate::kStop) {
        for (int i = 0; i < n; ++i) {
          seg[i] *= std::exp(-4.0 * static_cast<double>(i) / n);
        }
      }
      if (t.voiced) {
        for (int i = 0; i < n; ++i) {
          const double ts = static_cast<double>(i) / kSampleRate;
          seg[i] = 0.7 * seg[i] + 0.3 * std::sin(2.0 * kPi * 120.0 * ts);
        }
      }
      break;
    }
  }
  normalize_peak(&seg, 1.0);
  return seg;
}

// Appends `seg` to `out` with a short linear crossfade over the overlap.
void crossfade_append(std::vector<double>* out, const std::vector<double>& seg) {
  const std::size_t fade = std::min(
      {static_cast<std::size_t>(kCrossfadeSamples), out->size(), seg.size()});
  const std::size_t base = out->size() - fade;
  for (std::size_t i = 0; i < fade; ++i) {
    const double u = static_cast<double>(i + 1) / static_cast<double>(fade + 1);
    (*out)[base + i] = (*out)[base + i] * (1.0 - u) + seg[i] * u;
  }
  out->insert(out->end(), seg.begin() + static_cast<std::ptrdiff_t>(fade),
              seg.end());
}

}  // namespace

Waveform synth_utterance(const std::vector<std::string>& words,
                         const G2pDictionary& dict, Rng* rng) {
  const double rate = rng->uniform(0.9, 1.1);
  const double target_peak = rng->uniform(0.82, 0.88);
  std::vector<double> out;
  for (std::size_t w = 0; w < words.size(); ++w) {
    const PhonemeSequence* seq = dict.find(words[w]);
    if (seq == nullptr) {
      throw Error(ErrorCode::kOutOfVocab,
                  "synth vocabulary word not in lexicon: " + words[w]);
    }
    if (w > 0) out.insert(out.end(), kWordGapSamples, 0.0);
    bool word_start = true;
    for (const std::string& ph : *seq) {
      const std::vector<double> seg =
          render_phoneme(phoneme_table().at(ph), rate, rng);
      if (word_start) {
        out.insert(out.end(), seg.begin(), seg.end());
        word_start = false;
      } else {
        crossfade_append(&out, seg);
      }
    }
  }
  normalize_peak(&out, target_peak);
  Waveform w;
  w.sample_rate = kSampleRate;
  w.samples = std::move(out);
  return w;
}

std::string synth_corpus(const SynthConfig& cfg, const G2pDictionary& dict,
                         const std::string& out_dir) {
  const std::vector<std::string>& vocab =
      cfg.vocab.empty() ? default_vocab() : cfg.vocab;
  for (const std::string& word : vocab) {
    if (dict.find(word) == nullptr) {
      throw Error(ErrorCode::kOutOfVocab,
                  "vocabulary word not in lexicon: " + word);
    }
  }
  if (cfg.min_words < 1 || cfg.max_words < cfg.min_words) {
    throw Error(ErrorCode::kInvalidArgument, "bad words-per-utterance range");
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  const std::string manifest_path =
      (std::filesystem::path(out_dir) / "manifest.jsonl").string();
  std::ofstream manifest(manifest_path);
  if (!manifest) {
    throw Error(ErrorCode::kUnwritablePath,
                "cannot write manifest: " + manifest_path);
  }

  for (int i = 0; i < cfg.n_utterances; ++i) {
    Rng rng(Rng::mix(cfg.seed, static_cast<std::uint64_t>(i)));
    const int n_words = cfg.min_words + static_cast<int>(rng.uniform_int(
                            cfg.max_words - cfg.min_words + 1));
    std::vector<std::string> words(n_words);
    std::string transcript;
    for (int k = 0; k < n_words; ++k) {
      words[k] = vocab[rng.uniform_int(vocab.size())];
      if (k > 0) transcript += ' ';
      transcript += words[k];
    }
    const Waveform audio = synth_utterance(words, dict, &rng);

    char name[32];
    std::snprintf(name, sizeof(name), "utt_%05d.wav", i);
    save_wav(audio, (std::filesystem::path(out_dir) / name).string());
    nlohmann::json row = {{"audio", name}, {"text", transcript}};
    manifest << row.dump() << "\n";
  }
  return manifest_path;
}

Corpus ingest(const std::string& manifest_path, const G2pDictionary& dict) {
  std::ifstream is(manifest_path);
  if (!is) {
    throw Error(ErrorCode::kFileNotFound,
                "cannot open manifest: " + manifest_path);
  }
  const std::filesystem::path base =
      std::filesystem::path(manifest_path).parent_path();

  Corpus corpus;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInvalidArgument,
                  manifest_path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (!row.contains("audio") || !row.contains("text")) {
      throw Error(ErrorCode::kInvalidArgument,
                  manifest_path + ":" + std::to_string(lineno) +
                      ": manifest row needs \"audio\" and \"text\"");
    }
    CorpusEntry entry;
    entry.audio_path = (base / row["audio"].get<std::string>()).string();
    entry.transcript = row["text"].get<std::string>();
    if (!std::filesystem::exists(entry.audio_path)) {
      throw Error(ErrorCode::kMissingAudio,
                  manifest_path + ":" + std::to_string(lineno) +
                      ": missing audio file " + entry.audio_path);
    }
    entry.audio = resample_linear(load_wav(entry.audio_path), kSampleRate);
    entry.duration = entry.audio.duration_seconds();
    entry.density = phoneme_density(dict, entry.transcript, entry.duration);
    entry.peak = peak_amplitude(entry.audio);
    corpus.entries.push_back(std::move(entry));
  }
  if (corpus.entries.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "empty manifest: " + manifest_path);
  }

  for (const CorpusEntry& e : corpus.entries) {
    corpus.stats.total_phonemes += to_phonemes(dict, e.transcript).size();
    corpus.stats.total_duration += e.duration;
  }
  corpus.stats.avg_density =
      static_cast<double>(corpus.stats.total_phonemes) /
      corpus.stats.total_duration;
  return corpus;
}

}  // namespace pat
