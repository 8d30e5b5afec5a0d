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

#include "pat/attack.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "pat/error.hpp"
#include "pat/hashing.hpp"
#include "pat/rir.hpp"
#include "pat/rng.hpp"
#include "pat/sampling.hpp"

namespace pat {

namespace {

constexpr std::uint64_t kInitStream = 0x696e6974ULL;  // "init"
constexpr std::uint64_t kCropStream = 0x63726f70ULL;  // "crop"
constexpr std::uint64_t kRirStream = 0x726972ULL;     // "rir"

Waveform crop_or_pad(const Waveform& x, std::size_t len, Rng* rng) {
  Waveform out;
  out.sample_rate = x.sample_rate;
  out.samples.resize(len, 0.0);
  if (x.size() <= len) {
    std::copy(x.samples.begin(), x.samples.end(), out.samples.begin());
    return out;
  }
  const std::size_t offset = rng->uniform_int(x.size() - len + 1);
  std::copy(x.samples.begin() + static_cast<std::ptrdiff_t>(offset),
            x.samples.begin() + static_cast<std::ptrdiff_t>(offset + len),
            out.samples.begin());
  return out;
}

}  // namespace

std::string attack_config_hash(const AttackConfig& cfg) {
  const nlohmann::json j = {{"epsilon", cfg.epsilon},
                            {"l_delta_p", cfg.l_delta_p},
                            {"alpha", cfg.alpha},
                            {"beta", cfg.beta},
                            {"k_instances", cfg.k_instances},
                            {"epochs", cfg.epochs},
                            {"iters", cfg.iters},
                            {"step_size", cfg.step_size},
                            {"seed", cfg.seed},
                            {"rir_enabled", cfg.rir_enabled},
                            {"rir_prob", cfg.rir_prob},
                            {"rir_file", cfg.rir_file},
                            {"crop_seconds", cfg.crop_seconds},
                            {"pdbs_enabled", cfg.pdbs_enabled}};
  return hex64(fnv1a64(j.dump()));
}

AttackResult generate(const AcousticModel& model, const Corpus& corpus,
                      const AttackConfig& cfg) {
  if (cfg.epsilon < 0.0 || cfg.l_delta_p <= 0.0 || cfg.epochs < 1 ||
      cfg.iters < 1 || cfg.rir_prob < 0.0 || cfg.rir_prob > 1.0 ||
      cfg.crop_seconds <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "bad attack configuration");
  }
  const auto t0 = std::chrono::steady_clock::now();

  // Instance selection.
  std::vector<CorpusEntry> training;
  if (cfg.pdbs_enabled) {
    const std::vector<CorpusEntry> filtered =
        pdbs_filter(corpus.entries, corpus.stats, cfg.alpha);
    if (filtered.empty()) {
      double min_dev = 1e300;
      for (const CorpusEntry& e : corpus.entries) {
        min_dev = std::min(min_dev, std::abs(corpus.stats.avg_density - e.density));
      }
      throw Error(ErrorCode::kEmptySelection,
                  "no entry within alpha=" + std::to_string(cfg.alpha) +
                      " of the average density; smallest deviation is " +
                      std::to_string(min_dev));
    }
    PickResult picked = top_picker(filtered, cfg.k_instances);
    if (picked.underfull) {
      std::fprintf(stderr,
                   "warning: only %zu of %zu requested instances passed the "
                   "density filter\n",
                   picked.selected.size(), cfg.k_instances);
    }
    training = std::move(picked.selected);
  } else {
    training = corpus.entries;
  }

  // Clip initialization, uniform over the feasible box.
  const auto delta_len =
      static_cast<std::size_t>(std::llround(cfg.l_delta_p * kSampleRate));
  NoiseClip clip;
  clip.delta.sample_rate = kSampleRate;
  clip.delta.samples.resize(delta_len);
  clip.epsilon = cfg.epsilon;
  clip.meta.seed = cfg.seed;
  clip.meta.l_delta_p = cfg.l_delta_p;
  clip.meta.beta = cfg.beta;
  clip.meta.model_id = model.model_id();
  clip.meta.config_hash = attack_config_hash(cfg);
  {
    Rng init_rng(Rng::mix(cfg.seed ^ kInitStream, delta_len));
    for (double& s : clip.delta.samples) {
      s = init_rng.uniform(-cfg.epsilon, cfg.epsilon);
    }
  }

  const double step =
      cfg.step_size > 0.0 ? cfg.step_size : cfg.epsilon / 10.0;
  const auto crop_len =
      static_cast<std::size_t>(std::llround(cfg.crop_seconds * kSampleRate));

  // A user-supplied response replaces the random room draws.
  RoomImpulse fixed_rir;
  if (!cfg.rir_file.empty()) {
    fixed_rir.taps = resample_linear(load_wav(cfg.rir_file), kSampleRate).samples;
    if (fixed_rir.taps.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "empty impulse response: " + cfg.rir_file);
    }
  }

  AttackReport report;
  report.model_id = clip.meta.model_id;
  report.config_hash = clip.meta.config_hash;
  report.loss_history.reserve(static_cast<std::size_t>(cfg.epochs) *
                              training.size() * cfg.iters);

  // The schedule index runs globally across epochs and instances so the
  // injection phase never resets.
  std::uint64_t n = 1;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t inst = 0; inst < training.size(); ++inst) {
      Rng crop_rng(Rng::mix(cfg.seed ^ kCropStream,
                            static_cast<std::uint64_t>(epoch) * training.size() +
                                inst));
      const Waveform x = crop_or_pad(training[inst].audio, crop_len, &crop_rng);

      // The attack target is the model's own transcription of this window,
      // decoded once and reused for every iteration on it.
      const std::vector<int> label =
          text_to_labels(greedy_decode(forward(model, log_mel_forward(x))));

      for (int it = 0; it < cfg.iters; ++it, ++n) {
        const SlideSchedule sched{cfg.beta, n};
        const Waveform mixture = mix(x, inject(x, clip, sched));

        // Half of the iterations hear the mixture through a room.
        bool through_rir = false;
        RoomImpulse rir;
        if (cfg.rir_enabled && cfg.rir_prob > 0.0) {
          Rng rir_rng(Rng::mix(cfg.seed ^ kRirStream, n));
          if (rir_rng.uniform() < cfg.rir_prob) {
            if (cfg.rir_file.empty()) {
              const double rt60 = rir_rng.uniform(0.1, 0.5);
              rir = make_rir(rt60, rir_rng.next_u64());
            } else {
              rir = fixed_rir;
            }
            through_rir = true;
          }
        }
        const Waveform heard = through_rir ? apply_rir(mixture, rir) : mixture;

        WaveGrad wg = backward_to_waveform(model, heard, label);
        if (!std::isfinite(wg.loss)) {
          throw Error(ErrorCode::kDivergence,
                      "non-finite attack loss at iteration " + std::to_string(n));
        }
        report.loss_history.push_back(wg.loss);

        const std::vector<double> grad_mix =
            through_rir ? rir_backward(wg.grad, rir) : std::move(wg.grad);
        const std::vector<double> clip_grad =
            fold_gradient(grad_mix, delta_len, sched);

        // Ascent on the loss (the objective minimizes its negation), then
        // projection back onto the epsilon ball.
        for (std::size_t i = 0; i < delta_len; ++i) {
          if (clip_grad[i] > 0.0) {
            clip.delta.samples[i] += step;
          } else if (clip_grad[i] < 0.0) {
            clip.delta.samples[i] -= step;
          }
        }
        project_linf(&clip);

        if (cfg.check_constraint) {
          ++report.constraint_checks;
          for (double s : clip.delta.samples) {
            if (std::abs(s) > cfg.epsilon) {
              ++report.constraint_violations;
              break;
            }
          }
        }
      }
    }
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return AttackResult{std::move(clip), std::move(report)};
}

NoiseClip baseline_gaussian(double epsilon, double l_delta_p,
                            std::uint64_t seed) {
  if (epsilon < 0.0 || l_delta_p <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "bad baseline configuration");
  }
  const auto len =
      static_cast<std::size_t>(std::llround(l_delta_p * kSampleRate));
  NoiseClip clip;
  clip.delta.sample_rate = kSampleRate;
  clip.delta.samples.resize(len);
  clip.epsilon = epsilon;
  clip.meta.seed = seed;
  clip.meta.l_delta_p = l_delta_p;

  Rng rng(seed);
  double peak = 0.0;
  for (double& s : clip.delta.samples) {
    s = rng.normal();
    peak = std::max(peak, std::abs(s));
  }
  if (peak > 0.0 && epsilon > 0.0) {
    const double scale = epsilon / peak;
    for (double& s : clip.delta.samples) s *= scale;
  } else {
    std::fill(clip.delta.samples.begin(), clip.delta.samples.end(), 0.0);
  }
  return clip;
}

AttackConfig ablation_arm(const AttackConfig& cfg, bool pdbs_on, bool spni_on) {
  AttackConfig arm = cfg;
  arm.pdbs_enabled = pdbs_on;
  if (!spni_on) {
    // An exact multiple of the clip length degenerates every phase to zero.
    arm.beta = cfg.l_delta_p;
  }
  return arm;
}

}  // namespace pat
