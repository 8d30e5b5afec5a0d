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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pat/error.hpp"
#include "pat/model.hpp"
#include "pat/rng.hpp"

namespace pat {

namespace {

constexpr std::uint64_t kShuffleStream = 0x73687566666c65ULL;  // "shuffle"
constexpr std::uint64_t kAugmentStream = 0x6175676d656e74ULL;  // "augment"

void momentum_step(std::vector<double>* w, std::vector<double>* vel,
                   const std::vector<double>& grad, double momentum, double lr,
                   double scale) {
  for (std::size_t i = 0; i < w->size(); ++i) {
    (*vel)[i] = momentum * (*vel)[i] - lr * scale * grad[i];
    (*w)[i] += (*vel)[i];
  }
}

double squared_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

}  // namespace

std::vector<double> train(AcousticModel* m, const std::vector<CorpusEntry>& data,
                          const TrainConfig& cfg) {
  if (data.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "train on empty corpus");
  }
  if (cfg.epochs < 1 || cfg.batch < 1 || cfg.lr <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "bad training configuration");
  }

  ModelGrad vel = zero_grad(*m);
  std::vector<double> epoch_losses;
  epoch_losses.reserve(cfg.epochs);

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    double ceiling = cfg.clip_norm;
    if (ceiling > 0.0 && cfg.clip_norm_end > 0.0 && cfg.epochs > 1) {
      const double u = static_cast<double>(epoch) / (cfg.epochs - 1);
      ceiling = cfg.clip_norm + (cfg.clip_norm_end - cfg.clip_norm) * u;
    }
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    if (epoch < cfg.curriculum_epochs) {
      // Short utterances first: CTC alignment locks in far faster on short
      // label sequences, and the warmed-up alignments carry over.
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return data[a].audio.samples.size() <
                                data[b].audio.samples.size();
                       });
    } else {
      Rng shuffle_rng(Rng::mix(cfg.seed ^ kShuffleStream, epoch));
      for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[shuffle_rng.uniform_int(i)]);
      }
    }

    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(cfg.batch)) {
      const std::size_t bsz =
          std::min(static_cast<std::size_t>(cfg.batch), order.size() - start);
      ModelGrad grad = zero_grad(*m);
      for (std::size_t b = 0; b < bsz; ++b) {
        const CorpusEntry& e = data[order[start + b]];
        Waveform w = e.audio;
        if (cfg.noise_aug > 0.0) {
          Rng aug(Rng::mix(cfg.seed ^ kAugmentStream,
                           static_cast<std::uint64_t>(epoch) * data.size() +
                               order[start + b]));
          for (double& s : w.samples) {
            s = std::clamp(s + cfg.noise_aug * aug.normal(), -1.0, 1.0);
          }
        }

        const FeatureMatrix feat = log_mel_forward(w);
        ForwardCache cache;
        forward_cached(*m, feat, &cache);
        CtcResult ctc = ctc_loss(cache.logits, text_to_labels(e.transcript));
        if (!std::isfinite(ctc.loss)) {
          throw Error(ErrorCode::kDivergence,
                      "non-finite loss on '" + e.transcript + "', epoch " +
                          std::to_string(epoch));
        }
        loss_sum += ctc.loss;
        // Mean over the batch: fold the 1/bsz into the logit gradient so the
        // accumulated parameter gradients need no rescale.
        for (double& v : ctc.dlogits.values) v /= static_cast<double>(bsz);
        model_backward(*m, cache, ctc.dlogits, &grad);
      }
      double scale = 1.0;
      if (ceiling > 0.0) {
        const double norm = std::sqrt(
            squared_norm(grad.conv1_w) + squared_norm(grad.conv1_b) +
            squared_norm(grad.conv2_w) + squared_norm(grad.conv2_b) +
            squared_norm(grad.out_w) + squared_norm(grad.out_b));
        if (norm > ceiling) scale = ceiling / norm;
      }
      momentum_step(&m->conv1.w, &vel.conv1_w, grad.conv1_w, cfg.momentum,
                    cfg.lr, scale);
      momentum_step(&m->conv1.b, &vel.conv1_b, grad.conv1_b, cfg.momentum,
                    cfg.lr, scale);
      momentum_step(&m->conv2.w, &vel.conv2_w, grad.conv2_w, cfg.momentum,
                    cfg.lr, scale);
      momentum_step(&m->conv2.b, &vel.conv2_b, grad.conv2_b, cfg.momentum,
                    cfg.lr, scale);
      momentum_step(&m->out_w, &vel.out_w, grad.out_w, cfg.momentum, cfg.lr,
                    scale);
      momentum_step(&m->out_b, &vel.out_b, grad.out_b, cfg.momentum, cfg.lr,
                    scale);
    }
    epoch_losses.push_back(loss_sum / static_cast<double>(data.size()));
  }
  return epoch_losses;
}

}  // namespace pat
