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

#include <cmath>
#include <limits>

#include "pat/error.hpp"
#include "pat/model.hpp"

namespace pat {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = a > b ? a : b;
  return m + std::log1p(std::exp((a > b ? b : a) - m));
}

}  // namespace

CtcResult ctc_loss(const Logits& logits, const std::vector<int>& label) {
  const std::size_t T = logits.frames;
  if (T == 0) {
    throw Error(ErrorCode::kShapeMismatch, "ctc_loss on zero frames");
  }
  for (int k : label) {
    if (k <= 0 || k >= kNumClasses) {
      throw Error(ErrorCode::kInvalidArgument,
                  "label class out of range: " + std::to_string(k));
    }
  }
  // Minimum frames: one per symbol plus one separating blank per adjacent
  // repeat.
  std::size_t needed = label.size();
  for (std::size_t i = 1; i < label.size(); ++i) {
    if (label[i] == label[i - 1]) ++needed;
  }
  if (T < needed) {
    throw Error(ErrorCode::kInfeasibleLabel,
                "label needs " + std::to_string(needed) + " frames, got " +
                    std::to_string(T));
  }

  // Blank-extended label: blank, l1, blank, l2, ..., blank.
  const std::size_t S = 2 * label.size() + 1;
  const auto sym = [&](std::size_t s) {
    return (s % 2 == 1) ? label[s / 2] : kBlank;
  };

  // Per-frame log-softmax.
  std::vector<double> ls(T * kNumClasses);
  for (std::size_t t = 0; t < T; ++t) {
    double mx = logits.at(t, 0);
    for (int k = 1; k < kNumClasses; ++k) mx = std::max(mx, logits.at(t, k));
    double z = 0.0;
    for (int k = 0; k < kNumClasses; ++k) z += std::exp(logits.at(t, k) - mx);
    const double logz = mx + std::log(z);
    for (int k = 0; k < kNumClasses; ++k) {
      ls[t * kNumClasses + k] = logits.at(t, k) - logz;
    }
  }
  const auto lsym = [&](std::size_t t, std::size_t s) {
    return ls[t * kNumClasses + sym(s)];
  };

  // A transition s-2 -> s exists unless it would skip a required blank
  // (s even) or merge equal symbols.
  const auto can_skip = [&](std::size_t s) {
    return s % 2 == 1 && s >= 2 && sym(s) != sym(s - 2);
  };

  // Forward variable, emission at frame t included.
  std::vector<double> a(T * S, kNegInf);
  a[0] = lsym(0, 0);
  if (S > 1) a[1] = lsym(0, 1);
  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t s = 0; s < S; ++s) {
      double acc = a[(t - 1) * S + s];
      if (s >= 1) acc = log_add(acc, a[(t - 1) * S + s - 1]);
      if (can_skip(s)) acc = log_add(acc, a[(t - 1) * S + s - 2]);
      a[t * S + s] = acc == kNegInf ? kNegInf : acc + lsym(t, s);
    }
  }
  double logp = a[(T - 1) * S + S - 1];
  if (S > 1) logp = log_add(logp, a[(T - 1) * S + S - 2]);

  // Backward variable, same emission convention.
  std::vector<double> b(T * S, kNegInf);
  b[(T - 1) * S + S - 1] = lsym(T - 1, S - 1);
  if (S > 1) b[(T - 1) * S + S - 2] = lsym(T - 1, S - 2);
  for (std::size_t t = T - 1; t-- > 0;) {
    for (std::size_t s = 0; s < S; ++s) {
      double acc = b[(t + 1) * S + s];
      if (s + 1 < S) acc = log_add(acc, b[(t + 1) * S + s + 1]);
      if (s + 2 < S && can_skip(s + 2)) acc = log_add(acc, b[(t + 1) * S + s + 2]);
      b[t * S + s] = acc == kNegInf ? kNegInf : acc + lsym(t, s);
    }
  }

  // Gradient of -log p with respect to the raw logits: softmax minus the
  // per-frame symbol posterior. alpha and beta both include frame t's
  // emission, so one copy is divided back out.
  CtcResult res;
  res.loss = -logp;
  res.dlogits.frames = T;
  res.dlogits.values.assign(T * kNumClasses, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    double post[kNumClasses] = {0.0};
    for (std::size_t s = 0; s < S; ++s) {
      const double occ = a[t * S + s] + b[t * S + s] - lsym(t, s) - logp;
      if (occ != kNegInf) post[sym(s)] += std::exp(occ);
    }
    for (int k = 0; k < kNumClasses; ++k) {
      res.dlogits.at(t, k) = std::exp(ls[t * kNumClasses + k]) - post[k];
    }
  }
  return res;
}

}  // namespace pat
