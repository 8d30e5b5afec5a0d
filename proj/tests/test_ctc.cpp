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
#include <vector>

#include "doctest.h"
#include "pat/model.hpp"
#include "pat/rng.hpp"
#include "test_util.hpp"

namespace {

using pat_test::check_error;

// Logits with only `live` classes active; the rest are pushed to -1e9 so
// their softmax mass is exactly zero in double precision. This reduces the
// 28-class grid to a small alphabet that brute force can enumerate.
pat::Logits make_logits(std::size_t frames, int live,
                        const std::vector<double>& values) {
  pat::Logits l;
  l.frames = frames;
  l.values.assign(frames * pat::kNumClasses, -1e9);
  REQUIRE(values.size() == frames * static_cast<std::size_t>(live));
  for (std::size_t t = 0; t < frames; ++t) {
    for (int k = 0; k < live; ++k) {
      l.at(t, k) = values[t * live + k];
    }
  }
  return l;
}

// Collapse repeats then drop blanks (class 0).
std::vector<int> collapse(const std::vector<int>& path) {
  std::vector<int> out;
  int prev = -1;
  for (int s : path) {
    if (s != prev && s != 0) out.push_back(s);
    prev = s;
  }
  return out;
}

// Brute-force CTC: sum the probability of every alignment path over the
// live alphabet that collapses to the label.
double enumerate_loss(const pat::Logits& logits, int live,
                      const std::vector<int>& label) {
  const std::size_t frames = logits.frames;
  // Per-frame softmax over the live classes (the rest carry zero mass).
  std::vector<std::vector<double>> p(frames, std::vector<double>(live));
  for (std::size_t t = 0; t < frames; ++t) {
    double z = 0.0;
    for (int k = 0; k < live; ++k) z += std::exp(logits.at(t, k));
    for (int k = 0; k < live; ++k) p[t][k] = std::exp(logits.at(t, k)) / z;
  }
  double total = 0.0;
  std::vector<int> path(frames, 0);
  while (true) {
    double prob = 1.0;
    for (std::size_t t = 0; t < frames; ++t) prob *= p[t][path[t]];
    if (collapse(path) == label) total += prob;
    // Odometer increment over the live alphabet.
    std::size_t pos = 0;
    while (pos < frames && ++path[pos] == live) path[pos++] = 0;
    if (pos == frames) break;
  }
  return -std::log(total);
}

TEST_CASE("uniform single-frame case has the closed-form loss") {
  // One frame, three live classes, label "a" (class 1): p = 1/3.
  const pat::Logits l = make_logits(1, 3, {0.0, 0.0, 0.0});
  const pat::CtcResult r = pat::ctc_loss(l, {1});
  CHECK(r.loss == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("uniform two-frame case sums three alignments") {
  // Paths over {blank, a, b}^2 that collapse to "a": aa, a-, -a.
  // Each path has probability 1/9, so the loss is ln 3 again.
  const pat::Logits l = make_logits(2, 3, {0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
  const pat::CtcResult r = pat::ctc_loss(l, {1});
  CHECK(r.loss == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("ctc matches exhaustive enumeration on random grids") {
  pat::Rng rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t frames = 1 + rng.uniform_int(6);
    std::vector<double> vals(frames * 3);
    for (double& v : vals) v = rng.uniform(-2.0, 2.0);
    const pat::Logits l = make_logits(frames, 3, vals);

    std::vector<int> label;
    const auto len = rng.uniform_int(3);  // 0..2 symbols over {a, b}
    for (std::size_t i = 0; i < len; ++i) {
      label.push_back(1 + static_cast<int>(rng.uniform_int(2)));
    }

    // Feasibility: frames must fit the label plus repeat separators.
    std::size_t needed = label.size();
    for (std::size_t i = 1; i < label.size(); ++i) {
      if (label[i] == label[i - 1]) ++needed;
    }
    if (label.empty() || needed <= frames) {
      if (label.empty()) {
        // All-blank path probability.
        const pat::CtcResult r = pat::ctc_loss(l, label);
        CHECK(r.loss ==
              doctest::Approx(enumerate_loss(l, 3, label)).epsilon(1e-9));
      } else {
        const pat::CtcResult r = pat::ctc_loss(l, label);
        CHECK(std::abs(r.loss - enumerate_loss(l, 3, label)) < 1e-6);
      }
    } else {
      check_error([&] { pat::ctc_loss(l, label); },
                  pat::ErrorCode::kInfeasibleLabel);
    }
  }
}

TEST_CASE("repeated symbols need a separating blank") {
  const pat::Logits two = make_logits(2, 3, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
  check_error([&] { pat::ctc_loss(two, {1, 1}); },
              pat::ErrorCode::kInfeasibleLabel);
  const pat::Logits three = make_logits(3, 3, std::vector<double>(9, 0.0));
  CHECK_NOTHROW(pat::ctc_loss(three, {1, 1}));
}

TEST_CASE("ctc gradient matches central differences") {
  pat::Rng rng(41);
  const std::size_t frames = 5;
  std::vector<double> vals(frames * 3);
  for (double& v : vals) v = rng.uniform(-1.0, 1.0);
  const std::vector<int> label = {1, 2};

  const pat::Logits l = make_logits(frames, 3, vals);
  const pat::CtcResult r = pat::ctc_loss(l, label);
  REQUIRE(r.dlogits.frames == frames);

  const double h = 1e-6;
  for (std::size_t t = 0; t < frames; ++t) {
    for (int k = 0; k < 3; ++k) {
      pat::Logits lp = l, lm = l;
      lp.at(t, k) += h;
      lm.at(t, k) -= h;
      const double numeric =
          (pat::ctc_loss(lp, label).loss - pat::ctc_loss(lm, label).loss) /
          (2.0 * h);
      CHECK(r.dlogits.at(t, k) == doctest::Approx(numeric).epsilon(1e-5));
    }
  }
}

TEST_CASE("saturated posteriors give a vanishing gradient") {
  // Strongly peaked logits along the alignment "blank a blank".
  pat::Logits l;
  l.frames = 3;
  l.values.assign(3 * pat::kNumClasses, -20.0);
  l.at(0, pat::kBlank) = 20.0;
  l.at(1, 1) = 20.0;
  l.at(2, pat::kBlank) = 20.0;
  const pat::CtcResult r = pat::ctc_loss(l, {1});
  CHECK(r.loss < 1e-4);
  double norm = 0.0;
  for (double g : r.dlogits.values) norm += g * g;
  CHECK(std::sqrt(norm) < 1e-4);
}

TEST_CASE("ctc input validation") {
  const pat::Logits l = make_logits(2, 3, std::vector<double>(6, 0.0));
  check_error([&] { pat::ctc_loss(pat::Logits{}, {1}); },
              pat::ErrorCode::kShapeMismatch);
  check_error([&] { pat::ctc_loss(l, {0}); }, pat::ErrorCode::kInvalidArgument);
  check_error([&] { pat::ctc_loss(l, {28}); }, pat::ErrorCode::kInvalidArgument);
  check_error([&] { pat::ctc_loss(l, {-1}); }, pat::ErrorCode::kInvalidArgument);
}

TEST_CASE("greedy_decode collapses repeats and drops blanks") {
  // Frame argmaxes: blank, a, a, blank, b -> "ab".
  pat::Logits l;
  l.frames = 5;
  l.values.assign(5 * pat::kNumClasses, 0.0);
  l.at(0, pat::kBlank) = 5.0;
  l.at(1, 1) = 5.0;
  l.at(2, 1) = 5.0;
  l.at(3, pat::kBlank) = 5.0;
  l.at(4, 2) = 5.0;
  CHECK(pat::greedy_decode(l) == "ab");

  pat::Logits blanks;
  blanks.frames = 4;
  blanks.values.assign(4 * pat::kNumClasses, 0.0);
  for (std::size_t t = 0; t < 4; ++t) blanks.at(t, pat::kBlank) = 5.0;
  CHECK(pat::greedy_decode(blanks).empty());

  // A blank separates repeats into two output symbols.
  pat::Logits aba;
  aba.frames = 3;
  aba.values.assign(3 * pat::kNumClasses, 0.0);
  aba.at(0, 1) = 5.0;
  aba.at(1, pat::kBlank) = 5.0;
  aba.at(2, 1) = 5.0;
  CHECK(pat::greedy_decode(aba) == "aa");
}

TEST_CASE("label/text conversions round trip") {
  const std::vector<int> labels = pat::text_to_labels("cat dog");
  REQUIRE(labels.size() == 7);
  CHECK(labels[0] == 3);
  CHECK(labels[3] == 27);  // space
  CHECK(pat::labels_to_text(labels) == "cat dog");
  check_error([] { pat::text_to_labels("Cat!"); },
              pat::ErrorCode::kBadTranscriptChar);
}

}  // namespace
