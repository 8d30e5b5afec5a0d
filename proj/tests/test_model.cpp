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
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "pat/features.hpp"
#include "pat/model.hpp"
#include "pat/rng.hpp"
#include "test_util.hpp"

namespace {

using pat_test::check_error;
using pat_test::tmp_dir;

pat::FeatureMatrix random_features(std::size_t frames, std::uint64_t seed) {
  pat::FeatureMatrix f;
  f.frames = frames;
  f.bands = pat::kNumBands;
  f.values.resize(frames * f.bands);
  pat::Rng rng(seed);
  for (double& v : f.values) v = rng.uniform(-5.0, 2.0);
  return f;
}

pat::Waveform random_wave(std::size_t n, std::uint64_t seed) {
  pat::Waveform w;
  w.samples.resize(n);
  pat::Rng rng(seed);
  for (double& s : w.samples) s = rng.uniform(-0.5, 0.5);
  return w;
}

TEST_CASE("architectures have the advertised shapes") {
  const pat::AcousticModel base = pat::make_model("base", 17);
  CHECK(base.channels() == 64);
  CHECK(base.conv1.kernel == 5);
  CHECK(base.conv1.in_ch == pat::kNumBands);
  const pat::AcousticModel variant = pat::make_model("variant", 17);
  CHECK(variant.channels() == 48);
  CHECK(variant.conv1.kernel == 7);
  CHECK(base.model_id() != variant.model_id());
  check_error([] { pat::make_model("huge", 1); },
              pat::ErrorCode::kInvalidArgument);
}

TEST_CASE("model ids hash the weights") {
  pat::AcousticModel a = pat::make_model("base", 17);
  const pat::AcousticModel b = pat::make_model("base", 17);
  const pat::AcousticModel c = pat::make_model("base", 18);
  CHECK(a.model_id() == b.model_id());
  CHECK(a.model_id() != c.model_id());
  CHECK(a.model_id().size() == 16);
  const std::string before = a.model_id();
  a.conv1.w[0] += 1e-9;
  CHECK(a.model_id() != before);
}

TEST_CASE("forward is deterministic with contracted output shape") {
  const pat::AcousticModel m = pat::make_model("base", 3);
  const pat::FeatureMatrix f = random_features(7, 5);
  const pat::Logits l1 = pat::forward(m, f);
  const pat::Logits l2 = pat::forward(m, f);
  CHECK(l1.frames == 7);
  REQUIRE(l1.values.size() == 7 * pat::kNumClasses);
  CHECK(l1.values == l2.values);
  for (double v : l1.values) CHECK(std::isfinite(v));

  pat::FeatureMatrix bad = f;
  bad.bands = 39;
  bad.values.resize(bad.frames * bad.bands);
  check_error([&] { pat::forward(m, bad); }, pat::ErrorCode::kShapeMismatch);
}

TEST_CASE("zero weights produce zero logits") {
  pat::AcousticModel m = pat::make_model("base", 3);
  std::fill(m.conv1.w.begin(), m.conv1.w.end(), 0.0);
  std::fill(m.conv1.b.begin(), m.conv1.b.end(), 0.0);
  std::fill(m.conv2.w.begin(), m.conv2.w.end(), 0.0);
  std::fill(m.conv2.b.begin(), m.conv2.b.end(), 0.0);
  std::fill(m.out_w.begin(), m.out_w.end(), 0.0);
  std::fill(m.out_b.begin(), m.out_b.end(), 0.0);
  const pat::Logits l = pat::forward(m, random_features(4, 6));
  for (double v : l.values) CHECK(v == 0.0);
}

TEST_CASE("parameter gradients match finite differences") {
  const pat::FeatureMatrix f = random_features(6, 7);
  pat::AcousticModel m = pat::make_model("base", 9);
  const std::vector<int> label = pat::text_to_labels("ab");

  const auto loss_of = [&](const pat::AcousticModel& model) {
    return pat::ctc_loss(pat::forward(model, f), label).loss;
  };

  pat::ForwardCache cache;
  pat::forward_cached(m, f, &cache);
  const pat::CtcResult ctc = pat::ctc_loss(cache.logits, label);
  pat::ModelGrad grad = pat::zero_grad(m);
  pat::model_backward(m, cache, ctc.dlogits, &grad);

  const double h = 1e-6;
  pat::Rng pick(11);
  // Spot-check a handful of coordinates in every parameter tensor.
  const auto check_tensor = [&](std::vector<double>& w, const std::vector<double>& g) {
    REQUIRE(w.size() == g.size());
    for (int probe = 0; probe < 5; ++probe) {
      const std::size_t i = pick.uniform_int(w.size());
      const double keep = w[i];
      w[i] = keep + h;
      const double up = loss_of(m);
      w[i] = keep - h;
      const double dn = loss_of(m);
      w[i] = keep;
      const double numeric = (up - dn) / (2.0 * h);
      CHECK(g[i] == doctest::Approx(numeric).epsilon(1e-4));
    }
  };
  check_tensor(m.conv1.w, grad.conv1_w);
  check_tensor(m.conv1.b, grad.conv1_b);
  check_tensor(m.conv2.w, grad.conv2_w);
  check_tensor(m.conv2.b, grad.conv2_b);
  check_tensor(m.out_w, grad.out_w);
  check_tensor(m.out_b, grad.out_b);
}

TEST_CASE("feature gradients match finite differences") {
  pat::FeatureMatrix f = random_features(5, 8);
  const pat::AcousticModel m = pat::make_model("base", 10);
  const std::vector<int> label = pat::text_to_labels("a");

  pat::ForwardCache cache;
  pat::forward_cached(m, f, &cache);
  const pat::CtcResult ctc = pat::ctc_loss(cache.logits, label);
  const pat::FeatureGradient g = pat::model_backward(m, cache, ctc.dlogits, nullptr);
  REQUIRE(g.values.size() == f.values.size());

  const double h = 1e-6;
  pat::Rng pick(12);
  for (int probe = 0; probe < 12; ++probe) {
    const std::size_t i = pick.uniform_int(f.values.size());
    const double keep = f.values[i];
    f.values[i] = keep + h;
    const double up = pat::ctc_loss(pat::forward(m, f), label).loss;
    f.values[i] = keep - h;
    const double dn = pat::ctc_loss(pat::forward(m, f), label).loss;
    f.values[i] = keep;
    const double numeric = (up - dn) / (2.0 * h);
    CHECK(g.values[i] == doctest::Approx(numeric).epsilon(1e-4));
  }
}

TEST_CASE("backward_to_waveform matches a directional finite difference") {
  const pat::Waveform w = random_wave(1600, 13);
  const pat::AcousticModel m = pat::make_model("base", 14);
  const std::vector<int> label = pat::text_to_labels("ab");

  const pat::WaveGrad wg = pat::backward_to_waveform(m, w, label);
  REQUIRE(wg.grad.size() == w.size());
  CHECK(std::isfinite(wg.loss));

  pat::Rng rng(15);
  std::vector<double> dir(w.size());
  for (double& d : dir) d = rng.uniform(-1.0, 1.0);
  double analytic = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) analytic += wg.grad[i] * dir[i];

  const double h = 1e-5;
  pat::Waveform wp = w, wm = w;
  for (std::size_t i = 0; i < w.size(); ++i) {
    wp.samples[i] += h * dir[i];
    wm.samples[i] -= h * dir[i];
  }
  const double up = pat::ctc_loss(pat::forward(m, pat::log_mel_forward(wp)), label).loss;
  const double dn = pat::ctc_loss(pat::forward(m, pat::log_mel_forward(wm)), label).loss;
  const double numeric = (up - dn) / (2.0 * h);
  CHECK(std::abs(analytic - numeric) /
            std::max({1e-8, std::abs(analytic), std::abs(numeric)}) < 1e-3);
}

TEST_CASE("checkpoints round trip exactly") {
  const std::string dir = tmp_dir("model_ckpt");
  const pat::AcousticModel m = pat::make_model("variant", 21);
  pat::save_model(m, dir + "/m.json");
  const pat::AcousticModel r = pat::load_model(dir + "/m.json");
  CHECK(r.arch == m.arch);
  CHECK(r.conv1.w == m.conv1.w);
  CHECK(r.conv2.w == m.conv2.w);
  CHECK(r.out_w == m.out_w);
  CHECK(r.out_b == m.out_b);
  CHECK(r.model_id() == m.model_id());
}

TEST_CASE("corrupt checkpoints are rejected") {
  const std::string dir = tmp_dir("model_ckpt_bad");
  const pat::AcousticModel m = pat::make_model("base", 22);
  pat::save_model(m, dir + "/m.json");

  check_error([&] { pat::load_model(dir + "/absent.json"); },
              pat::ErrorCode::kFileNotFound);

  // Tamper with one weight: the stored hash no longer matches.
  {
    std::ifstream is(dir + "/m.json");
    nlohmann::json j = nlohmann::json::parse(is);
    j["conv1"]["w"][0] = j["conv1"]["w"][0].get<double>() + 0.5;
    std::ofstream os(dir + "/tampered.json");
    os << j.dump();
  }
  check_error([&] { pat::load_model(dir + "/tampered.json"); },
              pat::ErrorCode::kBadCheckpoint);

  {
    std::ofstream os(dir + "/garbage.json");
    os << "{not json";
  }
  check_error([&] { pat::load_model(dir + "/garbage.json"); },
              pat::ErrorCode::kBadCheckpoint);
}

}  // namespace
