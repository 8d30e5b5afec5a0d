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
//
// Release gate: one pass/fail line per criterion, exit code = number of
// failures. Heavy artifacts (corpora, trained models, attack runs) are
// built once and shared across criteria. Thresholds are pinned inline.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "pat/attack.hpp"
#include "pat/corpus.hpp"
#include "pat/error.hpp"
#include "pat/evaluation.hpp"
#include "pat/features.hpp"
#include "pat/g2p.hpp"
#include "pat/hashing.hpp"
#include "pat/model.hpp"
#include "pat/noise.hpp"
#include "pat/rir.hpp"
#include "pat/rng.hpp"

namespace {

namespace fs = std::filesystem;

// Reduced grid budget for the 2x2 sampling/sliding comparison; orderings
// are asserted on 3-seed means at this desk-scale budget.
constexpr int kGridEpochs = 2;
constexpr int kGridIters = 15;
const std::vector<std::uint64_t> kSeeds = {17, 18, 19};

int g_failures = 0;

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s - %s\n", id, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof(buf), f, args);
  va_end(args);
  return buf;
}

std::string scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "pat_acceptance" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p.string();
}

std::uint64_t file_hash(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  const std::string bytes((std::istreambuf_iterator<char>(is)), {});
  return pat::fnv1a64(bytes);
}

// ---------------------------------------------------------------------------
// criterion 1: CTC loss equals exhaustive alignment enumeration.

std::vector<int> collapse_path(const std::vector<int>& path) {
  std::vector<int> out;
  int prev = -1;
  for (int s : path) {
    if (s != prev && s != 0) out.push_back(s);
    prev = s;
  }
  return out;
}

double enumerate_ctc(const pat::Logits& logits, const std::vector<int>& label) {
  const std::size_t frames = logits.frames;
  const int live = 3;  // blank + {a, b}; all other classes carry zero mass
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
    if (collapse_path(path) == label) total += prob;
    std::size_t pos = 0;
    while (pos < frames && ++path[pos] == live) path[pos++] = 0;
    if (pos == frames) break;
  }
  return -std::log(total);
}

void criterion_1() {
  const double t0 = now_seconds();
  pat::Rng rng(101);
  int checked = 0;
  double worst = 0.0;
  while (checked < 200) {
    const std::size_t frames = 1 + rng.uniform_int(6);
    std::vector<int> label;
    const auto len = rng.uniform_int(3);  // 0, 1 or 2 symbols over {a, b}
    for (std::size_t i = 0; i < len; ++i) {
      label.push_back(1 + static_cast<int>(rng.uniform_int(2)));
    }
    std::size_t needed = label.size();
    if (label.size() == 2 && label[0] == label[1]) ++needed;
    if (needed > frames) continue;

    pat::Logits l;
    l.frames = frames;
    l.values.assign(frames * pat::kNumClasses, -1e9);
    for (std::size_t t = 0; t < frames; ++t) {
      for (int k = 0; k < 3; ++k) l.at(t, k) = rng.uniform(-3.0, 3.0);
    }
    const double got = pat::ctc_loss(l, label).loss;
    const double want = enumerate_ctc(l, label);
    worst = std::max(worst, std::abs(got - want));
    ++checked;
  }
  const double dt = now_seconds() - t0;
  report(1, worst < 1e-6 && dt < 10.0,
         fmt("ctc vs exhaustive enumeration: max |diff| %.2e over 200 draws "
             "(budget 1e-6), %.1f s (budget 10 s)", worst, dt));
}

// ---------------------------------------------------------------------------
// criterion 2: full-pipeline directional derivative vs central differences.

void criterion_2() {
  const double t0 = now_seconds();
  const pat::AcousticModel model = pat::make_model("base", 2);
  const std::vector<int> label = pat::text_to_labels("cat");
  pat::Rng rng(202);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    pat::Waveform w;
    w.samples.resize(4800);  // 0.3 s
    for (double& s : w.samples) s = rng.uniform(-0.5, 0.5);

    const pat::WaveGrad wg = pat::backward_to_waveform(model, w, label);
    std::vector<double> dir(w.size());
    for (double& d : dir) d = rng.uniform(-1.0, 1.0);
    double analytic = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) analytic += wg.grad[i] * dir[i];

    const double h = 1e-4;
    pat::Waveform wp = w, wm = w;
    for (std::size_t i = 0; i < w.size(); ++i) {
      wp.samples[i] += h * dir[i];
      wm.samples[i] -= h * dir[i];
    }
    const auto loss_of = [&](const pat::Waveform& x) {
      return pat::ctc_loss(pat::forward(model, pat::log_mel_forward(x)), label)
          .loss;
    };
    const double numeric = (loss_of(wp) - loss_of(wm)) / (2.0 * h);
    const double rel = std::abs(analytic - numeric) /
                       std::max({1e-12, std::abs(analytic), std::abs(numeric)});
    worst = std::max(worst, rel);
  }
  const double dt = now_seconds() - t0;
  report(2, worst < 1e-3 && dt < 60.0,
         fmt("pipeline gradient vs central differences: worst relative error "
             "%.2e over 10 inputs (budget 1e-3), %.1f s (budget 60 s)",
             worst, dt));
}

// ---------------------------------------------------------------------------
// criterion 3: adjoint identities for inject/fold and rir forward/backward.

void criterion_3() {
  pat::Rng rng(303);
  double worst_fold = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t len = 32 + rng.uniform_int(96);
    const std::size_t xlen = len + rng.uniform_int(400);
    const pat::SlideSchedule sched{0.1 + rng.uniform(), rng.uniform_int(1000)};
    pat::NoiseClip clip;
    clip.epsilon = 1.0;
    clip.delta.samples.resize(len);
    for (double& s : clip.delta.samples) s = rng.uniform(-1.0, 1.0);
    pat::Waveform x;
    x.samples.assign(xlen, 0.0);
    std::vector<double> g(xlen);
    for (double& v : g) v = rng.uniform(-1.0, 1.0);

    const pat::Waveform track = pat::inject(x, clip, sched);
    double lhs = 0.0;
    for (std::size_t i = 0; i < xlen; ++i) lhs += track.samples[i] * g[i];
    const std::vector<double> folded = pat::fold_gradient(g, len, sched);
    double rhs = 0.0;
    for (std::size_t j = 0; j < len; ++j) {
      rhs += clip.delta.samples[j] * folded[j];
    }
    worst_fold = std::max(worst_fold, std::abs(lhs - rhs));
  }

  double worst_rir = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 32 + rng.uniform_int(96);
    pat::RoomImpulse h = pat::make_rir(0.1 + 0.4 * rng.uniform(), rng.next_u64());
    h.taps.resize(4 + rng.uniform_int(24));
    pat::Waveform u;
    u.samples.resize(n);
    // Small amplitudes keep apply_rir inside its linear region.
    for (double& s : u.samples) s = rng.uniform(-0.01, 0.01);
    std::vector<double> g(n);
    for (double& v : g) v = rng.uniform(-1.0, 1.0);

    const pat::Waveform au = pat::apply_rir(u, h);
    double lhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) lhs += au.samples[i] * g[i];
    const std::vector<double> atg = pat::rir_backward(g, h);
    double rhs = 0.0;
    for (std::size_t i = 0; i < n; ++i) rhs += u.samples[i] * atg[i];
    worst_rir = std::max(worst_rir, std::abs(lhs - rhs));
  }

  report(3, worst_fold < 1e-9 && worst_rir < 1e-9,
         fmt("adjoint identities: inject/fold worst |diff| %.2e, rir worst "
             "|diff| %.2e over 100 instances each (budget 1e-9)",
             worst_fold, worst_rir));
}

// ---------------------------------------------------------------------------
// criterion 11: CER against a memoized edit-script recursion, exhaustively.

std::size_t oracle_distance(const std::string& a, const std::string& b,
                            std::vector<int>* memo, std::size_t width) {
  // Top-down recursion over edit scripts with memoization; organized
  // differently from the iterative DP inside cer().
  const std::size_t key = a.size() * width + b.size();
  if ((*memo)[key] >= 0) return static_cast<std::size_t>((*memo)[key]);
  std::size_t best;
  if (a.empty()) {
    best = b.size();
  } else if (b.empty()) {
    best = a.size();
  } else {
    const std::size_t sub = oracle_distance(a.substr(1), b.substr(1), memo, width) +
                            (a[0] == b[0] ? 0 : 1);
    const std::size_t del = oracle_distance(a.substr(1), b, memo, width) + 1;
    const std::size_t ins = oracle_distance(a, b.substr(1), memo, width) + 1;
    best = std::min({sub, del, ins});
  }
  (*memo)[key] = static_cast<int>(best);
  return best;
}

void criterion_11() {
  const double t0 = now_seconds();
  const char alphabet[] = {'a', 'b', 'c'};
  std::vector<std::string> by_len[7];
  by_len[0] = {""};
  for (int len = 1; len <= 6; ++len) {
    for (const std::string& shorter : by_len[len - 1]) {
      for (char c : alphabet) by_len[len].push_back(shorter + c);
    }
  }
  long pairs = 0;
  long mismatches = 0;
  for (int rl = 1; rl <= 6; ++rl) {
    for (const std::string& ref : by_len[rl]) {
      for (int hl = 0; hl <= 6; ++hl) {
        for (const std::string& hyp : by_len[hl]) {
          std::vector<int> memo((ref.size() + 1) * (hyp.size() + 1), -1);
          const std::size_t want =
              oracle_distance(ref, hyp, &memo, hyp.size() + 1);
          const double got = pat::cer(ref, hyp);
          ++pairs;
          if (std::abs(got * static_cast<double>(ref.size()) -
                       static_cast<double>(want)) > 1e-9) {
            ++mismatches;
          }
        }
      }
    }
  }
  const double dt = now_seconds() - t0;
  report(11, mismatches == 0,
         fmt("cer vs memoized recursion: %ld mismatches over %ld exhaustive "
             "pairs (ref 1..6, hyp 0..6, 3-letter alphabet), %.1f s",
             mismatches, pairs, dt));
}

// ---------------------------------------------------------------------------
// Shared heavy artifacts.

struct Artifacts {
  pat::Corpus train;
  pat::Corpus test;
  pat::AcousticModel model_a;       // base architecture, fully trained
  pat::AcousticModel model_b;       // variant architecture, fully trained
  double train_seconds = 0.0;
  double heldout_cer = 1.0;
  std::vector<pat::NoiseClip> pat_noises;      // one per seed, default attack
  std::vector<pat::AttackReport> pat_optim;    // optimization-side reports
  std::vector<pat::AttackReport> pat_evals;    // test-set evaluations
  std::vector<pat::AttackReport> gauss_evals;
  double attack_seconds = 0.0;
};

double ground_truth_cer(const pat::AcousticModel& m, const pat::Corpus& c) {
  double sum = 0.0;
  for (const pat::CorpusEntry& e : c.entries) {
    sum += pat::cer(e.transcript,
                    pat::greedy_decode(pat::forward(m, pat::log_mel_forward(e.audio))));
  }
  return sum / static_cast<double>(c.entries.size());
}

void build_corpora(Artifacts* art) {
  const pat::G2pDictionary dict = pat::G2pDictionary::bundled();
  pat::SynthConfig train_cfg;  // defaults: 120 utterances, 3-8 words, seed 17
  pat::SynthConfig test_cfg = train_cfg;
  test_cfg.n_utterances = 40;
  test_cfg.seed = pat::Rng::mix(17, 0x7e57);
  const std::string train_manifest =
      pat::synth_corpus(train_cfg, dict, scratch_dir("corpus/train"));
  const std::string test_manifest =
      pat::synth_corpus(test_cfg, dict, scratch_dir("corpus/test"));
  art->train = pat::ingest(train_manifest, dict);
  art->test = pat::ingest(test_manifest, dict);
  std::printf("  [setup] corpus: %zu train / %zu test utterances, D = %.3f\n",
              art->train.entries.size(), art->test.entries.size(),
              art->train.stats.avg_density);
  std::fflush(stdout);
}

// criterion 5: default training reaches the held-out CER gate in time.
void criterion_5(Artifacts* art) {
  const double t0 = now_seconds();
  art->model_a = pat::make_model("base", 17);
  const pat::TrainConfig cfg;  // default schedule
  const std::vector<double> losses =
      pat::train(&art->model_a, art->train.entries, cfg);
  art->train_seconds = now_seconds() - t0;
  art->heldout_cer = ground_truth_cer(art->model_a, art->test);
  report(5,
         art->heldout_cer <= 0.15 && art->train_seconds <= 900.0,
         fmt("default training: held-out CER %.4f (gate 0.15), final loss "
             "%.3f, %.0f s (budget 900 s)",
             art->heldout_cer, losses.back(), art->train_seconds));

  // The transfer target trains on the same corpus and schedule.
  art->model_b = pat::make_model("variant", 17);
  pat::train(&art->model_b, art->train.entries, cfg);
  std::printf("  [setup] variant model trained for transfer checks (CER %.4f)\n",
              ground_truth_cer(art->model_b, art->test));
  std::fflush(stdout);
}

// criteria 4 + 6: default attacks at three seeds.
void criteria_4_and_6(Artifacts* art) {
  const double t0 = now_seconds();
  std::size_t checks = 0, violations = 0, planned = 0;
  double pat_cer = 0.0, pat_db = 0.0, gauss_cer = 0.0, gauss_db = 0.0;
  for (std::uint64_t seed : kSeeds) {
    pat::AttackConfig cfg;  // default desk budget: E=20, k=10, iters=50
    cfg.seed = seed;
    const pat::AttackResult result =
        pat::generate(art->model_a, art->train, cfg);
    checks += result.report.constraint_checks;
    violations += result.report.constraint_violations;
    planned += static_cast<std::size_t>(cfg.epochs) * cfg.k_instances *
               static_cast<std::size_t>(cfg.iters);

    const pat::AttackReport eval =
        pat::evaluate(art->model_a, result.noise, art->test);
    const pat::NoiseClip gauss =
        pat::baseline_gaussian(cfg.epsilon, cfg.l_delta_p, seed);
    const pat::AttackReport geval =
        pat::evaluate(art->model_a, gauss, art->test);

    std::printf("  [seed %llu] pat cer %.3f sr %.3f db %.2f | gaussian cer "
                "%.3f sr %.3f | %.0f s\n",
                static_cast<unsigned long long>(seed), eval.mean_cer, eval.sr,
                eval.mean_db, geval.mean_cer, geval.sr,
                result.report.wall_seconds);
    std::fflush(stdout);

    pat_cer += eval.mean_cer;
    pat_db += eval.mean_db;
    gauss_cer += geval.mean_cer;
    gauss_db += geval.mean_db;
    art->pat_noises.push_back(result.noise);
    art->pat_optim.push_back(result.report);
    art->pat_evals.push_back(eval);
    art->gauss_evals.push_back(geval);
  }
  const double n = static_cast<double>(kSeeds.size());
  pat_cer /= n;
  pat_db /= n;
  gauss_cer /= n;
  gauss_db /= n;
  art->attack_seconds = now_seconds() - t0;

  report(4, checks == planned && violations == 0,
         fmt("constraint invariant: %zu violations across %zu per-iteration "
             "checks (expected %zu checks over 3 default runs)",
             violations, checks, planned));

  const bool level_ok = std::abs(pat_db + 33.0) <= 2.0;
  report(6,
         level_ok && pat_cer >= 0.30 && pat_cer >= gauss_cer + 0.15 &&
             art->attack_seconds <= 1200.0,
         fmt("attack effectiveness: pat cer_vs_clean %.3f (gate 0.30), "
             "gaussian %.3f (gap gate +0.15), mean dB %.2f (gate -33+-2, "
             "gaussian %.2f), %.0f s (budget 1200 s)",
             pat_cer, gauss_cer, pat_db, gauss_db, art->attack_seconds));
}

// criteria 7 + 8: the 2x2 sampling/sliding grid at a reduced budget.
void criteria_7_and_8(Artifacts* art) {
  struct ArmStats {
    double sr = 0.0, cer = 0.0, wall = 0.0;
  };
  std::map<std::string, ArmStats> arms;
  const struct {
    const char* name;
    bool pdbs, spni;
  } grid[] = {{"neither", false, false},
              {"pdbs", true, false},
              {"spni", false, true},
              {"both", true, true}};

  for (const auto& arm : grid) {
    for (std::uint64_t seed : kSeeds) {
      pat::AttackConfig base;
      base.epochs = kGridEpochs;
      base.iters = kGridIters;
      base.seed = seed;
      const pat::AttackConfig cfg = pat::ablation_arm(base, arm.pdbs, arm.spni);
      const pat::AttackResult result =
          pat::generate(art->model_a, art->train, cfg);
      const pat::AttackReport eval =
          pat::evaluate(art->model_a, result.noise, art->test);
      arms[arm.name].sr += eval.sr / 3.0;
      arms[arm.name].cer += eval.mean_cer / 3.0;
      arms[arm.name].wall += result.report.wall_seconds / 3.0;
    }
    std::printf("  [arm %-7s] mean sr %.3f cer %.3f wall %.1f s\n", arm.name,
                arms[arm.name].sr, arms[arm.name].cer, arms[arm.name].wall);
    std::fflush(stdout);
  }

  const ArmStats& none = arms["neither"];
  const ArmStats& pdbs = arms["pdbs"];
  const ArmStats& spni = arms["spni"];
  const ArmStats& both = arms["both"];
  report(7,
         pdbs.sr > none.sr && spni.sr > none.sr && both.sr >= none.sr + 0.10,
         fmt("ablation ordering (3-seed mean SR, E=%d iters=%d): neither "
             "%.3f, pdbs-only %.3f, spni-only %.3f, both %.3f (both gate "
             "neither+0.10)",
             kGridEpochs, kGridIters, none.sr, pdbs.sr, spni.sr, both.sr));

  // Sampled-vs-full comparison at identical epochs and iterations: the
  // spni-on pair differs only in the training set.
  const double wall_ratio = both.wall / spni.wall;
  const double cer_ratio = both.cer / std::max(1e-12, spni.cer);
  report(8, wall_ratio <= 0.20 && cer_ratio >= 0.70,
         fmt("sampling speed: wall %.1f s vs full-corpus %.1f s (ratio %.3f, "
             "gate 0.20); cer retention %.3f vs full (ratio %.3f, gate 0.70)",
             both.wall, spni.wall, wall_ratio, both.cer, cer_ratio));
}

// criterion 9: transfer to the variant architecture beats the baseline.
void criterion_9(Artifacts* art) {
  double pat_sr = 0.0, gauss_sr = 0.0;
  for (std::size_t i = 0; i < kSeeds.size(); ++i) {
    const pat::AttackReport t =
        pat::transfer_eval(art->model_b, art->pat_noises[i], art->test);
    const pat::NoiseClip gauss = pat::baseline_gaussian(
        art->pat_noises[i].epsilon, art->pat_noises[i].meta.l_delta_p,
        kSeeds[i]);
    const pat::AttackReport g = pat::evaluate(art->model_b, gauss, art->test);
    pat_sr += t.sr / 3.0;
    gauss_sr += g.sr / 3.0;
  }
  report(9, pat_sr > gauss_sr,
         fmt("transfer to variant model: pat SR %.3f vs gaussian SR %.3f "
             "(strict ordering, 3-seed mean)",
             pat_sr, gauss_sr));
}

// criterion 10: every stage reruns bit-identically.
void criterion_10() {
  const pat::G2pDictionary dict = pat::G2pDictionary::bundled();

  // Stage outputs from one full pass, twice.
  struct StageHashes {
    std::vector<std::uint64_t> values;
  };
  const auto run_pipeline = [&](const std::string& tag) {
    StageHashes h;
    pat::SynthConfig synth;
    synth.n_utterances = 8;
    synth.min_words = 2;
    synth.max_words = 3;
    synth.seed = 23;
    const std::string dir = scratch_dir("determinism_" + tag);
    const std::string manifest = pat::synth_corpus(synth, dict, dir + "/corpus");
    h.values.push_back(file_hash(manifest));
    for (int i = 0; i < synth.n_utterances; ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "utt_%05d.wav", i);
      h.values.push_back(file_hash(dir + "/corpus/" + name));
    }

    const pat::Corpus corpus = pat::ingest(manifest, dict);
    pat::AcousticModel model = pat::make_model("base", 23);
    pat::TrainConfig tcfg;
    tcfg.epochs = 3;
    tcfg.batch = 4;
    tcfg.seed = 23;
    pat::train(&model, corpus.entries, tcfg);
    pat::save_model(model, dir + "/model.json");
    h.values.push_back(file_hash(dir + "/model.json"));

    pat::AttackConfig acfg;
    acfg.epochs = 1;
    acfg.iters = 3;
    acfg.k_instances = 2;
    acfg.alpha = 50.0;
    acfg.crop_seconds = 1.0;
    acfg.seed = 23;
    const pat::AttackResult result = pat::generate(model, corpus, acfg);
    pat::save_noise(result.noise, dir + "/noise.wav");
    h.values.push_back(file_hash(dir + "/noise.wav"));
    h.values.push_back(file_hash(dir + "/noise.wav.json"));

    const pat::AttackReport eval = pat::evaluate(model, result.noise, corpus);
    pat::emit_report(eval, dir + "/report.json", dir + "/report.txt");
    {
      // Wall-clock is the one legitimately volatile field; hash the rest.
      std::ifstream is(dir + "/report.json");
      nlohmann::json j = nlohmann::json::parse(is);
      j.erase("wall_seconds");
      h.values.push_back(pat::fnv1a64(j.dump()));
    }

    pat::export_spectrogram(corpus.entries[0].audio, dir + "/spec.pgm");
    h.values.push_back(file_hash(dir + "/spec.pgm"));
    return h;
  };

  const StageHashes first = run_pipeline("a");
  const StageHashes second = run_pipeline("b");
  std::size_t diffs = 0;
  for (std::size_t i = 0; i < first.values.size(); ++i) {
    if (first.values[i] != second.values[i]) ++diffs;
  }
  report(10, diffs == 0 && first.values.size() == second.values.size(),
         fmt("determinism: %zu of %zu stage artifact hashes differ between "
             "identical reruns (corpus, checkpoint, noise, report, image)",
             diffs, first.values.size()));
}

}  // namespace

int main() {
  std::printf("release gate: %zu criteria, shared artifacts, single process\n",
              std::size_t{11});
  std::fflush(stdout);
  try {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_11();

    Artifacts art;
    build_corpora(&art);
    criterion_5(&art);
    criteria_4_and_6(&art);
    criteria_7_and_8(&art);
    criterion_9(&art);
    criterion_10();
  } catch (const pat::Error& e) {
    std::fprintf(stderr, "fatal: %s\n", e.what());
    return 99;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "fatal: %s\n", e.what());
    return 99;
  }
  std::printf("release gate: %d failure(s), %.0f s total\n", g_failures,
              now_seconds());
  return g_failures;
}
