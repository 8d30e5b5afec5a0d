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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pat/attack.hpp"
#include "pat/corpus.hpp"
#include "pat/error.hpp"
#include "pat/evaluation.hpp"
#include "pat/features.hpp"
#include "pat/g2p.hpp"
#include "pat/model.hpp"
#include "pat/noise.hpp"
#include "pat/rng.hpp"
#include "pat/sampling.hpp"

namespace {

namespace fs = std::filesystem;

// Every subcommand drops its effective flags next to its artifacts so any
// run can be replayed exactly.
void write_config(const std::string& out_dir, const nlohmann::json& cfg) {
  fs::create_directories(out_dir);
  std::ofstream os((fs::path(out_dir) / "config.json").string());
  if (!os) {
    throw pat::Error(pat::ErrorCode::kUnwritablePath,
                     "cannot write config snapshot under " + out_dir);
  }
  os << cfg.dump(2) << "\n";
}

nlohmann::json attack_config_json(const pat::AttackConfig& cfg) {
  return {{"epsilon", cfg.epsilon},
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
}

// Ground-truth character error rate of the model over a corpus.
double corpus_cer(const pat::AcousticModel& model, const pat::Corpus& corpus) {
  double sum = 0.0;
  for (const pat::CorpusEntry& e : corpus.entries) {
    const std::string hyp =
        pat::greedy_decode(pat::forward(model, pat::log_mel_forward(e.audio)));
    sum += pat::cer(e.transcript, hyp);
  }
  return sum / static_cast<double>(corpus.entries.size());
}

struct SynthArgs {
  std::string out;
  std::uint64_t seed = 17;
  int n_train = 120;
  int n_test = 40;
  int min_words = 3;
  int max_words = 8;
};

void run_synth(const SynthArgs& a) {
  const pat::G2pDictionary dict = pat::G2pDictionary::bundled();
  pat::SynthConfig train_cfg;
  train_cfg.n_utterances = a.n_train;
  train_cfg.min_words = a.min_words;
  train_cfg.max_words = a.max_words;
  train_cfg.seed = a.seed;
  pat::SynthConfig test_cfg = train_cfg;
  test_cfg.n_utterances = a.n_test;
  test_cfg.seed = pat::Rng::mix(a.seed, 0x7e57);

  write_config(a.out, {{"subcommand", "synth"},
                       {"seed", a.seed},
                       {"n_train", a.n_train},
                       {"n_test", a.n_test},
                       {"min_words", a.min_words},
                       {"max_words", a.max_words}});
  const std::string train_manifest =
      pat::synth_corpus(train_cfg, dict, (fs::path(a.out) / "train").string());
  const std::string test_manifest =
      pat::synth_corpus(test_cfg, dict, (fs::path(a.out) / "test").string());
  std::printf("train manifest: %s (%d utterances)\n", train_manifest.c_str(),
              a.n_train);
  std::printf("test manifest:  %s (%d utterances)\n", test_manifest.c_str(),
              a.n_test);
}

struct TrainArgs {
  std::string manifest;
  std::string test_manifest;
  std::string out;
  std::string arch = "base";
  pat::TrainConfig cfg;
};

void run_train(const TrainArgs& a) {
  const pat::G2pDictionary dict = pat::G2pDictionary::bundled();
  const pat::Corpus corpus = pat::ingest(a.manifest, dict);
  write_config(a.out, {{"subcommand", "train"},
                       {"manifest", a.manifest},
                       {"arch", a.arch},
                       {"epochs", a.cfg.epochs},
                       {"lr", a.cfg.lr},
                       {"momentum", a.cfg.momentum},
                       {"batch", a.cfg.batch},
                       {"seed", a.cfg.seed},
                       {"noise_aug", a.cfg.noise_aug},
                       {"clip_norm", a.cfg.clip_norm},
                       {"clip_norm_end", a.cfg.clip_norm_end},
                       {"curriculum", a.cfg.curriculum_epochs}});

  pat::AcousticModel model = pat::make_model(a.arch, a.cfg.seed);
  const std::vector<double> losses = pat::train(&model, corpus.entries, a.cfg);
  for (std::size_t e = 0; e < losses.size(); ++e) {
    std::printf("epoch %2zu  mean loss %.4f\n", e + 1, losses[e]);
  }

  const std::string ckpt = (fs::path(a.out) / "model.json").string();
  pat::save_model(model, ckpt);
  std::printf("checkpoint: %s (model_id %s)\n", ckpt.c_str(),
              model.model_id().c_str());
  if (!a.test_manifest.empty()) {
    const pat::Corpus test = pat::ingest(a.test_manifest, dict);
    std::printf("held-out CER vs ground truth: %.4f\n",
                corpus_cer(model, test));
  }
}

struct StatsArgs {
  std::string manifest;
  std::string out;
  bool verbose = false;
};

void run_stats(const StatsArgs& a) {
  const pat::G2pDictionary dict = pat::G2pDictionary::bundled();
  const pat::Corpus corpus = pat::ingest(a.manifest, dict);
  std::printf("entries:        %zu\n", corpus.entries.size());
  std::printf("total duration: %.2f s\n", corpus.stats.total_duration);
  std::printf("total phonemes: %zu\n", corpus.stats.total_phonemes);
  std::printf("avg density D:  %.4f phonemes/s\n", corpus.stats.avg_density);
  if (a.verbose) {
    for (const pat::CorpusEntry& e : corpus.entries) {
      std::printf("  %-28s %6.2f s  %6.3f /s  peak %.3f  \"%s\"\n",
                  fs::path(e.audio_path).filename().c_str(), e.duration,
                  e.density, e.peak, e.transcript.c_str());
    }
  }
  if (!a.out.empty()) {
    write_config(a.out, {{"subcommand", "stats"}, {"manifest", a.manifest}});
    nlohmann::json j = {{"entries", corpus.entries.size()},
                        {"total_duration", corpus.stats.total_duration},
                        {"total_phonemes", corpus.stats.total_phonemes},
                        {"avg_density", corpus.stats.avg_density}};
    std::ofstream os((fs::path(a.out) / "stats.json").string());
    os << j.dump(2) << "\n";
  }
}

struct SampleArgs {
  std::string manifest;
  std::string out;
  double alpha = 0.2;
  std::size_t k = 10;
};

void run_sample(const SampleArgs& a) {
  const pat::G2pDictionary dict = pat::G2pDictionary::bundled();
  const pat::Corpus corpus = pat::ingest(a.manifest, dict);
  const std::vector<pat::CorpusEntry> filtered =
      pat::pdbs_filter(corpus.entries, corpus.stats, a.alpha);
  if (filtered.empty()) {
    throw pat::Error(pat::ErrorCode::kEmptySelection,
                     "no entry within alpha of the average density");
  }
  const pat::PickResult picked = pat::top_picker(filtered, a.k);
  if (picked.underfull) {
    std::fprintf(stderr, "warning: only %zu of %zu instances available\n",
                 picked.selected.size(), a.k);
  }

  write_config(a.out, {{"subcommand", "sample"},
                       {"manifest", a.manifest},
                       {"alpha", a.alpha},
                       {"k", a.k}});
  const std::string selected =
      (fs::path(a.out) / "selected.jsonl").string();
  std::ofstream os(selected);
  if (!os) {
    throw pat::Error(pat::ErrorCode::kUnwritablePath,
                     "cannot write " + selected);
  }
  for (const pat::CorpusEntry& e : picked.selected) {
    const nlohmann::json row = {
        {"audio", fs::absolute(e.audio_path).string()}, {"text", e.transcript}};
    os << row.dump() << "\n";
  }
  std::printf("selected %zu of %zu entries (D = %.4f, alpha = %.2f) -> %s\n",
              picked.selected.size(), corpus.entries.size(),
              corpus.stats.avg_density, a.alpha, selected.c_str());
}

struct AttackArgs {
  std::string manifest;
  std::string test_manifest;
  std::string model_path;
  std::string out;
  pat::AttackConfig cfg;
  double threshold = pat::kDefaultSuccessThreshold;
  int jobs = 1;
};

void run_attack(const AttackArgs& a) {
  const pat::G2pDictionary dict = pat::G2pDictionary::bundled();
  const pat::Corpus corpus = pat::ingest(a.manifest, dict);
  const pat::AcousticModel model = pat::load_model(a.model_path);

  nlohmann::json snapshot = attack_config_json(a.cfg);
  snapshot["subcommand"] = "attack";
  snapshot["manifest"] = a.manifest;
  snapshot["model"] = a.model_path;
  write_config(a.out, snapshot);

  pat::AttackResult result = pat::generate(model, corpus, a.cfg);
  const std::string noise_path = (fs::path(a.out) / "noise.wav").string();
  pat::save_noise(result.noise, noise_path);
  std::printf("noise: %s (epsilon %.5f, %.0f ms, %.1f s wall)\n",
              noise_path.c_str(), result.noise.epsilon,
              result.noise.meta.l_delta_p * 1000.0,
              result.report.wall_seconds);

  pat::AttackReport report = result.report;
  if (!a.test_manifest.empty()) {
    const pat::Corpus test = pat::ingest(a.test_manifest, dict);
    pat::AttackReport eval =
        pat::evaluate(model, result.noise, test, a.threshold, a.jobs);
    eval.wall_seconds = report.wall_seconds;
    eval.loss_history = std::move(report.loss_history);
    eval.constraint_checks = report.constraint_checks;
    eval.constraint_violations = report.constraint_violations;
    report = std::move(eval);
    std::printf("evaluation: SR %.3f, mean CER %.3f, mean dB %.2f\n",
                report.sr, report.mean_cer, report.mean_db);
  }
  pat::emit_report(report, (fs::path(a.out) / "report.json").string(),
                   (fs::path(a.out) / "report.txt").string());
}

struct EvalArgs {
  std::string noise_path;
  std::string model_path;
  std::string manifest;
  std::string out;
  double threshold = pat::kDefaultSuccessThreshold;
  int jobs = 1;
};

void run_eval(const EvalArgs& a) {
  const pat::G2pDictionary dict = pat::G2pDictionary::bundled();
  const pat::Corpus test = pat::ingest(a.manifest, dict);
  const pat::AcousticModel model = pat::load_model(a.model_path);
  const pat::NoiseClip noise = pat::load_noise(a.noise_path);

  write_config(a.out, {{"subcommand", "eval"},
                       {"noise", a.noise_path},
                       {"model", a.model_path},
                       {"manifest", a.manifest},
                       {"threshold", a.threshold}});

  pat::AttackReport report;
  if (!noise.meta.model_id.empty() &&
      noise.meta.model_id != model.model_id()) {
    std::printf("note: model differs from the noise's source; this is a "
                "transfer evaluation\n");
    report = pat::transfer_eval(model, noise, test, a.threshold, nullptr,
                                a.jobs);
  } else {
    report = pat::evaluate(model, noise, test, a.threshold, a.jobs);
  }
  pat::emit_report(report, (fs::path(a.out) / "report.json").string(),
                   (fs::path(a.out) / "report.txt").string());
  std::printf("SR %.3f, mean CER %.3f, mean dB %.2f over %zu utterances\n",
              report.sr, report.mean_cer, report.mean_db,
              report.records.size());
}

struct AblateArgs {
  std::string manifest;
  std::string test_manifest;
  std::string model_path;
  std::string out;
  pat::AttackConfig cfg;
  std::vector<std::uint64_t> seeds = {17, 18, 19};
  double threshold = pat::kDefaultSuccessThreshold;
  int jobs = 1;
};

void run_ablate(const AblateArgs& a) {
  const pat::G2pDictionary dict = pat::G2pDictionary::bundled();
  const pat::Corpus corpus = pat::ingest(a.manifest, dict);
  const pat::Corpus test = pat::ingest(a.test_manifest, dict);
  const pat::AcousticModel model = pat::load_model(a.model_path);

  nlohmann::json snapshot = attack_config_json(a.cfg);
  snapshot["subcommand"] = "ablate";
  snapshot["manifest"] = a.manifest;
  snapshot["test_manifest"] = a.test_manifest;
  snapshot["model"] = a.model_path;
  snapshot["seeds"] = a.seeds;
  write_config(a.out, snapshot);

  const struct {
    const char* name;
    bool pdbs, spni;
  } arms[] = {{"pdbs=off spni=off", false, false},
              {"pdbs=on  spni=off", true, false},
              {"pdbs=off spni=on", false, true},
              {"pdbs=on  spni=on", true, true}};

  std::vector<std::pair<std::string, pat::AttackReport>> rows;
  nlohmann::json arms_json = nlohmann::json::array();
  for (const auto& arm : arms) {
    pat::AttackReport mean;
    nlohmann::json arm_json = {{"name", arm.name},
                               {"pdbs", arm.pdbs},
                               {"spni", arm.spni},
                               {"runs", nlohmann::json::array()}};
    for (std::uint64_t seed : a.seeds) {
      pat::AttackConfig cfg = pat::ablation_arm(a.cfg, arm.pdbs, arm.spni);
      cfg.seed = seed;
      const pat::AttackResult result = pat::generate(model, corpus, cfg);
      const pat::AttackReport eval =
          pat::evaluate(model, result.noise, test, a.threshold, a.jobs);
      mean.sr += eval.sr;
      mean.mean_cer += eval.mean_cer;
      mean.mean_db += eval.mean_db;
      mean.wall_seconds += result.report.wall_seconds;
      arm_json["runs"].push_back({{"seed", seed},
                                  {"sr", eval.sr},
                                  {"mean_cer", eval.mean_cer},
                                  {"mean_db", eval.mean_db},
                                  {"wall_seconds", result.report.wall_seconds}});
      std::printf("%s seed %llu: SR %.3f CER %.3f (%.1f s)\n", arm.name,
                  static_cast<unsigned long long>(seed), eval.sr, eval.mean_cer,
                  result.report.wall_seconds);
    }
    const auto n = static_cast<double>(a.seeds.size());
    mean.sr /= n;
    mean.mean_cer /= n;
    mean.mean_db /= n;
    mean.wall_seconds /= n;
    arm_json["mean"] = {{"sr", mean.sr},
                        {"mean_cer", mean.mean_cer},
                        {"mean_db", mean.mean_db},
                        {"wall_seconds", mean.wall_seconds}};
    arms_json.push_back(arm_json);
    rows.emplace_back(arm.name, mean);
  }

  const std::string table = pat::render_table(rows);
  std::printf("\n%s", table.c_str());
  std::ofstream ts((fs::path(a.out) / "ablation.txt").string());
  ts << table;
  std::ofstream js((fs::path(a.out) / "ablation.json").string());
  js << nlohmann::json{{"schema", 1}, {"arms", arms_json}}.dump(2) << "\n";
}

struct SpectrogramArgs {
  std::string wav;
  std::string out;
};

void run_spectrogram(const SpectrogramArgs& a) {
  write_config(a.out, {{"subcommand", "spectrogram"}, {"wav", a.wav}});
  const pat::Waveform w =
      pat::resample_linear(pat::load_wav(a.wav), pat::kSampleRate);
  const std::string path = (fs::path(a.out) / "spectrogram.pgm").string();
  pat::export_spectrogram(w, path);
  std::printf("spectrogram: %s\n", path.c_str());
}

void add_attack_flags(CLI::App* cmd, pat::AttackConfig* cfg) {
  cmd->add_option("--epsilon", cfg->epsilon, "l-infinity noise bound");
  cmd->add_option("--l-delta-p", cfg->l_delta_p, "noise clip duration, s");
  cmd->add_option("--alpha", cfg->alpha, "density threshold, phonemes/s");
  cmd->add_option("--beta", cfg->beta, "sliding step, s");
  cmd->add_option("--k-instances", cfg->k_instances, "instances to sample");
  cmd->add_option("--epochs", cfg->epochs, "attack epochs");
  cmd->add_option("--iters", cfg->iters, "iterations per instance per epoch");
  cmd->add_option("--step-size", cfg->step_size, "ascent step (0: epsilon/10)");
  cmd->add_option("--rir-prob", cfg->rir_prob, "per-iteration room probability");
  cmd->add_flag("!--no-rir", cfg->rir_enabled, "disable room augmentation");
  cmd->add_option("--rir-file", cfg->rir_file, "fixed impulse response WAV");
  cmd->add_option("--crop-seconds", cfg->crop_seconds, "training window, s");
  cmd->add_flag("!--no-pdbs", cfg->pdbs_enabled,
                "optimize over the full corpus");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phoneme-level universal adversarial audio toolkit"};
  app.require_subcommand(1);

  SynthArgs synth;
  CLI::App* synth_cmd = app.add_subcommand("synth", "generate a corpus");
  synth_cmd->add_option("--out", synth.out, "output directory")->required();
  synth_cmd->add_option("--seed", synth.seed, "corpus seed");
  synth_cmd->add_option("--n-train", synth.n_train, "training utterances");
  synth_cmd->add_option("--n-test", synth.n_test, "test utterances");
  synth_cmd->add_option("--min-words", synth.min_words, "words per utterance");
  synth_cmd->add_option("--max-words", synth.max_words, "words per utterance");
  synth_cmd->callback([&] { run_synth(synth); });

  TrainArgs train;
  CLI::App* train_cmd = app.add_subcommand("train", "train a recognizer");
  train_cmd->add_option("--manifest", train.manifest, "training manifest")
      ->required();
  train_cmd->add_option("--test-manifest", train.test_manifest,
                        "held-out manifest for a final CER readout");
  train_cmd->add_option("--out", train.out, "output directory")->required();
  train_cmd->add_option("--arch", train.arch, "base or variant");
  train_cmd->add_option("--epochs", train.cfg.epochs, "training epochs");
  train_cmd->add_option("--lr", train.cfg.lr, "learning rate");
  train_cmd->add_option("--momentum", train.cfg.momentum, "SGD momentum");
  train_cmd->add_option("--batch", train.cfg.batch, "batch size");
  train_cmd->add_option("--seed", train.cfg.seed, "training seed");
  train_cmd->add_option("--noise-aug", train.cfg.noise_aug,
                        "Gaussian augmentation amplitude");
  train_cmd->add_option("--clip-norm", train.cfg.clip_norm,
                        "gradient norm ceiling (0: off)");
  train_cmd->add_option("--clip-norm-end", train.cfg.clip_norm_end,
                        "final-epoch norm ceiling (0: no decay)");
  train_cmd->add_option("--curriculum", train.cfg.curriculum_epochs,
                        "leading epochs ordered shortest-first");
  train_cmd->callback([&] { run_train(train); });

  StatsArgs stats;
  CLI::App* stats_cmd = app.add_subcommand("stats", "corpus statistics");
  stats_cmd->add_option("--manifest", stats.manifest, "manifest")->required();
  stats_cmd->add_option("--out", stats.out, "optional output directory");
  stats_cmd->add_flag("--verbose", stats.verbose, "per-entry rows");
  stats_cmd->callback([&] { run_stats(stats); });

  SampleArgs sample;
  CLI::App* sample_cmd =
      app.add_subcommand("sample", "density-balanced instance selection");
  sample_cmd->add_option("--manifest", sample.manifest, "manifest")->required();
  sample_cmd->add_option("--out", sample.out, "output directory")->required();
  sample_cmd->add_option("--alpha", sample.alpha, "density threshold");
  sample_cmd->add_option("--k", sample.k, "instances to keep");
  sample_cmd->callback([&] { run_sample(sample); });

  AttackArgs attack;
  CLI::App* attack_cmd = app.add_subcommand("attack", "optimize a noise clip");
  attack_cmd->add_option("--manifest", attack.manifest, "training manifest")
      ->required();
  attack_cmd->add_option("--test-manifest", attack.test_manifest,
                         "evaluate the result on this manifest");
  attack_cmd->add_option("--model", attack.model_path, "model checkpoint")
      ->required();
  attack_cmd->add_option("--out", attack.out, "output directory")->required();
  attack_cmd->add_option("--seed", attack.cfg.seed, "attack seed");
  attack_cmd->add_option("--threshold", attack.threshold, "success threshold");
  attack_cmd->add_option("--jobs", attack.jobs, "evaluation worker threads");
  add_attack_flags(attack_cmd, &attack.cfg);
  attack_cmd->callback([&] { run_attack(attack); });

  EvalArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "measure a noise clip");
  eval_cmd->add_option("--noise", eval.noise_path, "noise WAV (with sidecar)")
      ->required();
  eval_cmd->add_option("--model", eval.model_path, "model checkpoint")
      ->required();
  eval_cmd->add_option("--manifest", eval.manifest, "test manifest")
      ->required();
  eval_cmd->add_option("--out", eval.out, "output directory")->required();
  eval_cmd->add_option("--threshold", eval.threshold, "success threshold");
  eval_cmd->add_option("--jobs", eval.jobs, "worker threads");
  eval_cmd->callback([&] { run_eval(eval); });

  AblateArgs ablate;
  CLI::App* ablate_cmd =
      app.add_subcommand("ablate", "run the 2x2 sampling/sliding grid");
  ablate_cmd->add_option("--manifest", ablate.manifest, "training manifest")
      ->required();
  ablate_cmd->add_option("--test-manifest", ablate.test_manifest,
                         "test manifest")
      ->required();
  ablate_cmd->add_option("--model", ablate.model_path, "model checkpoint")
      ->required();
  ablate_cmd->add_option("--out", ablate.out, "output directory")->required();
  ablate_cmd->add_option("--seeds", ablate.seeds, "seeds to average over");
  ablate_cmd->add_option("--threshold", ablate.threshold, "success threshold");
  ablate_cmd->add_option("--jobs", ablate.jobs, "evaluation worker threads");
  add_attack_flags(ablate_cmd, &ablate.cfg);
  ablate_cmd->callback([&] { run_ablate(ablate); });

  SpectrogramArgs spec;
  CLI::App* spec_cmd = app.add_subcommand("spectrogram", "export a PGM image");
  spec_cmd->add_option("--wav", spec.wav, "input WAV")->required();
  spec_cmd->add_option("--out", spec.out, "output directory")->required();
  spec_cmd->callback([&] { run_spectrogram(spec); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const pat::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
