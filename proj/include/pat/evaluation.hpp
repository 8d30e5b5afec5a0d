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

#include <string>
#include <utility>
#include <vector>

#include "pat/corpus.hpp"
#include "pat/model.hpp"
#include "pat/noise.hpp"

namespace pat {

inline constexpr double kDefaultSuccessThreshold = 0.5;

struct EvalRecord {
  std::string id;             // audio path
  std::string reference;      // ground-truth transcript
  std::string clean;          // model output on the clean utterance
  std::string adversarial;    // model output under the noise
  double cer_vs_clean = 0.0;
  bool success = false;       // cer_vs_clean >= threshold
  double db = 0.0;            // noise level relative to this utterance
};

// Shared by the optimizer (loss history, wall clock, constraint counters)
// and the evaluator (records and metric aggregates).
struct AttackReport {
  std::vector<EvalRecord> records;
  double sr = 0.0;
  double mean_cer = 0.0;
  double mean_db = 0.0;
  double success_threshold = kDefaultSuccessThreshold;
  double wall_seconds = 0.0;
  std::string config_hash;
  std::string model_id;
  std::size_t constraint_checks = 0;
  std::size_t constraint_violations = 0;
  std::vector<double> loss_history;  // per optimizer iteration
};

// Character-level Levenshtein distance (unit costs, spaces count) divided
// by the reference length. The reference must be nonempty.
double cer(const std::string& reference, const std::string& hypothesis);

// Deployment-side measurement: the noise is tiled at phase zero over each
// test utterance (no iteration index exists outside the optimizer), mixed,
// and decoded; cer_vs_clean compares against the model's own clean output.
// Utterances fan out over `jobs` threads; the result is order-stable.
AttackReport evaluate(const AcousticModel& model, const NoiseClip& noise,
                      const Corpus& test_corpus,
                      double success_threshold = kDefaultSuccessThreshold,
                      int jobs = 1);

// Same measurement against a different model than the clip was optimized
// on. Running it against the same model works but flags *warning.
AttackReport transfer_eval(const AcousticModel& other_model,
                           const NoiseClip& noise, const Corpus& test_corpus,
                           double success_threshold = kDefaultSuccessThreshold,
                           std::string* warning = nullptr, int jobs = 1);

// One table line per labeled report: Time / dB / SR / CER.
std::string render_table(
    const std::vector<std::pair<std::string, AttackReport>>& rows);

// Writes the full report as JSON (schema 1) and a one-row plain-text table.
void emit_report(const AttackReport& report, const std::string& json_path,
                 const std::string& table_path);

AttackReport load_report(const std::string& json_path);

}  // namespace pat
