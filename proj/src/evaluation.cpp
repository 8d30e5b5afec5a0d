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

#include "pat/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pat/error.hpp"
#include "pat/parallel.hpp"

namespace pat {

namespace {

// cer() with the degenerate references the metric itself refuses: a model
// whose clean output is empty scores 0 when the attack also yields empty
// and 1 otherwise.
double cer_vs_clean_output(const std::string& clean, const std::string& adv) {
  if (clean.empty()) return adv.empty() ? 0.0 : 1.0;
  return cer(clean, adv);
}

AttackReport run_eval(const AcousticModel& model, const NoiseClip& noise,
                      const Corpus& test_corpus, double success_threshold,
                      int jobs) {
  if (test_corpus.entries.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "evaluate on empty corpus");
  }
  AttackReport report;
  report.success_threshold = success_threshold;
  report.model_id = model.model_id();
  report.config_hash = noise.meta.config_hash;

  const SlideSchedule deploy{noise.meta.beta, 0};
  report.records.resize(test_corpus.entries.size());
  parallel_for(test_corpus.entries.size(), jobs, [&](std::size_t i) {
    const CorpusEntry& e = test_corpus.entries[i];
    EvalRecord rec;
    rec.id = e.audio_path;
    rec.reference = e.transcript;
    rec.clean = greedy_decode(forward(model, log_mel_forward(e.audio)));

    const Waveform noisy = mix(e.audio, inject(e.audio, noise, deploy));
    rec.adversarial = greedy_decode(forward(model, log_mel_forward(noisy)));
    rec.cer_vs_clean = cer_vs_clean_output(rec.clean, rec.adversarial);
    rec.success = rec.cer_vs_clean >= success_threshold;
    rec.db = peak_amplitude(noise.delta) > 0.0
                 ? db_relative(noise.delta, e.audio).value
                 : 0.0;
    report.records[i] = std::move(rec);
  });

  double cer_sum = 0.0, db_sum = 0.0;
  std::size_t successes = 0;
  for (const EvalRecord& rec : report.records) {
    cer_sum += rec.cer_vs_clean;
    db_sum += rec.db;
    successes += rec.success ? 1 : 0;
  }
  const auto n = static_cast<double>(report.records.size());
  report.sr = static_cast<double>(successes) / n;
  report.mean_cer = cer_sum / n;
  report.mean_db = db_sum / n;
  return report;
}

}  // namespace

double cer(const std::string& reference, const std::string& hypothesis) {
  if (reference.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cer with empty reference");
  }
  const std::size_t n = reference.size(), m = hypothesis.size();
  std::vector<std::size_t> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t sub =
          prev[j - 1] + (reference[i - 1] == hypothesis[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return static_cast<double>(prev[m]) / static_cast<double>(n);
}

AttackReport evaluate(const AcousticModel& model, const NoiseClip& noise,
                      const Corpus& test_corpus, double success_threshold,
                      int jobs) {
  return run_eval(model, noise, test_corpus, success_threshold, jobs);
}

AttackReport transfer_eval(const AcousticModel& other_model,
                           const NoiseClip& noise, const Corpus& test_corpus,
                           double success_threshold, std::string* warning,
                           int jobs) {
  if (!noise.meta.model_id.empty() &&
      other_model.model_id() == noise.meta.model_id) {
    const std::string msg =
        "transfer_eval target equals the noise's source model (" +
        noise.meta.model_id + "); this is a plain evaluation";
    if (warning != nullptr) *warning = msg;
    std::fprintf(stderr, "warning: %s\n", msg.c_str());
  }
  return run_eval(other_model, noise, test_corpus, success_threshold, jobs);
}

std::string render_table(
    const std::vector<std::pair<std::string, AttackReport>>& rows) {
  std::ostringstream os;
  os << "configuration                    Time(s)      dB      SR     CER\n";
  for (const auto& [name, report] : rows) {
    char line[160];
    std::snprintf(line, sizeof(line), "%-30s %9.1f %7.2f %7.3f %7.3f\n",
                  name.c_str(), report.wall_seconds, report.mean_db, report.sr,
                  report.mean_cer);
    os << line;
  }
  return os.str();
}

void emit_report(const AttackReport& report, const std::string& json_path,
                 const std::string& table_path) {
  nlohmann::json records = nlohmann::json::array();
  for (const EvalRecord& r : report.records) {
    records.push_back({{"id", r.id},
                       {"reference", r.reference},
                       {"clean", r.clean},
                       {"adversarial", r.adversarial},
                       {"cer_vs_clean", r.cer_vs_clean},
                       {"success", r.success},
                       {"db", r.db}});
  }
  const nlohmann::json j = {{"schema", 1},
                            {"sr", report.sr},
                            {"mean_cer", report.mean_cer},
                            {"mean_db", report.mean_db},
                            {"success_threshold", report.success_threshold},
                            {"wall_seconds", report.wall_seconds},
                            {"config_hash", report.config_hash},
                            {"model_id", report.model_id},
                            {"constraint_checks", report.constraint_checks},
                            {"constraint_violations", report.constraint_violations},
                            {"loss_history", report.loss_history},
                            {"records", records}};
  std::ofstream os(json_path);
  if (!os) {
    throw Error(ErrorCode::kUnwritablePath, "cannot write report: " + json_path);
  }
  os << j.dump(2) << "\n";

  std::ofstream ts(table_path);
  if (!ts) {
    throw Error(ErrorCode::kUnwritablePath, "cannot write table: " + table_path);
  }
  ts << render_table({{report.config_hash.empty() ? "run" : report.config_hash,
                       report}});
}

AttackReport load_report(const std::string& json_path) {
  std::ifstream is(json_path);
  if (!is) {
    throw Error(ErrorCode::kFileNotFound, "cannot open report: " + json_path);
  }
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                "bad report " + json_path + ": " + e.what());
  }
  AttackReport report;
  try {
    if (j.at("schema").get<int>() != 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  "unsupported report schema in " + json_path);
    }
    report.sr = j.at("sr").get<double>();
    report.mean_cer = j.at("mean_cer").get<double>();
    report.mean_db = j.at("mean_db").get<double>();
    report.success_threshold = j.at("success_threshold").get<double>();
    report.wall_seconds = j.at("wall_seconds").get<double>();
    report.config_hash = j.at("config_hash").get<std::string>();
    report.model_id = j.at("model_id").get<std::string>();
    report.constraint_checks = j.at("constraint_checks").get<std::size_t>();
    report.constraint_violations =
        j.at("constraint_violations").get<std::size_t>();
    report.loss_history = j.at("loss_history").get<std::vector<double>>();
    for (const nlohmann::json& r : j.at("records")) {
      EvalRecord rec;
      rec.id = r.at("id").get<std::string>();
      rec.reference = r.at("reference").get<std::string>();
      rec.clean = r.at("clean").get<std::string>();
      rec.adversarial = r.at("adversarial").get<std::string>();
      rec.cer_vs_clean = r.at("cer_vs_clean").get<double>();
      rec.success = r.at("success").get<bool>();
      rec.db = r.at("db").get<double>();
      report.records.push_back(std::move(rec));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                "malformed report " + json_path + ": " + e.what());
  }
  return report;
}

}  // namespace pat
