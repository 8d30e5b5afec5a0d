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

#include "pat/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pat/error.hpp"

namespace pat {

namespace {

// rank[i] = number of entries strictly below entry i; ties share a rank.
std::vector<std::size_t> ranks(const std::vector<double>& values) {
  std::vector<std::size_t> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::size_t below = 0;
    for (double v : values) {
      if (v < values[i]) ++below;
    }
    out[i] = below;
  }
  return out;
}

}  // namespace

std::vector<CorpusEntry> pdbs_filter(const std::vector<CorpusEntry>& entries,
                                     const DatasetStats& stats, double alpha) {
  std::vector<CorpusEntry> out;
  for (const CorpusEntry& e : entries) {
    if (std::abs(stats.avg_density - e.density) <= alpha) out.push_back(e);
  }
  return out;
}

PickResult top_picker(const std::vector<CorpusEntry>& filtered, std::size_t k) {
  if (filtered.empty()) {
    throw Error(ErrorCode::kEmptySelection, "top_picker on empty selection");
  }
  std::vector<double> durations(filtered.size()), peaks(filtered.size());
  for (std::size_t i = 0; i < filtered.size(); ++i) {
    durations[i] = filtered[i].duration;
    peaks[i] = filtered[i].peak;
  }
  const std::vector<std::size_t> rd = ranks(durations);
  const std::vector<std::size_t> rp = ranks(peaks);

  std::vector<std::size_t> order(filtered.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     const std::size_t sa = rd[a] + rp[a], sb = rd[b] + rp[b];
                     if (sa != sb) return sa > sb;
                     return a < b;  // earlier manifest order wins ties
                   });

  PickResult result;
  result.underfull = filtered.size() < k;
  const std::size_t keep = std::min(k, filtered.size());
  for (std::size_t i = 0; i < keep; ++i) {
    result.selected.push_back(filtered[order[i]]);
  }
  return result;
}

}  // namespace pat
