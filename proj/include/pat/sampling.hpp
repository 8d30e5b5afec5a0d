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

#include <cstddef>
#include <vector>

#include "pat/corpus.hpp"

namespace pat {

struct SamplingConfig {
  double alpha = 0.2;  // phonemes/second deviation threshold
  std::size_t k = 10;  // instances to keep
};

// Keeps exactly the entries with |avg_density - density| <= alpha, in their
// original order. May return an empty list.
std::vector<CorpusEntry> pdbs_filter(const std::vector<CorpusEntry>& entries,
                                     const DatasetStats& stats, double alpha);

struct PickResult {
  std::vector<CorpusEntry> selected;  // best-first by score
  bool underfull = false;             // fewer than k survived the filter
};

// Scores each filtered entry by rank(duration) + rank(peak) (higher is
// better; ranks over the filtered list, ties sharing the lower rank) and
// keeps the k best. All ties break toward earlier manifest order.
PickResult top_picker(const std::vector<CorpusEntry>& filtered, std::size_t k);

}  // namespace pat
