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

#include <map>
#include <string>
#include <vector>

namespace pat {

using PhonemeSequence = std::vector<std::string>;

// The 39-symbol stress-stripped ARPAbet inventory, in canonical order.
const std::vector<std::string>& phoneme_inventory();

// Word -> phoneme lookup with a per-letter fallback for words outside the
// lexicon. Lookups are case-insensitive; the dictionary is immutable after
// construction and safe to share across threads.
class G2pDictionary {
 public:
  // The compiled-in ~200-word lexicon (covers the synthesizer vocabulary).
  static G2pDictionary bundled();

  // Parses `WORD<TAB>PH1 PH2 ...` lines; rejects symbols outside the
  // inventory. The letter fallback is always attached.
  static G2pDictionary load_file(const std::string& path);

  // Lowercased word -> pronunciation, or nullptr when not in the lexicon.
  const PhonemeSequence* find(const std::string& word) const;

  // Fallback pronunciation built letter by letter; apostrophes are skipped.
  PhonemeSequence fallback(const std::string& word) const;

  std::size_t size() const { return entries_.size(); }

 private:
  static G2pDictionary parse(const std::string& text, const std::string& origin);

  std::map<std::string, PhonemeSequence> entries_;
};

// Per word: dictionary hit, else letter fallback; word results concatenated
// in transcript order. Only letters, apostrophes, and spaces are accepted.
PhonemeSequence to_phonemes(const G2pDictionary& dict,
                            const std::string& transcript);

// count(to_phonemes(transcript)) / duration, in phonemes per second.
double phoneme_density(const G2pDictionary& dict, const std::string& transcript,
                       double duration_seconds);

// Raw text of the compiled-in lexicon, in the dictionary file format.
const char* bundled_lexicon_text();

// The 60-word vocabulary the corpus synthesizer draws from (all present in
// the bundled lexicon).
const std::vector<std::string>& default_vocab();

}  // namespace pat
