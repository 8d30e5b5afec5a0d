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

#include "pat/g2p.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "pat/error.hpp"

namespace pat {

namespace {

std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

const std::set<std::string>& inventory_set() {
  static const std::set<std::string> set(phoneme_inventory().begin(),
                                         phoneme_inventory().end());
  return set;
}

// Most-common letter-to-sound mapping; 'x' expands to two phonemes.
const PhonemeSequence& letter_phonemes(char c) {
  static const std::map<char, PhonemeSequence> table = {
      {'a', {"AE"}}, {'b', {"B"}},  {'c', {"K"}},      {'d', {"D"}},
      {'e', {"EH"}}, {'f', {"F"}},  {'g', {"G"}},      {'h', {"HH"}},
      {'i', {"IH"}}, {'j', {"JH"}}, {'k', {"K"}},      {'l', {"L"}},
      {'m', {"M"}},  {'n', {"N"}},  {'o', {"AA"}},     {'p', {"P"}},
      {'q', {"K"}},  {'r', {"R"}},  {'s', {"S"}},      {'t', {"T"}},
      {'u', {"AH"}}, {'v', {"V"}},  {'w', {"W"}},      {'x', {"K", "S"}},
      {'y', {"Y"}},  {'z', {"Z"}}};
  return table.at(c);
}

}  // namespace

const std::vector<std::string>& phoneme_inventory() {
  static const std::vector<std::string> symbols = {
      "AA", "AE", "AH", "AO", "AW", "AY", "B",  "CH", "D",  "DH",
      "EH", "ER", "EY", "F",  "G",  "HH", "IH", "IY", "JH", "K",
      "L",  "M",  "N",  "NG", "OW", "OY", "P",  "R",  "S",  "SH",
      "T",  "TH", "UH", "UW", "V",  "W",  "Y",  "Z",  "ZH"};
  return symbols;
}

G2pDictionary G2pDictionary::parse(const std::string& text,
                                   const std::string& origin) {
  G2pDictionary dict;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  origin + ":" + std::to_string(lineno) +
                      ": expected WORD<TAB>PH1 PH2 ...");
    }
    const std::string word = lower(line.substr(0, tab));
    PhonemeSequence seq;
    std::istringstream ps(line.substr(tab + 1));
    std::string sym;
    while (ps >> sym) {
      if (inventory_set().count(sym) == 0) {
        throw Error(ErrorCode::kInvalidArgument,
                    origin + ":" + std::to_string(lineno) +
                        ": unknown phoneme symbol '" + sym + "'");
      }
      seq.push_back(sym);
    }
    if (seq.empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  origin + ":" + std::to_string(lineno) + ": empty pronunciation");
    }
    dict.entries_[word] = std::move(seq);
  }
  return dict;
}

G2pDictionary G2pDictionary::bundled() {
  return parse(bundled_lexicon_text(), "<bundled lexicon>");
}

G2pDictionary G2pDictionary::load_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) {
    throw Error(ErrorCode::kFileNotFound, "cannot open dictionary: " + path);
  }
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse(buf.str(), path);
}

const PhonemeSequence* G2pDictionary::find(const std::string& word) const {
  const auto it = entries_.find(lower(word));
  return it == entries_.end() ? nullptr : &it->second;
}

PhonemeSequence G2pDictionary::fallback(const std::string& word) const {
  PhonemeSequence seq;
  for (char c : lower(word)) {
    if (c == '\'') continue;
    const PhonemeSequence& ph = letter_phonemes(c);
    seq.insert(seq.end(), ph.begin(), ph.end());
  }
  return seq;
}

PhonemeSequence to_phonemes(const G2pDictionary& dict,
                            const std::string& transcript) {
  for (char c : transcript) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    c == '\'' || c == ' ';
    if (!ok) {
      throw Error(ErrorCode::kBadTranscriptChar,
                  std::string("transcript character out of range: '") + c + "'");
    }
  }
  PhonemeSequence out;
  std::istringstream is(transcript);
  std::string word;
  while (is >> word) {
    const PhonemeSequence* hit = dict.find(word);
    const PhonemeSequence seq = hit ? *hit : dict.fallback(word);
    out.insert(out.end(), seq.begin(), seq.end());
  }
  return out;
}

double phoneme_density(const G2pDictionary& dict, const std::string& transcript,
                       double duration_seconds) {
  if (duration_seconds <= 0.0) {
    throw Error(ErrorCode::kInvalidArgument,
                "phoneme_density: nonpositive duration");
  }
  return static_cast<double>(to_phonemes(dict, transcript).size()) /
         duration_seconds;
}

}  // namespace pat
