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

namespace pat {

namespace {

// Stress-stripped ARPAbet pronunciations in the dictionary file format.
// The synthesizer vocabulary (see default_vocab below) is chosen so that
// spelling tracks sound one-to-one across the whole list: every letter
// corresponds to the same phoneme wherever it appears ('a' is always AE,
// 'o' always AA, 'sh' always SH, and so on), and the ambiguous letters
// c/k/q/x/y never occur. A recognizer trained on it can generalize from
// frame-level acoustics alone instead of memorizing per-word spellings.
// The remaining entries cover common function words and a few domain terms
// for user-supplied transcripts.
const char kLexicon[] =
    "ant\tAE N T\n"
    "bat\tB AE T\n"
    "fan\tF AE N\n"
    "gas\tG AE S\n"
    "hat\tHH AE T\n"
    "jam\tJH AE M\n"
    "map\tM AE P\n"
    "nap\tN AE P\n"
    "pad\tP AE D\n"
    "pan\tP AE N\n"
    "rat\tR AE T\n"
    "sand\tS AE N D\n"
    "tag\tT AE G\n"
    "bed\tB EH D\n"
    "hen\tHH EH N\n"
    "jet\tJH EH T\n"
    "leg\tL EH G\n"
    "men\tM EH N\n"
    "net\tN EH T\n"
    "peg\tP EH G\n"
    "pen\tP EH N\n"
    "red\tR EH D\n"
    "ten\tT EH N\n"
    "vet\tV EH T\n"
    "web\tW EH B\n"
    "bag\tB AE G\n"
    "mat\tM AE T\n"
    "bin\tB IH N\n"
    "dig\tD IH G\n"
    "dim\tD IH M\n"
    "fig\tF IH G\n"
    "fish\tF IH SH\n"
    "lid\tL IH D\n"
    "lip\tL IH P\n"
    "pig\tP IH G\n"
    "pin\tP IH N\n"
    "rib\tR IH B\n"
    "ship\tSH IH P\n"
    "sip\tS IH P\n"
    "wig\tW IH G\n"
    "zip\tZ IH P\n"
    "dot\tD AA T\n"
    "frog\tF R AA G\n"
    "hop\tHH AA P\n"
    "job\tJH AA B\n"
    "log\tL AA G\n"
    "mop\tM AA P\n"
    "nod\tN AA D\n"
    "pod\tP AA D\n"
    "pot\tP AA T\n"
    "rod\tR AA D\n"
    "bud\tB AH D\n"
    "bus\tB AH S\n"
    "gum\tG AH M\n"
    "gut\tG AH T\n"
    "hum\tHH AH M\n"
    "mud\tM AH D\n"
    "nut\tN AH T\n"
    "pup\tP AH P\n"
    "rug\tR AH G\n"
    "sun\tS AH N\n"
    "tub\tT AH B\n"
    "bee\tB IY\n"
    "seed\tS IY D\n"
    "tree\tT R IY\n"
    "food\tF UW D\n"
    "moon\tM UW N\n"
    "cat\tK AE T\n"
    "dog\tD AO G\n"
    "bird\tB ER D\n"
    "rock\tR AA K\n"
    "lake\tL EY K\n"
    "rain\tR EY N\n"
    "snow\tS N OW\n"
    "wind\tW IH N D\n"
    "fire\tF AY ER\n"
    "star\tS T AA R\n"
    "boat\tB OW T\n"
    "road\tR OW D\n"
    "hill\tHH IH L\n"
    "leaf\tL IY F\n"
    "bear\tB EH R\n"
    "wolf\tW UH L F\n"
    "deer\tD IH R\n"
    "mouse\tM AW S\n"
    "horse\tHH AO R S\n"
    "sheep\tSH IY P\n"
    "goat\tG OW T\n"
    "duck\tD AH K\n"
    "cow\tK AW\n"
    "fox\tF AA K S\n"
    "owl\tAW L\n"
    "cup\tK AH P\n"
    "dish\tD IH SH\n"
    "fork\tF AO R K\n"
    "knife\tN AY F\n"
    "spoon\tS P UW N\n"
    "bowl\tB OW L\n"
    "plate\tP L EY T\n"
    "bread\tB R EH D\n"
    "milk\tM IH L K\n"
    "salt\tS AO L T\n"
    "rice\tR AY S\n"
    "bean\tB IY N\n"
    "corn\tK AO R N\n"
    "cake\tK EY K\n"
    "pie\tP AY\n"
    "tea\tT IY\n"
    "egg\tEH G\n"
    "plum\tP L AH M\n"
    "the\tDH AH\n"
    "a\tAH\n"
    "an\tAE N\n"
    "and\tAE N D\n"
    "of\tAH V\n"
    "to\tT UW\n"
    "in\tIH N\n"
    "is\tIH Z\n"
    "it\tIH T\n"
    "you\tY UW\n"
    "that\tDH AE T\n"
    "he\tHH IY\n"
    "was\tW AA Z\n"
    "for\tF AO R\n"
    "on\tAA N\n"
    "are\tAA R\n"
    "as\tAE Z\n"
    "with\tW IH DH\n"
    "his\tHH IH Z\n"
    "they\tDH EY\n"
    "i\tAY\n"
    "at\tAE T\n"
    "be\tB IY\n"
    "this\tDH IH S\n"
    "have\tHH AE V\n"
    "from\tF R AH M\n"
    "or\tAO R\n"
    "one\tW AH N\n"
    "had\tHH AE D\n"
    "by\tB AY\n"
    "word\tW ER D\n"
    "but\tB AH T\n"
    "not\tN AA T\n"
    "what\tW AH T\n"
    "all\tAO L\n"
    "were\tW ER\n"
    "we\tW IY\n"
    "when\tW EH N\n"
    "your\tY AO R\n"
    "can\tK AE N\n"
    "said\tS EH D\n"
    "there\tDH EH R\n"
    "use\tY UW Z\n"
    "each\tIY CH\n"
    "which\tW IH CH\n"
    "she\tSH IY\n"
    "do\tD UW\n"
    "how\tHH AW\n"
    "their\tDH EH R\n"
    "if\tIH F\n"
    "will\tW IH L\n"
    "up\tAH P\n"
    "other\tAH DH ER\n"
    "about\tAH B AW T\n"
    "out\tAW T\n"
    "many\tM EH N IY\n"
    "then\tDH EH N\n"
    "them\tDH EH M\n"
    "these\tDH IY Z\n"
    "so\tS OW\n"
    "some\tS AH M\n"
    "her\tHH ER\n"
    "would\tW UH D\n"
    "make\tM EY K\n"
    "like\tL AY K\n"
    "him\tHH IH M\n"
    "into\tIH N T UW\n"
    "time\tT AY M\n"
    "has\tHH AE Z\n"
    "look\tL UH K\n"
    "two\tT UW\n"
    "more\tM AO R\n"
    "write\tR AY T\n"
    "go\tG OW\n"
    "see\tS IY\n"
    "number\tN AH M B ER\n"
    "no\tN OW\n"
    "way\tW EY\n"
    "could\tK UH D\n"
    "people\tP IY P AH L\n"
    "my\tM AY\n"
    "than\tDH AE N\n"
    "first\tF ER S T\n"
    "water\tW AO T ER\n"
    "been\tB IH N\n"
    "call\tK AO L\n"
    "who\tHH UW\n"
    "its\tIH T S\n"
    "now\tN AW\n"
    "find\tF AY N D\n"
    "long\tL AO NG\n"
    "down\tD AW N\n"
    "day\tD EY\n"
    "did\tD IH D\n"
    "get\tG EH T\n"
    "come\tK AH M\n"
    "made\tM EY D\n"
    "may\tM EY\n"
    "part\tP AA R T\n"
    "sound\tS AW N D\n"
    "voice\tV OY S\n"
    "speech\tS P IY CH\n"
    "noise\tN OY Z\n"
    "audio\tAO D IY OW\n"
    "signal\tS IH G N AH L\n"
    "model\tM AA D AH L\n"
    "attack\tAH T AE K\n"
    "phone\tF OW N\n"
    "test\tT EH S T\n"
    "train\tT R EY N\n"
    "data\tD EY T AH\n"
    "green\tG R IY N\n"
    "blue\tB L UW\n"
    "black\tB L AE K\n"
    "white\tW AY T\n"
    "small\tS M AO L\n"
    "big\tB IH G\n"
    "old\tOW L D\n"
    "new\tN UW\n"
    "good\tG UH D\n"
    "bad\tB AE D\n"
    "hot\tHH AA T\n"
    "cold\tK OW L D\n"
    "fast\tF AE S T\n"
    "slow\tS L OW\n"
    "high\tHH AY\n"
    "low\tL OW\n"
    "run\tR AH N\n"
    "walk\tW AO K\n"
    "jump\tJH AH M P\n"
    "swim\tS W IH M\n"
    "fly\tF L AY\n"
    "sing\tS IH NG\n"
    "read\tR IY D\n"
    "play\tP L EY\n"
    "work\tW ER K\n"
    "sleep\tS L IY P\n"
    "eat\tIY T\n"
    "drink\tD R IH NG K\n"
    "open\tOW P AH N\n"
    "close\tK L OW Z\n"
    "stop\tS T AA P\n"
    "start\tS T AA R T\n";

}  // namespace

const char* bundled_lexicon_text() { return kLexicon; }

const std::vector<std::string>& default_vocab() {
  static const std::vector<std::string> vocab = {
      "ant", "bag", "bat", "fan", "gas",  "hat", "jam", "map",
      "mat", "nap", "pad", "pan", "rat",  "sand", "tag", "bed",
      "hen", "jet", "leg", "men", "net",  "peg", "pen", "red",
      "ten", "vet", "web", "bin", "dig",  "dim", "fig", "lid",
      "lip", "pig", "pin", "rib", "sip",  "wig", "zip", "dot",
      "frog", "hop", "job", "log", "mop", "nod", "pod", "pot",
      "rod", "bud", "bus", "gum", "gut",  "hum", "mud", "nut",
      "pup", "rug", "sun", "tub"};
  return vocab;
}

}  // namespace pat
