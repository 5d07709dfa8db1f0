// Copyright 2026 The lmmatch Authors
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

#include "lmmatch/french_stemmer.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "lmmatch/utf8.hpp"

namespace lmmatch {
namespace {

using Word = std::u32string;
using Suffix = std::u32string_view;

bool is_vowel(char32_t c) {
  switch (c) {
    case U'a': case U'e': case U'i': case U'o': case U'u': case U'y':
    case U'â': case U'à': case U'ë': case U'é': case U'ê':
    case U'è': case U'ï': case U'î': case U'ô': case U'û':
    case U'ù':
      return true;
    default:
      return false;
  }
}

bool keeps_s(char32_t c) {
  return c == U'a' || c == U'i' || c == U'o' || c == U'u' || c == U'è' || c == U's';
}

constexpr std::array<Suffix, 43> kStandardSuffixes = {
    U"ance", U"iqUe", U"isme", U"able", U"iste", U"eux", U"ances", U"iqUes", U"ismes",
    U"ables", U"istes", U"atrice", U"ateur", U"ation", U"atrices", U"ateurs", U"ations",
    U"logie", U"logies", U"usion", U"ution", U"usions", U"utions", U"ence", U"ences",
    U"ement", U"ements", U"ité", U"ités", U"if", U"ive", U"ifs", U"ives",
    U"eaux", U"aux", U"euse", U"euses", U"issement", U"issements", U"amment", U"emment",
    U"ment", U"ments"};

constexpr std::array<Suffix, 35> kIVerbSuffixes = {
    U"îmes", U"ît", U"îtes", U"i", U"ie", U"ies", U"ir", U"ira", U"irai",
    U"iraIent", U"irais", U"irait", U"iras", U"irent", U"irez", U"iriez", U"irions",
    U"irons", U"iront", U"is", U"issaIent", U"issais", U"issait", U"issant", U"issante",
    U"issantes", U"issants", U"isse", U"issent", U"isses", U"issez", U"issiez",
    U"issions", U"issons", U"it"};

constexpr std::array<Suffix, 19> kVerbDeleteSuffixes = {
    U"é", U"ée", U"ées", U"és", U"èrent", U"er", U"era", U"erai",
    U"eraIent", U"erais", U"erait", U"eras", U"erez", U"eriez", U"erions", U"erons",
    U"eront", U"ez", U"iez"};

constexpr std::array<Suffix, 38> kVerbSuffixes = {
    U"ions", U"é", U"ée", U"ées", U"és", U"èrent", U"er", U"era", U"erai",
    U"eraIent", U"erais", U"erait", U"eras", U"erez", U"eriez", U"erions", U"erons",
    U"eront", U"ez", U"iez", U"âmes", U"ât", U"âtes", U"a", U"ai", U"aIent", U"ais",
    U"ait", U"ant", U"ante", U"antes", U"ants", U"as", U"asse", U"assent", U"asses",
    U"assiez", U"assions"};

constexpr std::array<Suffix, 7> kResidualSuffixes = {
    U"ion", U"ier", U"ière", U"Ier", U"Ière", U"e", U"ë"};

template <typename List>
bool contains(const List& list, Suffix s) {
  return std::find(list.begin(), list.end(), s) != list.end();
}

class Stemmer {
 public:
  explicit Stemmer(Word word) : w_(std::move(word)) {}

  Word run() {
    prelude();
    mark_regions();
    const bool handled = standard_suffix() || i_verb_suffix() || verb_suffix();
    if (handled) {
      if (!w_.empty() && w_.back() == U'Y') {
        w_.back() = U'i';
      } else if (!w_.empty() && w_.back() == U'ç') {
        w_.back() = U'c';
      }
    } else {
      residual_suffix();
    }
    un_double();
    un_accent();
    postlude();
    return std::move(w_);
  }

 private:
  bool ends_with(Suffix s) const {
    return w_.size() >= s.size() && Suffix(w_).substr(w_.size() - s.size()) == s;
  }

  std::size_t start_of(Suffix s) const { return w_.size() - s.size(); }

  // Longest suffix from `list` lying entirely at or after `limit`.
  template <typename List>
  std::optional<Suffix> longest_suffix(const List& list, std::size_t limit) const {
    std::optional<Suffix> best;
    for (Suffix s : list) {
      if (!ends_with(s) || start_of(s) < limit) continue;
      if (!best || s.size() > best->size()) best = s;
    }
    return best;
  }

  bool in_rv(std::size_t pos) const { return pos >= pv_; }
  bool in_r1(std::size_t pos) const { return pos >= p1_; }
  bool in_r2(std::size_t pos) const { return pos >= p2_; }

  void replace_tail(std::size_t start, Suffix with) { w_.replace(start, Word::npos, with); }
  void erase_tail(std::size_t start) { w_.erase(start); }

  void prelude() {
    const std::size_t n = w_.size();
    for (std::size_t p = 0; p < n; ++p) {
      const char32_t c = w_[p];
      if (is_vowel(c) && p + 1 < n) {
        const char32_t next = w_[p + 1];
        const bool vowel_after = p + 2 < n && is_vowel(w_[p + 2]);
        if (next == U'u' && vowel_after) {
          w_[p + 1] = U'U';
          continue;
        }
        if (next == U'i' && vowel_after) {
          w_[p + 1] = U'I';
          continue;
        }
        if (next == U'y') {
          w_[p + 1] = U'Y';
          continue;
        }
      }
      if (c == U'y' && p + 1 < n && is_vowel(w_[p + 1])) {
        w_[p] = U'Y';
        continue;
      }
      if (c == U'q' && p + 1 < n && w_[p + 1] == U'u') {
        w_[p + 1] = U'U';
      }
    }
  }

  void mark_regions() {
    const std::size_t n = w_.size();
    pv_ = p1_ = p2_ = n;
    const Suffix head = Suffix(w_).substr(0, 3);
    if (n >= 3 && is_vowel(w_[0]) && is_vowel(w_[1])) {
      pv_ = 3;
    } else if (n >= 3 && (head == U"par" || head == U"col" || head == U"tap")) {
      pv_ = 3;
    } else {
      for (std::size_t i = 1; i < n; ++i) {
        if (is_vowel(w_[i])) {
          pv_ = i + 1;
          break;
        }
      }
    }
    p1_ = region_after(0);
    p2_ = region_after(p1_);
  }

  // Position after the first non-vowel that follows a vowel, from `from`.
  std::size_t region_after(std::size_t from) const {
    const std::size_t n = w_.size();
    std::size_t i = from;
    while (i < n && !is_vowel(w_[i])) ++i;
    if (i >= n) return n;
    while (i < n && is_vowel(w_[i])) ++i;
    if (i >= n) return n;
    return i + 1;
  }

  bool standard_suffix() {
    const auto match = longest_suffix(kStandardSuffixes, 0);
    if (!match) return false;
    const Suffix s = *match;
    const std::size_t start = start_of(s);

    if (s == U"ance" || s == U"iqUe" || s == U"isme" || s == U"able" || s == U"iste" ||
        s == U"eux" || s == U"ances" || s == U"iqUes" || s == U"ismes" || s == U"ables" ||
        s == U"istes") {
      if (!in_r2(start)) return false;
      erase_tail(start);
      return true;
    }
    if (s == U"atrice" || s == U"ateur" || s == U"ation" || s == U"atrices" ||
        s == U"ateurs" || s == U"ations") {
      if (!in_r2(start)) return false;
      erase_tail(start);
      if (ends_with(U"ic")) {
        const std::size_t ic = start_of(U"ic");
        if (in_r2(ic)) {
          erase_tail(ic);
        } else {
          replace_tail(ic, U"iqU");
        }
      }
      return true;
    }
    if (s == U"logie" || s == U"logies") {
      if (!in_r2(start)) return false;
      replace_tail(start, U"log");
      return true;
    }
    if (s == U"usion" || s == U"ution" || s == U"usions" || s == U"utions") {
      if (!in_r2(start)) return false;
      replace_tail(start, U"u");
      return true;
    }
    if (s == U"ence" || s == U"ences") {
      if (!in_r2(start)) return false;
      replace_tail(start, U"ent");
      return true;
    }
    if (s == U"ement" || s == U"ements") {
      if (!in_rv(start)) return false;
      erase_tail(start);
      if (ends_with(U"iv")) {
        const std::size_t iv = start_of(U"iv");
        if (in_r2(iv)) {
          erase_tail(iv);
          if (ends_with(U"at") && in_r2(start_of(U"at"))) erase_tail(start_of(U"at"));
        }
      } else if (ends_with(U"eus")) {
        const std::size_t eus = start_of(U"eus");
        if (in_r2(eus)) {
          erase_tail(eus);
        } else if (in_r1(eus)) {
          replace_tail(eus, U"eux");
        }
      } else if (ends_with(U"abl") || ends_with(U"iqU")) {
        const std::size_t pos = w_.size() - 3;
        if (in_r2(pos)) erase_tail(pos);
      } else if (ends_with(U"ièr") || ends_with(U"Ièr")) {
        const std::size_t pos = w_.size() - 3;
        if (in_rv(pos)) replace_tail(pos, U"i");
      }
      return true;
    }
    if (s == U"ité" || s == U"ités") {
      if (!in_r2(start)) return false;
      erase_tail(start);
      if (ends_with(U"abil")) {
        const std::size_t pos = start_of(U"abil");
        if (in_r2(pos)) {
          erase_tail(pos);
        } else {
          replace_tail(pos, U"abl");
        }
      } else if (ends_with(U"ic")) {
        const std::size_t pos = start_of(U"ic");
        if (in_r2(pos)) {
          erase_tail(pos);
        } else {
          replace_tail(pos, U"iqU");
        }
      } else if (ends_with(U"iv")) {
        const std::size_t pos = start_of(U"iv");
        if (in_r2(pos)) erase_tail(pos);
      }
      return true;
    }
    if (s == U"if" || s == U"ive" || s == U"ifs" || s == U"ives") {
      if (!in_r2(start)) return false;
      erase_tail(start);
      if (ends_with(U"at") && in_r2(start_of(U"at"))) {
        erase_tail(start_of(U"at"));
        if (ends_with(U"ic")) {
          const std::size_t pos = start_of(U"ic");
          if (in_r2(pos)) {
            erase_tail(pos);
          } else {
            replace_tail(pos, U"iqU");
          }
        }
      }
      return true;
    }
    if (s == U"eaux") {
      replace_tail(start, U"eau");
      return true;
    }
    if (s == U"aux") {
      if (!in_r1(start)) return false;
      replace_tail(start, U"al");
      return true;
    }
    if (s == U"euse" || s == U"euses") {
      if (in_r2(start)) {
        erase_tail(start);
        return true;
      }
      if (in_r1(start)) {
        replace_tail(start, U"eux");
        return true;
      }
      return false;
    }
    if (s == U"issement" || s == U"issements") {
      if (!in_r1(start) || start == 0 || is_vowel(w_[start - 1])) return false;
      erase_tail(start);
      return true;
    }
    // The remaining -ment forms rewrite the word and then fail on purpose
    // so that the verb suffix steps run on the result.
    if (s == U"amment") {
      if (in_rv(start)) replace_tail(start, U"ant");
      return false;
    }
    if (s == U"emment") {
      if (in_rv(start)) replace_tail(start, U"ent");
      return false;
    }
    if (s == U"ment" || s == U"ments") {
      if (start > 0 && is_vowel(w_[start - 1]) && in_rv(start - 1)) erase_tail(start);
      return false;
    }
    return false;
  }

  bool i_verb_suffix() {
    if (w_.size() < pv_) return false;
    const auto match = longest_suffix(kIVerbSuffixes, pv_);
    if (!match) return false;
    const std::size_t start = start_of(*match);
    if (start == 0 || start - 1 < pv_ || is_vowel(w_[start - 1])) return false;
    erase_tail(start);
    return true;
  }

  bool verb_suffix() {
    if (w_.size() < pv_) return false;
    const auto match = longest_suffix(kVerbSuffixes, pv_);
    if (!match) return false;
    const Suffix s = *match;
    const std::size_t start = start_of(s);
    if (s == U"ions") {
      if (!in_r2(start)) return false;
      erase_tail(start);
      return true;
    }
    if (contains(kVerbDeleteSuffixes, s)) {
      erase_tail(start);
      return true;
    }
    erase_tail(start);
    if (!w_.empty() && w_.back() == U'e' && w_.size() - 1 >= pv_) w_.pop_back();
    return true;
  }

  void residual_suffix() {
    if (w_.size() >= 2 && w_.back() == U's' && !keeps_s(w_[w_.size() - 2])) w_.pop_back();
    if (w_.size() < pv_) return;
    const auto match = longest_suffix(kResidualSuffixes, pv_);
    if (!match) return;
    const Suffix s = *match;
    const std::size_t start = start_of(s);
    if (s == U"ion") {
      if (in_r2(start) && start > pv_ && (w_[start - 1] == U's' || w_[start - 1] == U't'))
        erase_tail(start);
    } else if (s == U"e") {
      erase_tail(start);
    } else if (s == U"ë") {
      if (start >= pv_ + 2 && w_[start - 2] == U'g' && w_[start - 1] == U'u') erase_tail(start);
    } else {
      replace_tail(start, U"i");
    }
  }

  void un_double() {
    if (ends_with(U"enn") || ends_with(U"onn") || ends_with(U"ett") || ends_with(U"ell") ||
        ends_with(U"eill")) {
      w_.pop_back();
    }
  }

  void un_accent() {
    std::size_t i = w_.size();
    while (i > 0 && !is_vowel(w_[i - 1])) --i;
    if (i == w_.size() || i == 0) return;
    if (w_[i - 1] == U'é' || w_[i - 1] == U'è') w_[i - 1] = U'e';
  }

  void postlude() {
    for (char32_t& c : w_) {
      if (c == U'I') c = U'i';
      else if (c == U'U') c = U'u';
      else if (c == U'Y') c = U'y';
    }
  }

  Word w_;
  std::size_t pv_ = 0;
  std::size_t p1_ = 0;
  std::size_t p2_ = 0;
};

}  // namespace

std::string stem_french(std::string_view word) {
  auto decoded = utf8::decode(word);
  if (!decoded || decoded->empty()) return std::string(word);
  return utf8::encode(Stemmer(std::move(*decoded)).run());
}

std::string stem_french_fixpoint(std::string_view word) {
  std::string current(word);
  // Every non-trivial pass shortens the word or removes an accent, so this
  // terminates well before the bound.
  for (int pass = 0; pass < 16; ++pass) {
    std::string next = stem_french(current);
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

}  // namespace lmmatch
