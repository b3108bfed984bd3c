// Copyright 2026 The CaptionForge Authors.
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

#include "captionforge/meteor.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <unordered_map>
#include <vector>

#include "captionforge/errors.h"

namespace captionforge::metrics {
namespace {

constexpr size_t kMaxSearchStates = size_t{1} << 18;

enum class Relation : std::uint8_t { kNone, kExact, kStem };

struct Objective {
  int exact = 0;
  int matches = 0;
  int chunks = 0;
};

bool Better(const Objective& a, const Objective& b) {
  if (a.exact != b.exact) return a.exact > b.exact;
  if (a.matches != b.matches) return a.matches > b.matches;
  return a.chunks < b.chunks;
}

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

using Bits = std::vector<std::uint64_t>;

bool Test(const Bits& bits, size_t j) { return (bits[j / 64] >> (j % 64)) & 1; }
void Set(Bits& bits, size_t j) { bits[j / 64] |= std::uint64_t{1} << (j % 64); }

// Memoised search over candidate positions. State: next candidate position,
// the reference position matched by the previous candidate (or -1), and the
// set of used reference positions. Used bits that no remaining candidate
// could match are dropped from the key, as is a previous position whose
// successor the current candidate cannot take.
class Aligner {
 public:
  Aligner(const Tokens& cand, const Tokens& ref, Language language)
      : m_(cand.size()), n_(ref.size()), words_((ref.size() + 63) / 64) {
    rel_.assign(m_ * n_, Relation::kNone);
    std::vector<std::string> cand_stems, ref_stems;
    const bool stems = language == Language::kEnglish;
    if (stems) {
      for (const auto& t : cand) cand_stems.push_back(StemEnglish(t));
      for (const auto& t : ref) ref_stems.push_back(StemEnglish(t));
    }
    for (size_t i = 0; i < m_; ++i) {
      for (size_t j = 0; j < n_; ++j) {
        if (cand[i] == ref[j]) {
          rel_[i * n_ + j] = Relation::kExact;
        } else if (stems && cand_stems[i] == ref_stems[j]) {
          rel_[i * n_ + j] = Relation::kStem;
        }
      }
    }
    // reachable_[i]: reference positions matchable by some candidate >= i.
    reachable_.assign(m_ + 1, Bits(words_, 0));
    for (size_t i = m_; i-- > 0;) {
      reachable_[i] = reachable_[i + 1];
      for (size_t j = 0; j < n_; ++j) {
        if (rel(i, j) != Relation::kNone) Set(reachable_[i], j);
      }
    }
  }

  MeteorAlignment Run() {
    Bits used(words_, 0);
    const Objective best = Solve(0, -1, used);
    if (overflow_) return Greedy();
    return {best.exact, best.matches, best.chunks, true};
  }

 private:
  Relation rel(size_t i, size_t j) const { return rel_[i * n_ + j]; }

  std::string Key(size_t i, long prev, const Bits& used) const {
    std::string key(sizeof(std::uint32_t) * 2 + words_ * 8, '\0');
    const auto i32 = static_cast<std::uint32_t>(i);
    const auto p32 = static_cast<std::uint32_t>(prev + 1);
    std::memcpy(key.data(), &i32, 4);
    std::memcpy(key.data() + 4, &p32, 4);
    for (size_t w = 0; w < words_; ++w) {
      const std::uint64_t masked = used[w] & reachable_[i][w];
      std::memcpy(key.data() + 8 + w * 8, &masked, 8);
    }
    return key;
  }

  Objective Solve(size_t i, long prev, Bits& used) {
    if (i == m_ || overflow_) return {};
    // The previous match only matters if this candidate could extend it.
    if (prev >= 0 && (static_cast<size_t>(prev) + 1 >= n_ ||
                      rel(i, static_cast<size_t>(prev) + 1) == Relation::kNone ||
                      Test(used, static_cast<size_t>(prev) + 1))) {
      prev = -1;
    }
    std::string key = Key(i, prev, used);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= kMaxSearchStates) {
      overflow_ = true;
      return {};
    }

    Objective best = Solve(i + 1, -1, used);
    for (size_t j = 0; j < n_; ++j) {
      const Relation r = rel(i, j);
      if (r == Relation::kNone || Test(used, j)) continue;
      Bits next = used;
      Set(next, j);
      Objective sub = Solve(i + 1, static_cast<long>(j), next);
      sub.matches += 1;
      sub.exact += r == Relation::kExact ? 1 : 0;
      const bool continues = prev >= 0 && static_cast<size_t>(prev) + 1 == j;
      sub.chunks += continues ? 0 : 1;
      if (Better(sub, best)) best = sub;
    }
    memo_.emplace(std::move(key), best);
    return best;
  }

  // Left to right: extend the current chunk when possible, otherwise take
  // the first free exact match, then the first free stem match.
  MeteorAlignment Greedy() const {
    Bits used(words_, 0);
    MeteorAlignment out;
    out.optimal = false;
    long prev = -1;
    for (size_t i = 0; i < m_; ++i) {
      long pick = -1;
      if (prev >= 0 && static_cast<size_t>(prev) + 1 < n_ &&
          rel(i, static_cast<size_t>(prev) + 1) == Relation::kExact &&
          !Test(used, static_cast<size_t>(prev) + 1)) {
        pick = prev + 1;
      }
      for (Relation want : {Relation::kExact, Relation::kStem}) {
        for (size_t j = 0; j < n_ && pick < 0; ++j) {
          if (rel(i, j) == want && !Test(used, j)) pick = static_cast<long>(j);
        }
      }
      if (pick >= 0) {
        Set(used, static_cast<size_t>(pick));
        ++out.matches;
        if (rel(i, static_cast<size_t>(pick)) == Relation::kExact) ++out.exact;
        if (!(prev >= 0 && prev + 1 == pick)) ++out.chunks;
      }
      prev = pick;
    }
    return out;
  }

  size_t m_, n_, words_;
  std::vector<Relation> rel_;
  std::vector<Bits> reachable_;
  std::unordered_map<std::string, Objective> memo_;
  bool overflow_ = false;
};

}  // namespace

std::string StemEnglish(std::string_view word) {
  auto strip = [&](size_t k) -> std::string {
    return std::string(word.substr(0, word.size() - k));
  };
  if (EndsWith(word, "ing") && word.size() >= 6) return strip(3);
  if (EndsWith(word, "ed") && word.size() >= 5) return strip(2);
  if (EndsWith(word, "es") && word.size() >= 5) {
    const std::string_view base = word.substr(0, word.size() - 2);
    if (EndsWith(base, "s") || EndsWith(base, "x") || EndsWith(base, "z") ||
        EndsWith(base, "ch") || EndsWith(base, "sh")) {
      return strip(2);
    }
  }
  if (EndsWith(word, "s") && word.size() >= 4 && !EndsWith(word, "ss") &&
      !EndsWith(word, "us")) {
    return strip(1);
  }
  return std::string(word);
}

MeteorAlignment AlignMeteor(const Tokens& cand, const Tokens& ref,
                            Language language) {
  if (cand.empty() || ref.empty()) return {};
  return Aligner(cand, ref, language).Run();
}

double MeteorFromAlignment(const MeteorAlignment& alignment, size_t cand_len,
                           size_t ref_len, const MeteorParams& params) {
  if (alignment.matches == 0 || cand_len == 0 || ref_len == 0) return 0.0;
  const double m = alignment.matches;
  const double p = m / static_cast<double>(cand_len);
  const double r = m / static_cast<double>(ref_len);
  const double fmean = p * r / (params.alpha * p + (1.0 - params.alpha) * r);
  const double penalty =
      params.gamma * std::pow(alignment.chunks / m, params.beta);
  return fmean * (1.0 - penalty);
}

double MeteorLite(const Tokens& cand, const RefSet& refs, Language language,
                  const MeteorParams& params) {
  if (refs.empty()) throw EmptyReferenceSetError("METEOR needs >= 1 reference");
  double best = 0.0;
  for (const Tokens& ref : refs) {
    const MeteorAlignment a = AlignMeteor(cand, ref, language);
    best = std::max(best,
                    MeteorFromAlignment(a, cand.size(), ref.size(), params));
  }
  return best;
}

}  // namespace captionforge::metrics
