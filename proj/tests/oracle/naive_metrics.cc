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

#include "naive_metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <utility>

namespace oracle {
namespace {

std::string Join(const Sentence& s, size_t begin, size_t n) {
  std::string out;
  for (size_t k = 0; k < n; ++k) {
    if (k) out += ' ';
    out += s[begin + k];
  }
  return out;
}

bool EndsWith(const std::string& w, const std::string& suffix) {
  return w.size() >= suffix.size() &&
         w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Is the candidate subsequence picked by `mask` also a subsequence of ref?
bool IsSubsequence(const Sentence& cand, unsigned mask, const Sentence& ref) {
  size_t j = 0;
  for (size_t i = 0; i < cand.size(); ++i) {
    if (!(mask & (1u << i))) continue;
    while (j < ref.size() && ref[j] != cand[i]) ++j;
    if (j == ref.size()) return false;
    ++j;
  }
  return true;
}

int BruteLcs(const Sentence& a, const Sentence& b) {
  int best = 0;
  for (unsigned mask = 0; mask < (1u << a.size()); ++mask) {
    const int bits = __builtin_popcount(mask);
    if (bits > best && IsSubsequence(a, mask, b)) best = bits;
  }
  return best;
}

double Cider(const Sentence& cand, const References& refs, const Idf& idf,
             bool d_variant) {
  double sum_refs = 0.0;
  for (const Sentence& ref : refs) {
    double sum_orders = 0.0;
    for (int n = 1; n <= 4; ++n) {
      std::map<std::string, double> vc, vr;
      for (const auto& [g, c] : Grams(cand, n)) vc[g] = c * idf.Weight(g, n);
      for (const auto& [g, c] : Grams(ref, n)) vr[g] = c * idf.Weight(g, n);
      double nc = 0.0, nr = 0.0, dot = 0.0;
      for (const auto& [g, w] : vc) nc += w * w;
      for (const auto& [g, w] : vr) nr += w * w;
      for (const auto& [g, w] : vc) {
        if (!vr.count(g)) continue;
        const double wc = d_variant ? std::min(w, vr[g]) : w;
        dot += wc * vr[g];
      }
      double sim = 0.0;
      if (nc > 0.0 && nr > 0.0) sim = dot / (std::sqrt(nc) * std::sqrt(nr));
      if (d_variant) {
        const double diff = double(cand.size()) - double(ref.size());
        sim *= std::exp(-diff * diff / 72.0);
      }
      sum_orders += sim;
    }
    sum_refs += sum_orders / 4.0;
  }
  return 10.0 * sum_refs / refs.size();
}

struct Alignment {
  int exact = 0;
  int matches = 0;
  int chunks = 0;
};

bool Better(const Alignment& a, const Alignment& b) {
  if (a.exact != b.exact) return a.exact > b.exact;
  if (a.matches != b.matches) return a.matches > b.matches;
  return a.chunks < b.chunks;
}

// Tries every one-to-one assignment of candidate positions.
void Enumerate(const Sentence& cand, const Sentence& ref, bool stem, size_t i,
               std::vector<int>& assign, std::vector<bool>& used,
               Alignment& best) {
  if (i == cand.size()) {
    Alignment a;
    int prev_i = -2, prev_j = -2;
    for (size_t k = 0; k < cand.size(); ++k) {
      const int j = assign[k];
      if (j < 0) continue;
      ++a.matches;
      if (cand[k] == ref[j]) ++a.exact;
      if (!(int(k) == prev_i + 1 && j == prev_j + 1)) ++a.chunks;
      prev_i = int(k);
      prev_j = j;
    }
    if (Better(a, best)) best = a;
    return;
  }
  assign[i] = -1;
  Enumerate(cand, ref, stem, i + 1, assign, used, best);
  for (size_t j = 0; j < ref.size(); ++j) {
    if (used[j]) continue;
    const bool ok =
        cand[i] == ref[j] || (stem && Stem(cand[i]) == Stem(ref[j]));
    if (!ok) continue;
    used[j] = true;
    assign[i] = int(j);
    Enumerate(cand, ref, stem, i + 1, assign, used, best);
    used[j] = false;
  }
  assign[i] = -1;
}

}  // namespace

std::map<std::string, int> Grams(const Sentence& s, int n) {
  std::map<std::string, int> out;
  for (size_t i = 0; i + n <= s.size(); ++i) ++out[Join(s, i, n)];
  return out;
}

std::vector<double> SentenceBleu(const Sentence& cand, const References& refs) {
  std::vector<double> out(4, 0.0);
  if (cand.empty()) return out;
  const long c = long(cand.size());
  long r = long(refs[0].size());
  for (const Sentence& ref : refs) {
    const long len = long(ref.size());
    if (std::labs(len - c) < std::labs(r - c) ||
        (std::labs(len - c) == std::labs(r - c) && len < r)) {
      r = len;
    }
  }
  const double bp = c >= r ? 1.0 : std::exp(1.0 - double(r) / double(c));
  double product = 1.0;
  for (int n = 1; n <= 4; ++n) {
    long matched = 0;
    for (const auto& [g, count] : Grams(cand, n)) {
      int best = 0;
      for (const Sentence& ref : refs) {
        const auto grams = Grams(ref, n);
        auto it = grams.find(g);
        if (it != grams.end()) best = std::max(best, it->second);
      }
      matched += std::min(count, best);
    }
    const long total = std::max(0L, c - n + 1);
    product *= matched > 0 ? double(matched) / double(total)
                           : 1.0 / double(total + 1);
    out[n - 1] = bp * std::pow(product, 1.0 / n);
  }
  return out;
}

std::vector<double> CorpusBleu(const std::vector<Sentence>& cands,
                               const std::vector<References>& refs) {
  long c = 0, r = 0;
  long matched[4] = {0, 0, 0, 0}, total[4] = {0, 0, 0, 0};
  for (size_t k = 0; k < cands.size(); ++k) {
    const Sentence& cand = cands[k];
    const long len_c = long(cand.size());
    long best_r = long(refs[k][0].size());
    for (const Sentence& ref : refs[k]) {
      const long len = long(ref.size());
      if (std::labs(len - len_c) < std::labs(best_r - len_c) ||
          (std::labs(len - len_c) == std::labs(best_r - len_c) &&
           len < best_r)) {
        best_r = len;
      }
    }
    c += len_c;
    r += best_r;
    for (int n = 1; n <= 4; ++n) {
      for (const auto& [g, count] : Grams(cand, n)) {
        int best = 0;
        for (const Sentence& ref : refs[k]) {
          const auto grams = Grams(ref, n);
          auto it = grams.find(g);
          if (it != grams.end()) best = std::max(best, it->second);
        }
        matched[n - 1] += std::min(count, best);
      }
      total[n - 1] += std::max(0L, len_c - n + 1);
    }
  }
  std::vector<double> out(4, 0.0);
  if (c == 0) return out;
  const double bp = c >= r ? 1.0 : std::exp(1.0 - double(r) / double(c));
  double product = 1.0;
  for (int n = 1; n <= 4; ++n) {
    if (matched[n - 1] == 0 || total[n - 1] == 0) break;
    product *= double(matched[n - 1]) / double(total[n - 1]);
    out[n - 1] = bp * std::pow(product, 1.0 / n);
  }
  return out;
}

double RougeL(const Sentence& cand, const References& refs) {
  double best = 0.0;
  const double beta2 = 1.2 * 1.2;
  for (const Sentence& ref : refs) {
    if (cand.empty() || ref.empty()) continue;
    const int lcs = BruteLcs(cand, ref);
    if (lcs == 0) continue;
    const double p = double(lcs) / cand.size();
    const double rc = double(lcs) / ref.size();
    best = std::max(best, (1 + beta2) * p * rc / (rc + beta2 * p));
  }
  return best;
}

double Idf::Weight(const std::string& gram, int n) const {
  auto it = df.find(std::to_string(n) + "|" + gram);
  if (it == df.end()) return 0.0;
  return std::log(double(docs) / double(it->second));
}

Idf BuildIdf(const std::vector<References>& corpus) {
  Idf idf;
  idf.docs = int(corpus.size());
  for (const References& set : corpus) {
    std::set<std::string> seen;
    for (const Sentence& ref : set) {
      for (int n = 1; n <= 4; ++n) {
        for (const auto& [g, c] : Grams(ref, n)) {
          seen.insert(std::to_string(n) + "|" + g);
        }
      }
    }
    for (const std::string& key : seen) ++idf.df[key];
  }
  return idf;
}

double CiderD(const Sentence& cand, const References& refs, const Idf& idf) {
  return Cider(cand, refs, idf, true);
}

double CiderPlain(const Sentence& cand, const References& refs,
                  const Idf& idf) {
  return Cider(cand, refs, idf, false);
}

std::string Stem(const std::string& w) {
  const size_t n = w.size();
  if (EndsWith(w, "ing") && n - 3 >= 3) return w.substr(0, n - 3);
  if (EndsWith(w, "ed") && n - 2 >= 3) return w.substr(0, n - 2);
  if (EndsWith(w, "es") && n - 2 >= 3) {
    const std::string base = w.substr(0, n - 2);
    if (EndsWith(base, "s") || EndsWith(base, "x") || EndsWith(base, "z") ||
        EndsWith(base, "ch") || EndsWith(base, "sh")) {
      return base;
    }
  }
  if (EndsWith(w, "s") && n - 1 >= 3) {
    const char before = w[n - 2];
    if (before != 's' && before != 'u') return w.substr(0, n - 1);
  }
  return w;
}

double Meteor(const Sentence& cand, const References& refs, bool stem) {
  double best = 0.0;
  for (const Sentence& ref : refs) {
    Alignment a;
    std::vector<int> assign(cand.size(), -1);
    std::vector<bool> used(ref.size(), false);
    Enumerate(cand, ref, stem, 0, assign, used, a);
    if (a.matches == 0) continue;
    const double p = double(a.matches) / cand.size();
    const double r = double(a.matches) / ref.size();
    const double fmean = p * r / (0.9 * p + 0.1 * r);
    const double frag = double(a.chunks) / a.matches;
    const double score = fmean * (1.0 - 0.5 * frag * frag * frag);
    best = std::max(best, score);
  }
  return best;
}

}  // namespace oracle
