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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "captionforge/bleu.h"
#include "captionforge/cider.h"
#include "captionforge/errors.h"
#include "captionforge/meteor.h"
#include "captionforge/ngram.h"
#include "captionforge/rouge.h"
#include "captionforge/scorer.h"
#include "doctest.h"
#include "gen.h"
#include "naive_metrics.h"

namespace cf = captionforge;
namespace m = captionforge::metrics;
using cf::Language;
using m::RefSet;
using m::Tokens;

namespace {

std::vector<RefSet> Corpus3(const Tokens& s) {
  return {{s}, {{"two", "dogs", "run"}}, {{"women", "cook", "dinner"}}};
}

}  // namespace

TEST_CASE("extract ngrams") {
  const m::NGramMultiset g(Tokens{"a", "b", "a"});
  CHECK(g.order(1).size() == 2);
  CHECK(g.Count({"a"}) == 2);
  CHECK(g.Count({"b"}) == 1);
  CHECK(g.Count({"a", "b"}) == 1);
  CHECK(g.Count({"b", "a"}) == 1);
  CHECK(g.Total(2) == 2);
  CHECK(g.Total(4) == 0);
  CHECK(m::ExtractNGrams(Tokens{}).empty());
  const auto one = m::ExtractNGrams(Tokens{"x"});
  CHECK(one.Total(1) == 1);
  CHECK(one.order(2).empty());
  testgen::Gen gen(4);
  for (int i = 0; i < 200; ++i) {
    const Tokens t = testgen::Words(gen, {"p", "q", "r"}, 0, 9);
    const m::NGramMultiset ms(t);
    for (int n = 1; n <= 4; ++n) {
      int sum = 0;
      for (const auto& [gram, c] : ms.order(n)) {
        CHECK(c >= 1);
        sum += c;
      }
      CHECK(sum == std::max(0, static_cast<int>(t.size()) - n + 1));
    }
  }
}

TEST_CASE("bleu examples") {
  const Tokens s = {"a", "man", "rides", "a", "brown", "horse"};
  for (double b : m::BleuSentence(s, {s})) CHECK(b == 1.0);
  for (double b : m::BleuCorpus(std::vector<Tokens>{s}, std::vector<RefSet>{{s}})) {
    CHECK(b == 1.0);
  }
  const Tokens the3 = {"the", "the", "the"};
  CHECK(m::BleuCorpus(std::vector<Tokens>{the3},
                      std::vector<RefSet>{{{"the", "cat", "sat"}}})[0] ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  // Add-one smoothing on every order: (1/5 * 1/4 * 1/3 * 1/2)^(1/4).
  const double short_disjoint =
      m::BleuSentenceScore({"x", "y", "z", "w"}, {{"a", "b", "c", "d"}}, 4);
  CHECK(short_disjoint == doctest::Approx(std::pow(1.0 / 120.0, 0.25)));
  Tokens many(25, "x"), other(25, "a");
  for (size_t i = 0; i < many.size(); ++i) many[i] += std::to_string(i);
  const double disjoint = m::BleuSentenceScore(many, {other}, 4);
  CHECK(disjoint > 0.0);
  CHECK(disjoint < 0.05);
  CHECK(disjoint == doctest::Approx(std::pow(1.0 / (26.0 * 25 * 24 * 23), 0.25)));

  // One token against a four-token reference: p1 = 1, BP = exp(1 - 4).
  const auto short_one = m::BleuSentence({"a"}, {{"a", "b", "c", "d"}});
  CHECK(short_one[0] == doctest::Approx(std::exp(-3.0)));
  CHECK(short_one[0] < 1.0);

  const auto empty = m::BleuCorpus(std::vector<Tokens>{{}, s},
                                   std::vector<RefSet>{{s}, {s}});
  for (double b : empty) CHECK(std::isfinite(b));
  for (double b : m::BleuSentence({}, {s})) CHECK(b == 0.0);

  CHECK_THROWS_AS(m::BleuCorpus(std::vector<Tokens>{s}, std::vector<RefSet>{}),
                  cf::MismatchedIdsError);
  CHECK_THROWS_AS(m::BleuSentence(s, {}), cf::EmptyReferenceSetError);
}

TEST_CASE("bleu closest reference length prefers the shorter on ties") {
  // c = 4, refs of length 3 and 5: r = 3 so BP = 1.
  const auto b = m::BleuSentence({"a", "b", "c", "d"},
                                 {{"a", "b", "c", "d", "e"}, {"a", "b", "c"}});
  CHECK(b[0] == 1.0);
}

TEST_CASE("rouge-l examples") {
  const Tokens s = {"a", "b", "c"};
  CHECK(m::RougeL(s, {s}) == 1.0);
  const double want = (1 + 1.44) * 0.75 * 1.0 / (1.0 + 1.44 * 0.75);
  CHECK(m::RougeL({"a", "b", "c", "d"}, {{"a", "c", "d"}}) == doctest::Approx(want));
  CHECK(m::RougeL({"a", "b", "c", "d"}, {{"a", "c", "d"}}) == doctest::Approx(0.8798).epsilon(1e-4));
  CHECK(m::RougeL({"x", "y"}, {s}) == 0.0);
  CHECK(m::RougeL({}, {s}) == 0.0);
  CHECK(m::RougeL(s, {{}}) == 0.0);
  CHECK(m::LcsLength(Tokens{"a", "x", "b", "y", "c"}, Tokens{"a", "b", "c"}) == 3);
  CHECK_THROWS_AS(m::RougeL(s, {}), cf::EmptyReferenceSetError);
}

TEST_CASE("idf table") {
  const std::vector<RefSet> corpus = {{{"a", "b"}, {"a", "c"}}, {{"a"}}, {{"d"}}};
  const auto idf = m::IdfTable::Build(corpus);
  CHECK(idf.num_docs() == 3);
  CHECK(idf.DocFreq({"a"}) == 2);  // counted once per set
  CHECK(idf.DocFreq({"d"}) == 1);
  CHECK(idf.Idf({"d"}) == doctest::Approx(std::log(3.0)));
  CHECK(idf.DocFreq({"zzz"}) == 0);
  CHECK(idf.Idf({"zzz"}) == 0.0);
  const auto all = m::IdfTable::Build(std::vector<RefSet>{{{"q"}}, {{"q"}}});
  CHECK(all.Idf({"q"}) == 0.0);
}

TEST_CASE("cider-d examples") {
  const Tokens s = {"a", "man", "is", "riding", "a", "horse"};
  const auto idf = m::IdfTable::Build(Corpus3(s));
  CHECK(m::Cider(s, {s, s}, idf) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(m::Cider({"two", "dogs"}, {s}, idf) == 0.0);
  // Same unigrams, one extra repeat: lengths 6 vs 7.
  Tokens longer = s;
  longer.push_back("a");
  const double penalty = std::exp(-1.0 / 72.0);
  CHECK(penalty < 1.0);
  const double d = m::Cider(longer, {s}, idf);
  const double plain = m::Cider(longer, {s}, idf, m::CiderVariant::kPlain);
  CHECK(d < 10.0);
  CHECK(d < plain * penalty + 1e-12);
  CHECK_THROWS_AS(m::Cider(s, {s}, m::IdfTable{}), cf::EmptyIdfError);
  CHECK_THROWS_AS(m::Cider(s, {}, idf), cf::EmptyReferenceSetError);
  CHECK(m::ParseCiderVariant("plain") == m::CiderVariant::kPlain);
  CHECK(m::ParseCiderVariant("d") == m::CiderVariant::kCiderD);
  CHECK_THROWS_AS(m::ParseCiderVariant("x"), cf::InputError);
}

TEST_CASE("cider is invariant under reference permutation") {
  testgen::Gen g(9);
  const std::vector<std::string> words = {"a", "b", "c", "d", "e"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RefSet> corpus(4);
    for (auto& set : corpus) {
      for (int k = g.Range(1, 4); k > 0; --k) set.push_back(testgen::Words(g, words, 1, 6));
    }
    const auto idf = m::IdfTable::Build(corpus);
    const Tokens cand = testgen::Words(g, words, 0, 6);
    RefSet reversed = corpus[0];
    std::reverse(reversed.begin(), reversed.end());
    CHECK(m::Cider(cand, corpus[0], idf) ==
          doctest::Approx(m::Cider(cand, reversed, idf)).epsilon(1e-14));
  }
}

TEST_CASE("meteor examples") {
  const Tokens s = {"a", "dog", "runs", "fast"};
  const double mlen = 4;
  CHECK(m::MeteorLite(s, {s}, Language::kEnglish) ==
        doctest::Approx(1.0 - 0.5 / (mlen * mlen * mlen)));
  CHECK(m::MeteorLite({"x"}, {s}, Language::kEnglish) == 0.0);
  CHECK(m::MeteorLite({"b", "a"}, {{"a", "b"}}, Language::kEnglish) ==
        doctest::Approx(0.5));
  const auto al = m::AlignMeteor({"b", "a"}, {"a", "b"}, Language::kEnglish);
  CHECK(al.matches == 2);
  CHECK(al.chunks == 2);
  CHECK_THROWS_AS(m::MeteorLite(s, {}, Language::kEnglish), cf::EmptyReferenceSetError);
}

TEST_CASE("meteor stem stage is english only") {
  const auto en = m::AlignMeteor({"dogs", "jumped"}, {"dog", "jumps"}, Language::kEnglish);
  CHECK(en.exact == 0);
  CHECK(en.matches == 2);
  const auto zh = m::AlignMeteor({"dogs", "jumped"}, {"dog", "jumps"}, Language::kChinese);
  CHECK(zh.matches == 0);
  // Exact pairs win over stem pairs.
  const auto mixed = m::AlignMeteor({"cat"}, {"cats", "cat"}, Language::kEnglish);
  CHECK(mixed.exact == 1);
}

TEST_CASE("stemmer table") {
  CHECK(m::StemEnglish("running") == "runn");
  CHECK(m::StemEnglish("sing") == "sing");
  CHECK(m::StemEnglish("jumped") == "jump");
  CHECK(m::StemEnglish("red") == "red");
  CHECK(m::StemEnglish("boxes") == "box");
  CHECK(m::StemEnglish("watches") == "watch");
  CHECK(m::StemEnglish("wishes") == "wish");
  CHECK(m::StemEnglish("tables") == "table");
  CHECK(m::StemEnglish("dogs") == "dog");
  CHECK(m::StemEnglish("glass") == "glass");
  CHECK(m::StemEnglish("bus") == "bus");
  CHECK(m::StemEnglish("its") == "its");
}

TEST_CASE("random sentences match the naive oracle") {
  testgen::Gen g(21);
  const std::vector<std::string> words = {"a",    "the",  "dog",   "dogs", "run",
                                          "runs", "park", "jumped", "jump"};
  std::vector<RefSet> corpus(30);
  for (auto& set : corpus) {
    for (int k = g.Range(1, 3); k > 0; --k) set.push_back(testgen::Words(g, words, 0, 7));
  }
  const auto idf = m::IdfTable::Build(corpus);
  const auto oidf = oracle::BuildIdf(corpus);
  for (const RefSet& refs : corpus) {
    for (int k = 0; k < 5; ++k) {
      const Tokens cand = testgen::Words(g, words, 0, 7);
      const auto b = m::BleuSentence(cand, refs);
      const auto ob = oracle::SentenceBleu(cand, refs);
      for (int n = 0; n < 4; ++n) CHECK(b[n] == doctest::Approx(ob[n]).epsilon(1e-12));
      CHECK(m::RougeL(cand, refs) == doctest::Approx(oracle::RougeL(cand, refs)).epsilon(1e-12));
      CHECK(m::Cider(cand, refs, idf) ==
            doctest::Approx(oracle::CiderD(cand, refs, oidf)).epsilon(1e-12));
      CHECK(m::MeteorLite(cand, refs, Language::kEnglish) ==
            doctest::Approx(oracle::Meteor(cand, refs, true)).epsilon(1e-12));
    }
  }
}

TEST_CASE("scores stay in range for arbitrary unicode tokens") {
  testgen::Gen g(31);
  const std::vector<std::string> words = {"猫", "狗", "é", "ß", "🙂", "a", "Ω", " "};
  std::vector<RefSet> corpus(10);
  for (auto& set : corpus) {
    for (int k = g.Range(1, 3); k > 0; --k) set.push_back(testgen::Words(g, words, 0, 10));
  }
  const auto idf = m::IdfTable::Build(corpus);
  for (int i = 0; i < 500; ++i) {
    const RefSet& refs = corpus[static_cast<size_t>(g.Int(10))];
    const Tokens cand = testgen::Words(g, words, 0, 10);
    const auto lang = g.Coin() ? Language::kEnglish : Language::kChinese;
    for (double b : m::BleuSentence(cand, refs)) CHECK((b >= 0.0 && b <= 1.0));
    const double r = m::RougeL(cand, refs);
    const double mt = m::MeteorLite(cand, refs, lang);
    const double c = m::Cider(cand, refs, idf);
    CHECK((r >= 0.0 && r <= 1.0));
    CHECK((mt >= 0.0 && mt <= 1.0));
    CHECK((c >= 0.0 && c <= 10.0));
  }
}

TEST_CASE("duplicate references never lower rouge-l or meteor") {
  testgen::Gen g(41);
  const std::vector<std::string> words = {"a", "b", "c", "d"};
  for (int i = 0; i < 300; ++i) {
    RefSet refs = {testgen::Words(g, words, 1, 6)};
    const Tokens cand = testgen::Words(g, words, 0, 6);
    const double r0 = m::RougeL(cand, refs), m0 = m::MeteorLite(cand, refs, Language::kEnglish);
    refs.push_back(refs[static_cast<size_t>(g.Int(static_cast<int>(refs.size())))]);
    refs.push_back(testgen::Words(g, words, 1, 6));
    CHECK(m::RougeL(cand, refs) >= r0);
    CHECK(m::MeteorLite(cand, refs, Language::kEnglish) >= m0);
  }
}

TEST_CASE("identity scores are 1 for every sentence") {
  testgen::Gen g(51);
  for (int i = 0; i < 300; ++i) {
    const Tokens s = testgen::Words(g, {"x", "y", "z", "w"}, 1, 12);
    CHECK(m::BleuSentenceScore(s, {s}, 4) == 1.0);
    CHECK(m::RougeL(s, {s}) == 1.0);
  }
}

TEST_CASE("meteor on long repetitive inputs stays bounded") {
  Tokens cand(40, "a"), ref(40, "a");
  for (size_t i = 0; i < cand.size(); i += 3) cand[i] = "b";
  const auto al = m::AlignMeteor(cand, ref, Language::kEnglish);
  CHECK(al.matches > 0);
  const double s = m::MeteorLite(cand, {ref}, Language::kEnglish);
  CHECK((s > 0.0 && s <= 1.0));
}

TEST_CASE("score corpus") {
  const Tokens s = {"a", "man", "is", "riding", "a", "horse"};
  m::CandidateMap one = {{"v1", s}};
  m::ReferenceMap one_ref = {{"v1", {s}}};
  const auto idf = m::IdfTable::Build(Corpus3(s));
  const auto r1 = m::ScoreCorpus(one, one_ref, idf);
  CHECK(r1.corpus.cider == doctest::Approx(10.0));
  for (double b : r1.corpus.bleu) CHECK(b == 1.0);
  CHECK(r1.corpus.rouge_l == 1.0);
  CHECK(r1.corpus.cider == r1.per_sentence.at("v1").cider);

  testgen::Gen g(61);
  const std::vector<std::string> words = {"a", "b", "c", "d", "e", "f"};
  m::CandidateMap cands;
  m::ReferenceMap refs;
  for (int i = 0; i < 40; ++i) {
    const std::string id = "id" + std::to_string(i);
    cands[id] = testgen::Words(g, words, 0, 8);
    for (int k = g.Range(1, 3); k > 0; --k) refs[id].push_back(testgen::Words(g, words, 1, 8));
  }
  const auto base = m::ScoreCorpus(cands, refs).ToJson();
  for (int jobs : {2, 3, 8}) {
    m::ScoreOptions opt;
    opt.jobs = jobs;
    CHECK(m::ScoreCorpus(cands, refs, opt).ToJson() == base);
  }
  CHECK(base["corpus"].contains("Bleu_4"));
  CHECK(base["corpus"].contains("ROUGE_L"));
  CHECK(base["per_sentence"].size() == 40);

  auto missing = refs;
  missing.erase("id3");
  CHECK_THROWS_AS(m::ScoreCorpus(cands, missing), cf::MismatchedIdsError);
}
