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
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "captionforge/errors.h"
#include "captionforge/text.h"
#include "captionforge/vocabulary.h"
#include "doctest.h"
#include "gen.h"

namespace cf = captionforge;
using cf::Language;
using Strings = std::vector<std::string>;

namespace {

cf::Caption Cap(const std::string& raw, Language lang = Language::kEnglish) {
  return cf::MakeCaption("x", raw, lang);
}

std::vector<cf::Caption> Corpus(std::initializer_list<std::string> raws) {
  std::vector<cf::Caption> out;
  for (const auto& r : raws) out.push_back(Cap(r));
  return out;
}

std::vector<cf::Caption> Repeat(const std::string& raw, int times) {
  return std::vector<cf::Caption>(static_cast<size_t>(times), Cap(raw));
}

}  // namespace

TEST_CASE("tokenize english lowercases and splits punctuation") {
  CHECK(cf::Tokenize("A Man Jumps.", Language::kEnglish) ==
        Strings{"a", "man", "jumps", "."});
  CHECK(cf::Tokenize("", Language::kEnglish).empty());
  CHECK(cf::Tokenize("   \t\n ", Language::kEnglish).empty());
  CHECK(cf::Tokenize("Hello,world!!", Language::kEnglish) ==
        Strings{"hello", ",", "world", "!", "!"});
  CHECK(cf::Tokenize("it's a DOG", Language::kEnglish) ==
        Strings{"it", "'", "s", "a", "dog"});
  CHECK(cf::Tokenize("ÉCOLE Ça", Language::kEnglish) == Strings{"école", "ça"});
}

TEST_CASE("tokenize chinese splits on whitespace only") {
  CHECK(cf::Tokenize("一个 男人 跳", Language::kChinese) ==
        Strings{"一个", "男人", "跳"});
  CHECK(cf::Tokenize("一个男人跳", Language::kChinese) == Strings{"一个男人跳"});
  CHECK(cf::Tokenize("狗， 跑 ABC", Language::kChinese) ==
        Strings{"狗，", "跑", "ABC"});
}

TEST_CASE("no token is empty and english has no ascii capitals") {
  testgen::Gen g(3);
  const Strings pieces = {"Ab", "C.", ",", " ", "  ", "DOG", "x!", "\t", "Q"};
  for (int i = 0; i < 500; ++i) {
    std::string raw;
    for (int k = g.Range(0, 12); k > 0; --k) raw += g.Pick(pieces);
    for (const auto& t : cf::Tokenize(raw, Language::kEnglish)) {
      CHECK_FALSE(t.empty());
      for (char c : t) CHECK_FALSE((c >= 'A' && c <= 'Z'));
    }
  }
}

TEST_CASE("truncate keeps a prefix") {
  Strings longer;
  for (int i = 0; i < 31; ++i) longer.push_back("w" + std::to_string(i));
  const Strings t30 = cf::Truncate(longer, 30);
  REQUIRE(t30.size() == 30);
  CHECK(t30.back() == "w29");
  CHECK(cf::Truncate(t30, 30) == t30);
  CHECK(cf::Truncate(Strings{}, 30).empty());
  CHECK(cf::Truncate(Strings{"a", "b"}, 1) == Strings{"a"});
  CHECK(cf::MakeCaption("id", std::string(200, 'a').insert(100, " "),
                        Language::kEnglish)
            .tokens.size() == 2);
  CHECK_THROWS(cf::Truncate(Strings{"a"}, 0));
}

TEST_CASE("default caption length limit is 30") {
  std::string raw;
  for (int i = 0; i < 45; ++i) raw += "w ";
  CHECK(cf::MakeCaption("id", raw, Language::kEnglish).tokens.size() == 30);
}

TEST_CASE("language names") {
  CHECK(cf::ParseLanguage("en") == Language::kEnglish);
  CHECK(cf::ParseLanguage("zh") == Language::kChinese);
  CHECK(cf::ParseLanguage("chinese") == Language::kChinese);
  CHECK_THROWS_AS(cf::ParseLanguage("fr"), cf::InputError);
  CHECK(cf::LanguageName(Language::kChinese) == "zh");
}

TEST_CASE("vocabulary frequency threshold") {
  std::vector<cf::Caption> corpus = Repeat("a", 5);
  for (int i = 0; i < 4; ++i) corpus.push_back(Cap("b"));
  const auto v = cf::Vocabulary::Build(corpus);
  CHECK(v.Contains("a"));
  CHECK_FALSE(v.Contains("b"));
  CHECK(v.Lookup("b") == cf::kUnkId);
  CHECK(v.size() == 5);
}

TEST_CASE("vocabulary keeps every token of a caption repeated five times") {
  const auto v = cf::Vocabulary::Build(Repeat("the dog chases a red ball", 5));
  CHECK(v.size() == 4 + 6);
}

TEST_CASE("min count one keeps all tokens") {
  const auto v = cf::Vocabulary::Build(Corpus({"x y z", "x q"}), 1);
  CHECK(v.size() == 4 + 4);
}

TEST_CASE("vocabulary id order and reserved ids") {
  std::vector<cf::Caption> corpus = {Cap("b b b a a a c c d")};
  const auto v = cf::Vocabulary::Build(corpus, 1);
  CHECK(v.tokens() == Strings{"<pad>", "<bos>", "<eos>", "<unk>", "a", "b", "c", "d"});
  CHECK(v.Lookup("<pad>") == cf::kPadId);
  CHECK(v.Lookup("<bos>") == cf::kBosId);
  CHECK(v.Lookup("<eos>") == cf::kEosId);
  CHECK(v.Lookup("<unk>") == cf::kUnkId);
}

TEST_CASE("empty corpus is rejected") {
  CHECK_THROWS_AS(cf::Vocabulary::Build(std::vector<cf::Caption>{}), cf::EmptyCorpusError);
  CHECK_THROWS_AS(cf::Vocabulary::Build(Corpus({"", "  "})), cf::EmptyCorpusError);
}

TEST_CASE("encode and decode") {
  const auto v = cf::Vocabulary::Build(Corpus({"a man runs"}), 1);
  const auto ids = cf::Encode(Cap("a man runs"), v);
  REQUIRE(ids.size() == 5);
  CHECK(ids.front() == cf::kBosId);
  CHECK(ids.back() == cf::kEosId);
  CHECK(cf::DecodeIds(ids, v) == Strings{"a", "man", "runs"});
  CHECK(cf::Encode(Cap("a cat"), v)[2] == cf::kUnkId);
  CHECK(cf::Encode(Cap(""), v) == std::vector<cf::TokenId>{cf::kBosId, cf::kEosId});
  CHECK(cf::DecodeIds(std::vector<cf::TokenId>{cf::kBosId, cf::kEosId}, v).empty());
  CHECK(cf::DecodeIds(std::vector<cf::TokenId>{cf::kPadId, 4, cf::kPadId}, v).size() == 1);
  CHECK_THROWS_AS(cf::DecodeIds(std::vector<cf::TokenId>{static_cast<cf::TokenId>(v.size())}, v),
                  cf::IdOutOfRangeError);
  CHECK_THROWS_AS(cf::DecodeIds(std::vector<cf::TokenId>{-1}, v), cf::IdOutOfRangeError);
}

TEST_CASE("vocabulary json round trip") {
  const auto v = cf::Vocabulary::Build(Corpus({"one two two three three three"}), 2);
  const auto j = v.ToJson();
  CHECK(j["min_count"] == 2);
  CHECK(j["tokens"].size() == 6);
  CHECK(cf::Vocabulary::FromJson(j) == v);
  nlohmann::json broken = j;
  broken["tokens"][1] = "<eos>";
  CHECK_THROWS_AS(cf::Vocabulary::FromJson(broken), cf::InputError);
  broken = j;
  broken["tokens"].push_back("two");
  CHECK_THROWS_AS(cf::Vocabulary::FromJson(broken), cf::InputError);
}

TEST_CASE("vocabulary build is order independent") {
  testgen::Gen g(11);
  const Strings words = {"a", "b", "c", "d", "e", "f", "g"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<cf::Caption> corpus;
    for (int i = g.Range(1, 10); i > 0; --i) {
      cf::Caption c;
      c.tokens = testgen::Words(g, words, 0, 8);
      corpus.push_back(c);
    }
    bool any = false;
    for (const auto& c : corpus) any |= !c.tokens.empty();
    if (!any) continue;
    const int m = g.Range(1, 4);
    auto reversed = corpus;
    std::reverse(reversed.begin(), reversed.end());
    CHECK(cf::Vocabulary::Build(corpus, m) == cf::Vocabulary::Build(reversed, m));
  }
}
