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

#include "captionforge/fixture.h"

#include <array>
#include <cstdio>
#include <filesystem>

#include "captionforge/errors.h"
#include "captionforge/random.h"

namespace captionforge::fixture {
namespace {

constexpr std::array<const char*, kSubjects> kSubjectEn = {
    "man", "woman", "dog", "child", "cat"};
constexpr std::array<const char*, kActions> kActionEn = {
    "running", "swimming", "dancing", "cooking", "singing"};
constexpr std::array<const char*, 3> kPlaceEn = {"in the park", "on the street",
                                                 "in a room"};
constexpr std::array<const char*, 3> kAdjEn = {"young", "small", "happy"};

constexpr std::array<const char*, kSubjects> kSubjectZh = {
    "男人", "女人", "狗", "孩子", "猫"};
constexpr std::array<const char*, kActions> kActionZh = {
    "跑步", "游泳", "跳舞", "做饭", "唱歌"};
constexpr std::array<const char*, 3> kPlaceZh = {"公园 里", "街 上", "房间 里"};
constexpr std::array<const char*, 3> kAdjZh = {"年轻", "小", "快乐"};

std::string Fill(const char* pattern, const char* s, const char* a,
                 const char* p, const char* adj) {
  std::string out;
  for (const char* c = pattern; *c; ++c) {
    if (*c != '%') {
      out.push_back(*c);
      continue;
    }
    switch (*++c) {
      case 'S': out += s; break;
      case 'A': out += a; break;
      case 'P': out += p; break;
      case 'J': out += adj; break;
      default: throw std::logic_error("bad fixture template");
    }
  }
  return out;
}

}  // namespace

std::vector<Example> Make(int size, std::uint64_t seed) {
  if (size < 1) throw InputError("fixture size must be positive");
  static constexpr std::array<const char*, 5> kTemplatesEn = {
      "a %S is %A", "a %S is %A %P", "the %S is %A %P", "there is a %S %A",
      "a %J %S is %A"};
  static constexpr std::array<const char*, 5> kTemplatesZh = {
      "一 个 %S 在 %A", "一 个 %S 在 %P %A", "%S 正在 %P %A", "有 一 个 %S 在 %A",
      "%J 的 %S 在 %A"};

  std::vector<Example> out;
  out.reserve(static_cast<size_t>(size));
  for (int i = 0; i < size; ++i) {
    Rng rng(DeriveSeed(seed, {static_cast<std::uint64_t>(i)}));
    Example ex;
    char id[16];
    std::snprintf(id, sizeof id, "vid%03d", i);
    ex.id = id;
    ex.subject = i % kSubjects;
    ex.action = (i / kSubjects + i) % kActions;
    ex.feature = Eigen::VectorXd::Zero(kFeatureSize);
    ex.feature[ex.subject] = 1.0;
    ex.feature[kSubjects + ex.action] = 1.0;
    for (int k = 0; k < kNoiseDims; ++k) {
      ex.feature[kSubjects + kActions + k] = rng.Uniform(-0.1, 0.1);
    }
    const auto place = static_cast<size_t>(rng.UniformInt(kPlaceEn.size()));
    const auto adj = static_cast<size_t>(rng.UniformInt(kAdjEn.size()));
    for (const char* t : kTemplatesEn) {
      ex.refs_en.push_back(Fill(t, kSubjectEn[ex.subject],
                                kActionEn[ex.action], kPlaceEn[place],
                                kAdjEn[adj]));
    }
    for (const char* t : kTemplatesZh) {
      ex.refs_zh.push_back(Fill(t, kSubjectZh[ex.subject],
                                kActionZh[ex.action], kPlaceZh[place],
                                kAdjZh[adj]));
    }
    out.push_back(std::move(ex));
  }
  return out;
}

std::vector<FeatureRow> Features(const std::vector<Example>& examples) {
  std::vector<FeatureRow> out;
  for (const Example& ex : examples) out.push_back({ex.id, ex.feature});
  return out;
}

std::vector<ReferenceRow> References(const std::vector<Example>& examples,
                                     Language language) {
  std::vector<ReferenceRow> out;
  for (const Example& ex : examples) {
    out.push_back(
        {ex.id, language == Language::kEnglish ? ex.refs_en : ex.refs_zh});
  }
  return out;
}

void Write(const std::vector<Example>& examples, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create directory '" + dir + "'");
  std::vector<nlohmann::json> features;
  std::vector<nlohmann::json> en;
  std::vector<nlohmann::json> zh;
  for (const Example& ex : examples) {
    features.push_back(
        {{"id", ex.id},
         {"feature", std::vector<double>(ex.feature.data(),
                                         ex.feature.data() + ex.feature.size())}});
    en.push_back({{"id", ex.id}, {"refs", ex.refs_en}});
    zh.push_back({{"id", ex.id}, {"refs", ex.refs_zh}});
  }
  const std::filesystem::path base(dir);
  WriteJsonLines((base / "features.jsonl").string(), features);
  WriteJsonLines((base / "refs.en.jsonl").string(), en);
  WriteJsonLines((base / "refs.zh.jsonl").string(), zh);
}

}  // namespace captionforge::fixture
