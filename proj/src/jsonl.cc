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

#include "captionforge/jsonl.h"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "captionforge/errors.h"

namespace captionforge {
namespace {

std::string Where(const std::string& path, size_t line) {
  return path + ":" + std::to_string(line) + ": ";
}

std::ifstream OpenForRead(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream OpenForWrite(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  return out;
}

bool IsBlank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

const nlohmann::json& Field(const std::string& path, const JsonLine& row,
                            const char* key) {
  if (!row.value.is_object() || !row.value.contains(key)) {
    throw InputError(Where(path, row.line) + "missing field '" + key + "'");
  }
  return row.value.at(key);
}

std::string StringField(const std::string& path, const JsonLine& row,
                        const char* key) {
  const nlohmann::json& v = Field(path, row, key);
  if (!v.is_string()) {
    throw InputError(Where(path, row.line) + "field '" + key +
                     "' must be a string");
  }
  return v.get<std::string>();
}

}  // namespace

std::vector<JsonLine> ReadJsonLines(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  std::vector<JsonLine> rows;
  std::string text;
  size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (IsBlank(text)) continue;
    nlohmann::json value = nlohmann::json::parse(text, nullptr, false);
    if (value.is_discarded()) {
      throw InputError(Where(path, line) + "malformed JSON");
    }
    rows.push_back({line, std::move(value)});
  }
  return rows;
}

nlohmann::json ReadJsonFile(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  std::stringstream buf;
  buf << in.rdbuf();
  nlohmann::json value = nlohmann::json::parse(buf.str(), nullptr, false);
  if (value.is_discarded()) throw InputError(path + ": malformed JSON");
  return value;
}

void WriteJsonLines(const std::string& path,
                    const std::vector<nlohmann::json>& rows) {
  std::ofstream out = OpenForWrite(path);
  for (const auto& row : rows) out << row.dump() << '\n';
  if (!out) throw InputError("write to '" + path + "' failed");
}

void WriteJsonFile(const std::string& path, const nlohmann::json& value) {
  std::ofstream out = OpenForWrite(path);
  out << value.dump(2) << '\n';
  if (!out) throw InputError("write to '" + path + "' failed");
}

std::vector<CandidateRow> LoadCandidates(const std::string& path) {
  std::vector<CandidateRow> out;
  std::set<std::string> seen;
  for (const JsonLine& row : ReadJsonLines(path)) {
    CandidateRow c{StringField(path, row, "id"),
                   StringField(path, row, "caption")};
    if (!seen.insert(c.id).second) {
      throw InputError(Where(path, row.line) + "duplicate id '" + c.id + "'");
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<ReferenceRow> LoadReferences(const std::string& path) {
  std::vector<ReferenceRow> out;
  std::map<std::string, size_t> index;
  for (const JsonLine& row : ReadJsonLines(path)) {
    const std::string id = StringField(path, row, "id");
    std::vector<std::string> refs;
    if (row.value.contains("refs")) {
      const nlohmann::json& a = row.value.at("refs");
      if (!a.is_array()) {
        throw InputError(Where(path, row.line) + "field 'refs' must be an array");
      }
      for (const auto& r : a) {
        if (!r.is_string()) {
          throw InputError(Where(path, row.line) +
                           "field 'refs' must hold strings");
        }
        refs.push_back(r.get<std::string>());
      }
    } else {
      refs.push_back(StringField(path, row, "caption"));
    }
    auto [it, inserted] = index.emplace(id, out.size());
    if (inserted) out.push_back({id, {}});
    auto& dst = out[it->second].refs;
    dst.insert(dst.end(), refs.begin(), refs.end());
  }
  return out;
}

std::vector<FeatureRow> LoadFeatures(const std::string& path) {
  std::vector<FeatureRow> out;
  std::set<std::string> seen;
  for (const JsonLine& row : ReadJsonLines(path)) {
    FeatureRow f;
    f.id = StringField(path, row, "id");
    const nlohmann::json& a = Field(path, row, "feature");
    if (!a.is_array() || a.empty()) {
      throw InputError(Where(path, row.line) +
                       "field 'feature' must be a non-empty array");
    }
    f.feature.resize(static_cast<Eigen::Index>(a.size()));
    for (size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_number()) {
        throw InputError(Where(path, row.line) + "non-numeric feature entry");
      }
      f.feature[static_cast<Eigen::Index>(i)] = a[i].get<double>();
    }
    if (!f.feature.allFinite()) {
      throw InputError(Where(path, row.line) + "non-finite feature entry");
    }
    if (!out.empty() && out.front().feature.size() != f.feature.size()) {
      throw DimensionMismatchError(Where(path, row.line) + "feature has " +
                                   std::to_string(a.size()) +
                                   " entries, earlier rows have " +
                                   std::to_string(out.front().feature.size()));
    }
    if (!seen.insert(f.id).second) {
      throw InputError(Where(path, row.line) + "duplicate id '" + f.id + "'");
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace captionforge
