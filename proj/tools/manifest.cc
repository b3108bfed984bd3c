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

#include "manifest.h"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>

#include "captionforge/errors.h"
#include "captionforge/jsonl.h"
#include "captionforge/version.h"

namespace captionforge::cli {

std::string Sha256File(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "' for reading");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 initialisation failed");
  }
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) {
      EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<size_t>(in.gcount()));
    }
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

void RunManifest::AddInput(std::string role, std::string path) {
  inputs.emplace_back(std::move(role), std::move(path));
}

nlohmann::json RunManifest::ToJson() const {
  nlohmann::json in = nlohmann::json::array();
  for (const auto& [role, path] : inputs) {
    in.push_back({{"role", role}, {"path", path}, {"sha256", Sha256File(path)}});
  }
  return {{"manifest_version", kManifestVersion},
          {"toolkit_version", kToolkitVersion},
          {"command", command},
          {"seed", seed},
          {"config", config},
          {"inputs", std::move(in)},
          {"results", results}};
}

void RunManifest::Write(const std::string& path) const {
  WriteJsonFile(path, ToJson());
}

std::string ManifestPathFor(const std::string& output) {
  return output + ".manifest.json";
}

}  // namespace captionforge::cli
