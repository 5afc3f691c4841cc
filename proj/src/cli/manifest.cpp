// Copyright 2026 The scplan Authors
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

#include "scplan/cli/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace scplan::cli
{

std::string sha256_hex(std::string_view bytes)
{
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::string file_sha256(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return sha256_hex(bytes);
}

std::string utc_timestamp()
{
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

FileDigest digest_file(const std::filesystem::path & path, const std::filesystem::path & relative_to)
{
  const auto shown = relative_to.empty() ? path : path.lexically_relative(relative_to);
  return {shown.generic_string(), file_sha256(path)};
}

Json to_json(const RunManifest & m)
{
  const auto digests = [](const std::vector<FileDigest> & files) {
    Json arr = Json::array();
    for (const auto & f : files) arr.push_back({{"path", f.path}, {"sha256", f.sha256}});
    return arr;
  };
  const auto opt = [](const std::optional<std::string> & s) { return s ? Json(*s) : Json(nullptr); };
  return Json{
    {"command", m.command},
    {"config_hash", m.config_hash},
    {"tool_version", m.tool_version},
    {"seed", m.seed},
    {"started_at", opt(m.started_at)},
    {"finished_at", opt(m.finished_at)},
    {"inputs", digests(m.inputs)},
    {"outputs", digests(m.outputs)},
    {"config", m.config},
  };
}

FileDigest write_text(const std::filesystem::path & root, const std::filesystem::path & relative, std::string_view text)
{
  const auto path = root / relative;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return {relative.generic_string(), sha256_hex(text)};
}

void write_manifest(const RunManifest & manifest, const std::filesystem::path & path)
{
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json(manifest).dump(2) << '\n';
}

}  // namespace scplan::cli
