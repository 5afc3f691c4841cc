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

#ifndef SCPLAN__CLI__MANIFEST_HPP_
#define SCPLAN__CLI__MANIFEST_HPP_

#include "scplan/ingest/io.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scplan::cli
{

using ingest::Json;

constexpr std::string_view kToolVersion = "0.1.0";

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);
std::string file_sha256(const std::filesystem::path & path);

struct FileDigest
{
  std::string path;
  std::string sha256;
};

struct RunManifest
{
  std::string command;
  std::string config_hash;
  std::string tool_version{kToolVersion};
  std::uint64_t seed{0};
  std::optional<std::string> started_at;
  std::optional<std::string> finished_at;
  std::vector<FileDigest> inputs;
  /// Paths relative to the output directory, sorted.
  std::vector<FileDigest> outputs;
  Json config;
};

/// ISO-8601 UTC, second resolution.
std::string utc_timestamp();

FileDigest digest_file(const std::filesystem::path & path, const std::filesystem::path & relative_to = {});

Json to_json(const RunManifest & manifest);

/// Writes `text` and returns its digest entry relative to `root`.
FileDigest write_text(const std::filesystem::path & root, const std::filesystem::path & relative, std::string_view text);

void write_manifest(const RunManifest & manifest, const std::filesystem::path & path);

}  // namespace scplan::cli

#endif  // SCPLAN__CLI__MANIFEST_HPP_
