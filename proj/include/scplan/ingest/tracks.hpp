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

#ifndef SCPLAN__INGEST__TRACKS_HPP_
#define SCPLAN__INGEST__TRACKS_HPP_

#include "scplan/core/types.hpp"

#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace scplan::ingest
{

/// Header-level problem, e.g. a missing required column.
class SchemaError : public std::runtime_error
{
public:
  SchemaError(const std::string & what, std::string column)
  : std::runtime_error(what), column_(std::move(column))
  {
  }
  const std::string & column() const { return column_; }

private:
  std::string column_;
};

/// Row-level problem. `line()` is 1-based and counts the header.
class RowError : public std::runtime_error
{
public:
  RowError(const std::string & what, std::size_t line) : std::runtime_error(what), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

struct TrackRecord
{
  std::int64_t track_id{0};
  std::int64_t frame{0};
  double x{0.0};
  double y{0.0};
  double vx{0.0};
  double vy{0.0};
  double ax{0.0};
  double ay{0.0};

  core::State state() const { return {x, y, vx, vy, ax, ay}; }
  bool operator==(const TrackRecord &) const = default;
};

struct RecordingMeta
{
  double frame_rate{25.0};
  std::string recording_id{"00"};

  double frame_interval() const { return 1.0 / frame_rate; }
};

/// Parses a track CSV. Output is sorted by (track_id, frame).
std::vector<TrackRecord> parse_tracks(std::istream & source, const RecordingMeta & meta);

/// Writes records in the canonical column order with round-trip precision.
std::string serialize_tracks(const std::vector<TrackRecord> & records);

/// Reads `key=value` lines; recognizes frameRate and recordingId.
RecordingMeta parse_meta(std::istream & source);

/// Records grouped per track id, each group sorted by frame.
std::map<std::int64_t, std::vector<TrackRecord>> group_tracks(
  const std::vector<TrackRecord> & records);

}  // namespace scplan::ingest

#endif  // SCPLAN__INGEST__TRACKS_HPP_
