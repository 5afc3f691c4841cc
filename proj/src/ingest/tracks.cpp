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

#include "scplan/ingest/tracks.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <string_view>

namespace scplan::ingest
{
namespace
{

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> to_double(std::string_view s)
{
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::optional<std::int64_t> to_integer(std::string_view s)
{
  const auto value = to_double(s);
  if (!value || std::floor(*value) != *value || std::abs(*value) > 9.0e15) return std::nullopt;
  return static_cast<std::int64_t>(*value);
}

void append_double(std::string & out, double v)
{
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  out.append(buf.data(), ptr);
}

enum Column { kTrack, kFrame, kX, kY, kVx, kVy, kAx, kAy, kColumnCount };

}  // namespace

std::vector<TrackRecord> parse_tracks(std::istream & source, const RecordingMeta & meta)
{
  if (!(meta.frame_rate > 0.0)) throw core::InvalidInput("frame rate must be positive");

  std::string line;
  if (!std::getline(source, line)) throw SchemaError("track file: header row missing", "");
  const auto header = split_commas(line);

  // Each required column with its accepted spellings.
  static const std::array<std::vector<std::string_view>, kColumnCount> names{{
    {"trackId"},
    {"frame"},
    {"xCenter", "x"},
    {"yCenter", "y"},
    {"xVelocity"},
    {"yVelocity"},
    {"xAcceleration"},
    {"yAcceleration"},
  }};
  std::array<std::size_t, kColumnCount> index{};
  for (int c = 0; c < kColumnCount; ++c) {
    bool found = false;
    for (auto name : names[c]) {
      const auto it = std::find(header.begin(), header.end(), name);
      if (it != header.end()) {
        index[c] = static_cast<std::size_t>(it - header.begin());
        found = true;
        break;
      }
    }
    if (!found) {
      const std::string col(names[c].front());
      throw SchemaError("track file: missing column " + col, col);
    }
  }

  std::vector<std::pair<TrackRecord, std::size_t>> rows;
  std::size_t line_no = 1;
  while (std::getline(source, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_commas(line);
    const auto field = [&](int c) -> std::string_view {
      if (index[c] >= fields.size()) {
        throw RowError("track file: too few fields at line " + std::to_string(line_no), line_no);
      }
      return fields[index[c]];
    };
    const auto number = [&](int c) {
      const auto v = to_double(field(c));
      if (!v) {
        throw RowError(
          "track file: unparsable number '" + std::string(field(c)) + "' at line " +
            std::to_string(line_no),
          line_no);
      }
      return *v;
    };
    const auto integer = [&](int c) {
      const auto v = to_integer(field(c));
      if (!v) {
        throw RowError(
          "track file: unparsable integer '" + std::string(field(c)) + "' at line " +
            std::to_string(line_no),
          line_no);
      }
      return *v;
    };
    TrackRecord r;
    r.track_id = integer(kTrack);
    r.frame = integer(kFrame);
    r.x = number(kX);
    r.y = number(kY);
    r.vx = number(kVx);
    r.vy = number(kVy);
    r.ax = number(kAx);
    r.ay = number(kAy);
    rows.emplace_back(r, line_no);
  }

  std::stable_sort(rows.begin(), rows.end(), [](const auto & a, const auto & b) {
    return std::pair(a.first.track_id, a.first.frame) < std::pair(b.first.track_id, b.first.frame);
  });
  std::vector<TrackRecord> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (
      i > 0 && rows[i].first.track_id == rows[i - 1].first.track_id &&
      rows[i].first.frame == rows[i - 1].first.frame) {
      throw RowError(
        "track file: duplicate frame for track " + std::to_string(rows[i].first.track_id) +
          " at line " + std::to_string(rows[i].second),
        rows[i].second);
    }
    out.push_back(rows[i].first);
  }
  return out;
}

std::string serialize_tracks(const std::vector<TrackRecord> & records)
{
  std::string out =
    "trackId,frame,xCenter,yCenter,xVelocity,yVelocity,xAcceleration,yAcceleration\n";
  for (const auto & r : records) {
    out += std::to_string(r.track_id);
    out += ',';
    out += std::to_string(r.frame);
    for (double v : {r.x, r.y, r.vx, r.vy, r.ax, r.ay}) {
      out += ',';
      append_double(out, v);
    }
    out += '\n';
  }
  return out;
}

RecordingMeta parse_meta(std::istream & source)
{
  RecordingMeta meta;
  std::string line;
  while (std::getline(source, line)) {
    const auto view = trim(line);
    const auto eq = view.find('=');
    if (view.empty() || view.front() == '#' || eq == std::string_view::npos) continue;
    const auto key = trim(view.substr(0, eq));
    const auto value = trim(view.substr(eq + 1));
    if (key == "frameRate") {
      const auto rate = to_double(value);
      if (!rate || *rate <= 0.0) throw core::InvalidInput("meta: invalid frameRate");
      meta.frame_rate = *rate;
    } else if (key == "recordingId" || key == "id") {
      meta.recording_id = std::string(value);
    }
  }
  return meta;
}

std::map<std::int64_t, std::vector<TrackRecord>> group_tracks(
  const std::vector<TrackRecord> & records)
{
  std::map<std::int64_t, std::vector<TrackRecord>> out;
  for (const auto & r : records) out[r.track_id].push_back(r);
  for (auto & [id, rows] : out) {
    std::sort(rows.begin(), rows.end(), [](const auto & a, const auto & b) {
      return a.frame < b.frame;
    });
  }
  return out;
}

}  // namespace scplan::ingest
