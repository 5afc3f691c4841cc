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

#ifndef SCPLAN__INGEST__DATASET_HPP_
#define SCPLAN__INGEST__DATASET_HPP_

#include "scplan/ingest/features.hpp"
#include "scplan/ingest/tracks.hpp"

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace scplan::ingest
{

enum class Split { Train, Val, Test };

std::string_view to_string(Split split);
Split split_from_string(std::string_view name);

struct Transition
{
  std::int64_t track_id{0};
  std::int64_t frame{0};
  core::State s_t;
  core::State s_next;
  FeatureVector features{};
  Split split{Split::Train};
};

struct TransitionDataset
{
  std::vector<Transition> transitions;

  std::vector<const Transition *> of_split(Split split) const;
  std::size_t count(Split split) const;
};

/// One transition per pair of consecutive frames within a track. Neighbours are
/// the (at most five) nearest other tracks present at the source frame; the
/// goal is the track's final position.
TransitionDataset build_transitions(
  const std::vector<TrackRecord> & tracks, const core::Limits & limits,
  double ttc_cap = kDefaultTtcCap);

/// Assigns whole tracks to train/val/test. Deterministic given the seed and
/// independent of the input order.
TransitionDataset split_dataset(
  TransitionDataset ds, const std::array<double, 3> & fractions, std::uint64_t seed);

}  // namespace scplan::ingest

#endif  // SCPLAN__INGEST__DATASET_HPP_
