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

#ifndef SCPLAN__ICL__MODEL_IO_HPP_
#define SCPLAN__ICL__MODEL_IO_HPP_

#include "scplan/icl/phi_model.hpp"
#include "scplan/ingest/io.hpp"

#include <filesystem>

namespace scplan::icl
{

using ingest::Json;

// Matrices are stored as {"rows", "cols", "data"} with data in row-major order.
Json to_json(const TrainConfig & config);
TrainConfig train_config_from_json(const Json & j);

Json to_json(const ConvexityReport & report);
ConvexityReport convexity_report_from_json(const Json & j);

/// {variant, dims, parameters, normalizer, dt, epsilon, train_config,
///  convexity_reports, training_log}
Json to_json(const PhiModel & model);
PhiModel model_from_json(const Json & j);

void save_model(const PhiModel & model, const std::filesystem::path & path);
PhiModel load_model(const std::filesystem::path & path);

}  // namespace scplan::icl

#endif  // SCPLAN__ICL__MODEL_IO_HPP_
