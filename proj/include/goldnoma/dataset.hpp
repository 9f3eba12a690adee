// Copyright 2026 The goldnoma Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "goldnoma/scenario.hpp"

namespace goldnoma::harness {

inline constexpr std::string_view kDatasetHeader =
    "time_step,user_id,h_real,h_imag,phi,xhat_real,xhat_imag,h_raw_real,h_raw_imag";

struct DatasetOptions {
    std::uint64_t n_points = 11000;
    std::uint64_t window = 120;
    std::uint64_t horizon = 20;
};

struct DatasetSummary {
    std::filesystem::path csv;
    std::filesystem::path metadata;
    std::uint64_t rows = 0;
    std::uint64_t valid_windows = 0;  // per user
};

std::string dataset_fingerprint(const ScenarioConfig& cfg, const DatasetOptions& opts);

/// Time-correlated trace at dataset_snr_db: one row per (time step, user),
/// truth next to the receiver-side features. Metadata goes to `<path>.json`.
/// Throws std::invalid_argument on bad sizes and std::runtime_error naming
/// the path when it cannot be written.
DatasetSummary export_training_dataset(const ScenarioConfig& cfg, const DatasetOptions& opts,
                                       const std::filesystem::path& path);

}  // namespace goldnoma::harness
