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

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "goldnoma/sweeps.hpp"

namespace goldnoma::harness {

inline constexpr std::string_view kSweepHeader = "axis,user_id,metric,value,stderr,trials";

void write_sweep_csv(std::ostream& out, const SweepResult& result);

/// Sidecar JSON text: kind, axis, fingerprint, version, params and every config key.
std::string sidecar_json(const SweepResult& result);

struct WrittenFiles {
    std::filesystem::path csv;
    std::filesystem::path sidecar;
};

/// `<path>.json` next to the CSV.
std::filesystem::path sidecar_path(const std::filesystem::path& csv);

/// Fingerprint recorded in an existing sidecar, if any.
std::optional<std::string> read_fingerprint(const std::filesystem::path& sidecar);

/// Writes `<dir>/<kind>.csv` and its sidecar. Existing output with a
/// different (or unreadable) fingerprint is only replaced when `force` is set.
WrittenFiles save_sweep(const SweepResult& result, const std::filesystem::path& dir,
                        bool force = false);

}  // namespace goldnoma::harness
