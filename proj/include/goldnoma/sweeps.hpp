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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "goldnoma/cpf.hpp"
#include "goldnoma/scenario.hpp"

namespace goldnoma::harness {

/// One CSV line: axis,user_id,metric,value,stderr,trials. Aggregates over
/// users use user_id = -1.
struct SweepRow {
    double axis = 0.0;
    long user_id = -1;
    std::string metric;
    double value = 0.0;
    double stderr_value = 0.0;
    std::uint64_t trials = 0;
};

struct SweepResult {
    std::string kind;
    std::string axis_name;
    ScenarioConfig config;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<SweepRow> rows;
    std::string fingerprint;

    /// Throws std::out_of_range if the row is absent.
    const SweepRow& at(double axis, long user_id, const std::string& metric) const;
};

struct RunOptions {
    unsigned threads = 1;
};

/// SER per (SNR, code degree, user) with SIC on the refined estimate.
/// Metric names are `ser_l<L_c>`.
SweepResult run_ser_sweep(const ScenarioConfig& cfg, const std::vector<int>& code_degrees,
                          const RunOptions& opts = {});

/// Gold-coded link against the unspread pilot-only baseline on paired
/// seeds. Metrics `ser_gold` and `ser_baseline`.
SweepResult run_baseline_comparison(const ScenarioConfig& cfg,
                                    const std::vector<double>& snr_grid_db,
                                    const RunOptions& opts = {});

/// Default comparison grid: -20 .. 0 dB in the scenario's SNR step.
std::vector<double> baseline_snr_grid(const ScenarioConfig& cfg);

/// Matched-filter pilot estimation MSE against the user count with
/// round-robin code reuse on the length-31 family. Metrics `mse` and
/// `reuse_factor` (user_id -1).
SweepResult run_mse_scaling(const ScenarioConfig& cfg, const std::vector<std::uint64_t>& user_counts,
                            const RunOptions& opts = {});

/// mse_raw, mse_final and their paired difference mse_diff per SNR, per
/// user and aggregated. The strategy comes from cfg.cpf_strategy.
SweepResult run_cpf_eval(const ScenarioConfig& cfg, const RunOptions& opts = {});

/// True composite gains for trials x users in the same order cpf-eval
/// draws them; an oracle prediction file.
cpf::PredictionTable channel_truth(const ScenarioConfig& cfg);

/// FNV-1a over the canonical config, sweep kind, parameters and version.
std::string fingerprint(const ScenarioConfig& cfg, const std::string& kind,
                        const std::vector<std::pair<std::string, std::string>>& params);

std::string_view library_version();

}  // namespace goldnoma::harness
