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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "goldnoma/channel.hpp"
#include "goldnoma/estimation.hpp"
#include "goldnoma/phy.hpp"

namespace goldnoma::harness {

enum class ChannelSource {
    block,  // i.i.d. block fading per trial
    trace,  // time-correlated synthetic trajectory, trial = time step
};

/// Scenario parameters. Defaults reproduce the single-cell setup with the
/// near/far two-user geometry.
struct ScenarioConfig {
    int cells = 1;
    double max_power_dbm = 43.0;
    double bandwidth_hz = 5e6;
    double carrier_frequency_hz = 2e9;
    double path_loss_exponent = 3.76;
    double shadowing_sigma_db = 10.0;
    double noise_psd_dbm_per_hz = -174.0;
    double noise_figure_db = 7.0;
    double min_distance_m = 10.0;
    std::uint64_t trials = 10000;
    double snr_min_db = -15.0;
    double snr_max_db = 25.0;
    double snr_step_db = 5.0;
    double d_near_m = 20.0;
    double d_far_m = 50.0;

    int code_degree = 5;
    std::uint64_t n_users = 2;
    std::uint64_t n_subcarriers = 16;
    double pilot_fraction = 0.0625;
    phy::AllocationMode allocation = phy::AllocationMode::inverse;
    double far_share_cap = 0.8;
    double w_near = 0.3;
    double w_far = 0.7;
    std::uint64_t k_select = 8;
    double reliability_threshold = 0.7;
    std::string cpf_strategy = "baseline";
    std::string prediction_file;
    ChannelSource channel_source = ChannelSource::block;
    std::uint64_t master_seed = 1;
    bool perfect_csi = false;
    bool noiseless = false;

    double scaling_snr_db = 10.0;

    double dataset_shadowing_sigma_db = 8.0;
    double dataset_snr_db = 10.0;
    double dataset_time_step_s = 0.06;
    double dataset_fading_correlation = 0.99;
    double dataset_shadowing_correlation = 0.999;
    double dataset_speed_mps = 1.0;

    /// Throws std::invalid_argument naming the offending key.
    void validate() const;

    double total_power_w() const;
    channel::NoiseSpec noise_spec() const;
    phy::FrameSpec frame_spec() const;
    estimation::SelectionConfig selection() const;
    phy::AllocationParams allocation_params() const;
    std::vector<double> snr_grid_db() const;

    /// Every key as `key=value`, one per line, in schema order.
    std::string canonical_text() const;
};

struct ConfigKey {
    std::string_view name;
    std::string_view unit;
    std::string_view description;
};

/// Schema order; mirrors config/scenario.schema.
const std::vector<ConfigKey>& config_schema();

/// Applies `key=value` lines on top of the defaults. Blank lines and lines
/// starting with '#' are ignored; unknown keys and malformed values are
/// errors carrying the line number.
ScenarioConfig parse_config(std::istream& in, const std::string& source = "<stream>");
ScenarioConfig load_config(const std::filesystem::path& path);

/// Sets one key; used by the parser and CLI overrides.
void set_config_value(ScenarioConfig& cfg, std::string_view key, std::string_view value);

std::string_view to_string(phy::AllocationMode mode);
std::string_view to_string(ChannelSource source);

}  // namespace goldnoma::harness
