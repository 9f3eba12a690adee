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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "goldnoma/rng.hpp"
#include "goldnoma/types.hpp"

namespace goldnoma::channel {

enum class Role { near, far, generic };

struct UserProfile {
    std::size_t user_id = 0;
    double distance_m = 0.0;
    double path_loss_exponent = 3.76;
    std::size_t code_index = 0;
    Role role = Role::generic;
};

struct ChannelParams {
    double shadowing_sigma_db = 10.0;
    double min_distance_m = 10.0;
};

/// Throws std::invalid_argument if a profile violates the distance or
/// exponent constraints.
void validate_profiles(std::span<const UserProfile> profiles, const ChannelParams& params);

/// Frequency-flat block fading for one frame. All vectors are indexed by
/// position in the profile list.
struct ChannelRealization {
    std::vector<Complex> small_scale;     // unit mean power Rayleigh
    std::vector<double> shadowing_db;
    std::vector<double> path_loss_linear;  // d^-alpha, 1 m reference
    std::vector<Complex> composite_gain;

    std::size_t size() const noexcept { return composite_gain.size(); }

    /// h * sqrt(path_loss * 10^(shadowing_db / 10)); matches composite_gain bit-exactly.
    Complex recompute_composite(std::size_t user) const;
};

double path_loss_linear(double distance_m, double exponent);

ChannelRealization sample_block_fading(std::span<const UserProfile> profiles,
                                       const ChannelParams& params, Rng& rng);
ChannelRealization sample_block_fading(std::span<const UserProfile> profiles,
                                       const ChannelParams& params, std::uint64_t seed);

/// Builds a realization from explicit factors, e.g. for time-correlated
/// channel synthesis.
ChannelRealization make_realization(std::vector<Complex> small_scale,
                                    std::vector<double> shadowing_db,
                                    std::vector<double> path_loss_linear);

struct NoiseSpec {
    double psd_dbm_per_hz = -174.0;
    double bandwidth_hz = 5e6;
    double noise_figure_db = 7.0;

    double noise_power_dbm() const;
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Thermal noise power in watts over the full bandwidth.
double noise_power(const NoiseSpec& spec);

/// Adds circular complex Gaussian noise of total variance `noise_power_w`
/// per sample.
void add_awgn_inplace(std::span<Complex> samples, double noise_power_w, Rng& rng);
ChipVector add_awgn(std::span<const Complex> samples, double noise_power_w,
                    std::uint64_t seed);

}  // namespace goldnoma::channel
