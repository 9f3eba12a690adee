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

#include "goldnoma/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace goldnoma::channel {

void validate_profiles(std::span<const UserProfile> profiles, const ChannelParams& params) {
    if (profiles.empty()) throw std::invalid_argument("channel: empty user profile list");
    for (const auto& p : profiles) {
        if (!(p.distance_m >= params.min_distance_m)) {
            throw std::invalid_argument("channel: user " + std::to_string(p.user_id) +
                                        " distance " + std::to_string(p.distance_m) +
                                        " m below minimum " +
                                        std::to_string(params.min_distance_m) + " m");
        }
        if (!(p.path_loss_exponent >= 0.0)) {
            throw std::invalid_argument("channel: negative path loss exponent for user " +
                                        std::to_string(p.user_id));
        }
    }
}

double path_loss_linear(double distance_m, double exponent) {
    if (!(distance_m > 0.0)) throw std::invalid_argument("channel: distance must be > 0");
    return std::pow(distance_m, -exponent);
}

Complex ChannelRealization::recompute_composite(std::size_t user) const {
    return small_scale.at(user) *
           std::sqrt(path_loss_linear.at(user) * std::pow(10.0, shadowing_db.at(user) / 10.0));
}

ChannelRealization make_realization(std::vector<Complex> small_scale,
                                    std::vector<double> shadowing_db,
                                    std::vector<double> path_loss) {
    if (small_scale.size() != shadowing_db.size() || small_scale.size() != path_loss.size()) {
        throw std::invalid_argument("channel: realization factor sizes differ");
    }
    ChannelRealization r;
    r.small_scale = std::move(small_scale);
    r.shadowing_db = std::move(shadowing_db);
    r.path_loss_linear = std::move(path_loss);
    r.composite_gain.resize(r.small_scale.size());
    for (std::size_t n = 0; n < r.size(); ++n) r.composite_gain[n] = r.recompute_composite(n);
    return r;
}

ChannelRealization sample_block_fading(std::span<const UserProfile> profiles,
                                       const ChannelParams& params, Rng& rng) {
    validate_profiles(profiles, params);
    std::normal_distribution<double> unit(0.0, 1.0);
    const double half = std::sqrt(0.5);

    std::vector<Complex> h(profiles.size());
    std::vector<double> shadow(profiles.size());
    std::vector<double> loss(profiles.size());
    for (std::size_t n = 0; n < profiles.size(); ++n) {
        const double re = unit(rng);
        const double im = unit(rng);
        h[n] = Complex(half * re, half * im);
        shadow[n] = params.shadowing_sigma_db * unit(rng);
        loss[n] = path_loss_linear(profiles[n].distance_m, profiles[n].path_loss_exponent);
    }
    return make_realization(std::move(h), std::move(shadow), std::move(loss));
}

ChannelRealization sample_block_fading(std::span<const UserProfile> profiles,
                                       const ChannelParams& params, std::uint64_t seed) {
    Rng rng(seed);
    return sample_block_fading(profiles, params, rng);
}

double NoiseSpec::noise_power_dbm() const {
    if (!(bandwidth_hz > 0.0)) {
        throw std::invalid_argument("noise: bandwidth must be > 0, got " +
                                    std::to_string(bandwidth_hz));
    }
    return psd_dbm_per_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double noise_power(const NoiseSpec& spec) { return dbm_to_watts(spec.noise_power_dbm()); }

void add_awgn_inplace(std::span<Complex> samples, double noise_power_w, Rng& rng) {
    if (!(noise_power_w >= 0.0)) throw std::invalid_argument("awgn: negative noise power");
    if (noise_power_w == 0.0) return;
    std::normal_distribution<double> unit(0.0, 1.0);
    const double sigma = std::sqrt(noise_power_w / 2.0);
    for (auto& s : samples) {
        const double re = unit(rng);
        const double im = unit(rng);
        s += Complex(sigma * re, sigma * im);
    }
}

ChipVector add_awgn(std::span<const Complex> samples, double noise_power_w,
                    std::uint64_t seed) {
    ChipVector out(samples.begin(), samples.end());
    Rng rng(seed);
    add_awgn_inplace(out, noise_power_w, rng);
    return out;
}

}  // namespace goldnoma::channel
