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

#include "goldnoma/channel.hpp"
#include "goldnoma/gold_codes.hpp"
#include "goldnoma/rng.hpp"
#include "goldnoma/types.hpp"

namespace goldnoma::phy {

/// Resource layout of one transmission block. The first pilot_count()
/// subcarriers carry the pilot, the rest carry superimposed user data.
struct FrameSpec {
    std::size_t n_subcarriers = 16;
    double pilot_fraction = 1.0 / 16.0;
    Complex pilot_symbol{1.0, 0.0};
    std::size_t n_users = 2;

    std::size_t pilot_count() const;
    std::size_t data_count() const { return n_subcarriers - pilot_count(); }
    std::size_t data_subcarrier(std::size_t j) const { return pilot_count() + j; }
    void validate() const;
};

/// Per-user, per-subcarrier transmit power in watts (row-major N x K).
class PowerAllocation {
public:
    PowerAllocation() = default;
    PowerAllocation(std::size_t n_users, std::size_t n_subcarriers, std::vector<double> phi);

    /// Uniform over subcarriers; shares are normalized to sum to one.
    static PowerAllocation from_shares(std::span<const double> shares, double p_total,
                                       std::size_t n_subcarriers);

    std::size_t n_users() const noexcept { return n_users_; }
    std::size_t n_subcarriers() const noexcept { return n_subcarriers_; }
    double at(std::size_t user, std::size_t k) const { return phi_.at(user * n_subcarriers_ + k); }
    std::span<const double> row(std::size_t user) const {
        return std::span<const double>(phi_).subspan(user * n_subcarriers_, n_subcarriers_);
    }
    double user_total(std::size_t user) const;
    double total() const;

    /// Checks nonnegativity and sum(phi) <= p_total within 1e-9 relative.
    void validate(double p_total) const;

private:
    std::size_t n_users_ = 0;
    std::size_t n_subcarriers_ = 0;
    std::vector<double> phi_;
};

enum class AllocationMode {
    inverse,  // shares proportional to d^alpha, capped
    literal,  // shares proportional to d^-alpha
};

struct AllocationParams {
    AllocationMode mode = AllocationMode::inverse;
    // Largest share in the two-user case; in general the ratio between the
    // largest and smallest share is capped at cap / (1 - cap).
    double far_share_cap = 0.8;
};

/// Fractional allocation phi_n^k. Raw weights follow the distance law and
/// are normalized so the whole matrix sums to p_total.
PowerAllocation allocate_power(std::span<const channel::UserProfile> profiles, double p_total,
                               std::size_t n_subcarriers, const AllocationParams& params = {});

enum class PilotMode {
    gold_spread,  // each user's pilot is x_p spread by its own code
    unspread,     // single-sample pilot, no spreading
};

/// Transmitted block. Pilot layers are kept per user because the pilot
/// observation superimposes every user's pilot through its own channel.
struct TransmitFrame {
    FrameSpec spec;
    PilotMode pilot_mode = PilotMode::gold_spread;
    std::vector<std::vector<ChipVector>> pilot_layers;  // [pilot][user]
    std::vector<ChipVector> data;                        // [data subcarrier]
    std::vector<std::vector<Complex>> symbols;           // truth, [user][data subcarrier]

    ChipVector pilot_chips(std::size_t pilot) const;
    TransmitFrame scaled(Complex factor) const;
    double mean_data_chip_energy() const;
};

/// x_k = sum_n sqrt(phi_n^k) S_n^k C_n on every data subcarrier; pilots
/// carry sqrt(phi_n^k) x_p C_n per user.
TransmitFrame build_frame(const FrameSpec& spec, const PowerAllocation& alloc,
                          std::span<const std::vector<Complex>> symbols,
                          std::span<const gold::GoldCode> codes,
                          PilotMode pilot_mode = PilotMode::gold_spread);

/// Receiver-side view. `pilot` is the common contaminated pilot observation
/// sum_n g_n * pilot_n + z_p, identical for every user; `data` is g_n * x + z_n.
struct UserObservation {
    std::size_t user = 0;
    std::vector<ChipVector> pilot;
    std::vector<ChipVector> data;
};

/// `noise_power_w` is the total in-band noise; each subcarrier sample gets
/// noise_power_w / K.
std::vector<UserObservation> receive(const TransmitFrame& frame,
                                     const channel::ChannelRealization& chan,
                                     double noise_power_w, Rng& rng);
std::vector<UserObservation> receive(const TransmitFrame& frame,
                                     const channel::ChannelRealization& chan,
                                     double noise_power_w, std::uint64_t seed);

struct DetectedSymbol {
    Complex symbol;
    double reliability = 0.0;  // |decision statistic| / its noiseless value
    Complex correlator;        // despread residual before cancellation
};

struct LayerDetection {
    bool detectable = false;
    std::vector<DetectedSymbol> symbols;  // [data subcarrier]
};

struct SicResult {
    std::vector<std::size_t> order;
    std::vector<LayerDetection> layers;  // [user]
};

/// Decoding order: total allocated power descending, ties by user id.
std::vector<std::size_t> sic_order(const PowerAllocation& alloc);

/// BPSK successive interference cancellation at one receiver.
/// `chan_est[i]` is the gain through which layer i reaches this receiver.
/// Layers with a zero estimate or zero power are flagged undetectable and
/// left in the residual.
SicResult sic_detect(const UserObservation& obs, const FrameSpec& spec,
                     std::span<const gold::GoldCode> codes, const PowerAllocation& alloc,
                     std::span<const Complex> chan_est);

/// Correlator <y, C> = sum_c y[c] * C[c].
Complex despread(std::span<const Complex> chips, std::span<const int> code);

}  // namespace goldnoma::phy
