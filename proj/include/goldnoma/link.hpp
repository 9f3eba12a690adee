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
#include <vector>

#include "goldnoma/channel.hpp"
#include "goldnoma/cpf.hpp"
#include "goldnoma/gold_codes.hpp"
#include "goldnoma/phy.hpp"
#include "goldnoma/scenario.hpp"

namespace goldnoma::harness {

enum class LinkMode {
    gold,      // Gold-spread pilot and data, CPF refinement
    baseline,  // no spreading, unspread common pilot, LS estimate only
};

/// Everything that stays fixed across the trials of one sweep point.
struct LinkSetup {
    ScenarioConfig cfg;
    LinkMode mode = LinkMode::gold;
    phy::FrameSpec spec;
    std::vector<channel::UserProfile> profiles;
    std::vector<gold::GoldCode> codes;  // per user
    phy::PowerAllocation alloc;
    phy::PilotMode pilot_mode = phy::PilotMode::gold_spread;
    channel::ChannelParams channel_params;
    std::size_t near_user = 0;
    std::size_t far_user = 0;

    std::size_t code_length() const { return codes.front().length(); }
};

/// Users evenly spaced between d_near and d_far; the first is near, the
/// last is far.
std::vector<channel::UserProfile> make_profiles(const ScenarioConfig& cfg, std::size_t n_users);

LinkSetup make_link_setup(const ScenarioConfig& cfg, LinkMode mode, int code_degree);

/// Total in-band noise power giving `snr_db` as the mean received SNR of a
/// unit-share user at the reference distance d_near (before shadowing and
/// fading). Zero when the scenario is noiseless.
double noise_power_for_snr(const ScenarioConfig& cfg, double snr_db);

struct UserOutcome {
    std::size_t symbol_errors = 0;
    std::size_t symbols = 0;
    std::size_t reliable = 0;
    Complex h_true;
    Complex h_raw;
    Complex h_final;
    Complex x_soft;  // first data subcarrier, pass-one correlator over h_raw
    double phi = 0.0;  // total power allocated to the user
};

struct FrameOutcome {
    std::vector<UserOutcome> users;
};

/// One frame through build -> channel -> receive -> estimate -> SIC -> CPF
/// -> SIC. `alloc` overrides the setup's allocation when the geometry moves.
FrameOutcome simulate_frame(const LinkSetup& setup, const cpf::CpfStrategy& strategy,
                            std::uint64_t trial, double noise_power_w,
                            const channel::ChannelRealization& chan,
                            const phy::PowerAllocation& alloc);

channel::ChannelRealization block_channel(const LinkSetup& setup, std::uint64_t trial);

/// Time-correlated channel trace: users random-walk in distance, small-scale
/// fading and shadowing follow first-order autoregressive processes.
class TraceGenerator {
public:
    struct Step {
        std::vector<channel::UserProfile> profiles;
        channel::ChannelRealization realization;
    };

    TraceGenerator(const ScenarioConfig& cfg, std::vector<channel::UserProfile> profiles);

    Step next();

private:
    ScenarioConfig cfg_;
    std::vector<channel::UserProfile> profiles_;
    Rng rng_;
    std::vector<Complex> fading_;
    std::vector<double> shadowing_db_;
    bool started_ = false;
};

}  // namespace goldnoma::harness
