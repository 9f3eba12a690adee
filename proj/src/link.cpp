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

#include "goldnoma/link.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "goldnoma/estimation.hpp"

namespace goldnoma::harness {

std::vector<channel::UserProfile> make_profiles(const ScenarioConfig& cfg, std::size_t n_users) {
    if (n_users == 0) throw std::invalid_argument("make_profiles: need at least one user");
    std::vector<channel::UserProfile> profiles(n_users);
    for (std::size_t n = 0; n < n_users; ++n) {
        auto& p = profiles[n];
        p.user_id = n;
        p.path_loss_exponent = cfg.path_loss_exponent;
        p.distance_m = n_users == 1 ? cfg.d_near_m
                                    : cfg.d_near_m + (cfg.d_far_m - cfg.d_near_m) *
                                                         static_cast<double>(n) /
                                                         static_cast<double>(n_users - 1);
        p.role = n == 0 ? channel::Role::near
                        : (n + 1 == n_users ? channel::Role::far : channel::Role::generic);
    }
    return profiles;
}

LinkSetup make_link_setup(const ScenarioConfig& cfg, LinkMode mode, int code_degree) {
    cfg.validate();
    LinkSetup s;
    s.cfg = cfg;
    s.mode = mode;
    s.spec = cfg.frame_spec();
    s.profiles = make_profiles(cfg, cfg.n_users);
    s.channel_params = {cfg.shadowing_sigma_db, cfg.min_distance_m};
    s.near_user = 0;
    s.far_user = cfg.n_users - 1;

    if (mode == LinkMode::gold) {
        const auto family = gold::generate_gold_family(code_degree);
        const auto assignment = gold::assign_codes(family, cfg.n_users);
        for (std::size_t n = 0; n < cfg.n_users; ++n) {
            s.profiles[n].code_index = assignment.code_of_user[n];
            s.codes.push_back(family[assignment.code_of_user[n]]);
        }
        s.pilot_mode = phy::PilotMode::gold_spread;
    } else {
        s.codes.assign(cfg.n_users, gold::GoldCode::from_chips({1}));
        s.pilot_mode = phy::PilotMode::unspread;
    }
    s.alloc = phy::allocate_power(s.profiles, cfg.total_power_w(), s.spec.n_subcarriers,
                                  cfg.allocation_params());
    return s;
}

double noise_power_for_snr(const ScenarioConfig& cfg, double snr_db) {
    if (cfg.noiseless) return 0.0;
    const double reference_rx = cfg.total_power_w() *
                                channel::path_loss_linear(cfg.d_near_m, cfg.path_loss_exponent);
    return reference_rx / std::pow(10.0, snr_db / 10.0);
}

channel::ChannelRealization block_channel(const LinkSetup& setup, std::uint64_t trial) {
    auto rng = make_rng(setup.cfg.master_seed, trial, Stream::channel);
    return channel::sample_block_fading(setup.profiles, setup.channel_params, rng);
}

namespace {

std::span<const double> data_part(const phy::PowerAllocation& alloc, const phy::FrameSpec& spec,
                                  std::size_t user) {
    return alloc.row(user).subspan(spec.pilot_count(), spec.data_count());
}

}  // namespace

FrameOutcome simulate_frame(const LinkSetup& setup, const cpf::CpfStrategy& strategy,
                            std::uint64_t trial, double noise_power_w,
                            const channel::ChannelRealization& chan,
                            const phy::PowerAllocation& alloc) {
    const auto& spec = setup.spec;
    const std::size_t n_users = spec.n_users;

    auto sym_rng = make_rng(setup.cfg.master_seed, trial, Stream::symbols);
    std::bernoulli_distribution coin(0.5);
    std::vector<std::vector<Complex>> symbols(n_users, std::vector<Complex>(spec.data_count()));
    for (auto& row : symbols) {
        for (auto& s : row) s = coin(sym_rng) ? Complex(1.0, 0.0) : Complex(-1.0, 0.0);
    }

    const auto frame = phy::build_frame(spec, alloc, symbols, setup.codes, setup.pilot_mode);
    auto noise_rng = make_rng(setup.cfg.master_seed, trial, Stream::noise);
    const auto observations = phy::receive(frame, chan, noise_power_w, noise_rng);

    const double per_sample_noise = noise_power_w / static_cast<double>(spec.n_subcarriers);
    FrameOutcome out;
    out.users.resize(n_users);
    for (std::size_t n = 0; n < n_users; ++n) {
        auto& u = out.users[n];
        const auto& obs = observations[n];
        u.h_true = chan.composite_gain[n];
        u.h_raw = setup.cfg.perfect_csi
                      ? u.h_true
                      : estimation::pilot_estimate(obs, spec, setup.codes[n], alloc, n,
                                                   setup.pilot_mode);

        std::vector<Complex> est(n_users, u.h_raw);
        auto sic = phy::sic_detect(obs, spec, setup.codes, alloc, est);
        u.phi = alloc.user_total(n);
        if (spec.data_count() > 0 && u.h_raw != Complex{}) {
            const double amp = static_cast<double>(setup.code_length()) *
                               std::sqrt(alloc.at(n, spec.data_subcarrier(0)));
            if (amp > 0.0) u.x_soft = sic.layers[n].symbols[0].correlator / (u.h_raw * amp);
        }

        u.h_final = u.h_raw;
        if (!setup.cfg.perfect_csi) {
            cpf::CpfInput in;
            in.trial = trial;
            in.user = n;
            in.h_raw = u.h_raw;
            in.phi_row = data_part(alloc, spec, n);
            in.phi_near = data_part(alloc, spec, setup.near_user);
            in.phi_far = data_part(alloc, spec, setup.far_user);
            in.x_hat = sic.layers[n].symbols;
            in.code_length = setup.code_length();
            in.noise_power = per_sample_noise;
            if (const auto* base = dynamic_cast<const cpf::BaselineCpf*>(&strategy)) {
                u.reliable = base->reliable_count(in);
            }
            u.h_final = cpf::cpf_refine(in, strategy);
            if (u.h_final != u.h_raw) {
                std::fill(est.begin(), est.end(), u.h_final);
                sic = phy::sic_detect(obs, spec, setup.codes, alloc, est);
            }
        }

        const auto& layer = sic.layers[n];
        u.symbols = spec.data_count();
        if (!layer.detectable) {
            u.symbol_errors = u.symbols;
            continue;
        }
        for (std::size_t j = 0; j < spec.data_count(); ++j) {
            if (layer.symbols[j].symbol != symbols[n][j]) ++u.symbol_errors;
        }
    }
    return out;
}

TraceGenerator::TraceGenerator(const ScenarioConfig& cfg,
                               std::vector<channel::UserProfile> profiles)
    : cfg_(cfg),
      profiles_(std::move(profiles)),
      rng_(derive_seed(cfg.master_seed, 0, Stream::trajectory)) {}

TraceGenerator::Step TraceGenerator::next() {
    std::normal_distribution<double> unit(0.0, 1.0);
    const std::size_t n_users = profiles_.size();
    const double half = std::sqrt(0.5);
    const double sigma = cfg_.dataset_shadowing_sigma_db;

    if (!started_) {
        fading_.resize(n_users);
        shadowing_db_.resize(n_users);
        for (std::size_t n = 0; n < n_users; ++n) {
            const double re = unit(rng_);
            const double im = unit(rng_);
            fading_[n] = Complex(half * re, half * im);
            shadowing_db_[n] = sigma * unit(rng_);
        }
        started_ = true;
    } else {
        const double a = cfg_.dataset_fading_correlation;
        const double b = cfg_.dataset_shadowing_correlation;
        const double innov_a = std::sqrt(1.0 - a * a);
        const double innov_b = std::sqrt(1.0 - b * b);
        const double step_m = cfg_.dataset_speed_mps * cfg_.dataset_time_step_s;
        const double lo = cfg_.min_distance_m;
        const double hi = 2.0 * cfg_.d_far_m;
        for (std::size_t n = 0; n < n_users; ++n) {
            const double re = unit(rng_);
            const double im = unit(rng_);
            fading_[n] = a * fading_[n] + innov_a * Complex(half * re, half * im);
            shadowing_db_[n] = b * shadowing_db_[n] + innov_b * sigma * unit(rng_);
            double d = profiles_[n].distance_m + step_m * unit(rng_);
            if (d < lo) d = 2.0 * lo - d;
            if (d > hi) d = 2.0 * hi - d;
            profiles_[n].distance_m = std::clamp(d, lo, hi);
        }
    }

    std::vector<double> loss(n_users);
    for (std::size_t n = 0; n < n_users; ++n) {
        loss[n] = channel::path_loss_linear(profiles_[n].distance_m, profiles_[n].path_loss_exponent);
    }
    return {profiles_, channel::make_realization(fading_, shadowing_db_, std::move(loss))};
}

}  // namespace goldnoma::harness
