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

#include "goldnoma/phy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace goldnoma::phy {

std::size_t FrameSpec::pilot_count() const {
    return static_cast<std::size_t>(std::floor(pilot_fraction * static_cast<double>(n_subcarriers)));
}

void FrameSpec::validate() const {
    if (!(pilot_fraction > 0.0 && pilot_fraction < 1.0)) {
        throw std::invalid_argument("frame: pilot fraction must lie in (0, 1)");
    }
    if (pilot_count() < 1) {
        throw std::invalid_argument("frame: floor(p*K) must be >= 1 (p=" +
                                    std::to_string(pilot_fraction) +
                                    ", K=" + std::to_string(n_subcarriers) + ")");
    }
    if (data_count() < 1) throw std::invalid_argument("frame: no data subcarriers left");
    if (n_users < 1) throw std::invalid_argument("frame: need at least one user");
    if (n_subcarriers < n_users) {
        throw std::invalid_argument("frame: K=" + std::to_string(n_subcarriers) +
                                    " smaller than N=" + std::to_string(n_users));
    }
}

PowerAllocation::PowerAllocation(std::size_t n_users, std::size_t n_subcarriers,
                                 std::vector<double> phi)
    : n_users_(n_users), n_subcarriers_(n_subcarriers), phi_(std::move(phi)) {
    if (phi_.size() != n_users_ * n_subcarriers_) {
        throw std::invalid_argument("power allocation: matrix size mismatch");
    }
}

PowerAllocation PowerAllocation::from_shares(std::span<const double> shares, double p_total,
                                             std::size_t n_subcarriers) {
    if (shares.empty() || n_subcarriers == 0) {
        throw std::invalid_argument("power allocation: empty shares or zero subcarriers");
    }
    if (!(p_total > 0.0)) throw std::invalid_argument("power allocation: P_total must be > 0");
    double sum = 0.0;
    for (double s : shares) {
        if (!(s >= 0.0)) throw std::invalid_argument("power allocation: negative share");
        sum += s;
    }
    if (!(sum > 0.0)) throw std::invalid_argument("power allocation: all shares zero");
    std::vector<double> phi(shares.size() * n_subcarriers);
    for (std::size_t n = 0; n < shares.size(); ++n) {
        const double per_k = p_total * (shares[n] / sum) / static_cast<double>(n_subcarriers);
        std::fill_n(phi.begin() + static_cast<std::ptrdiff_t>(n * n_subcarriers),
                    n_subcarriers, per_k);
    }
    return PowerAllocation(shares.size(), n_subcarriers, std::move(phi));
}

double PowerAllocation::user_total(std::size_t user) const {
    const auto r = row(user);
    return std::accumulate(r.begin(), r.end(), 0.0);
}

double PowerAllocation::total() const { return std::accumulate(phi_.begin(), phi_.end(), 0.0); }

void PowerAllocation::validate(double p_total) const {
    for (double v : phi_) {
        if (!(v >= 0.0)) throw std::invalid_argument("power allocation: negative entry");
    }
    if (total() > p_total * (1.0 + 1e-9)) {
        throw std::invalid_argument("power allocation: total " + std::to_string(total()) +
                                    " W exceeds budget " + std::to_string(p_total) + " W");
    }
}

PowerAllocation allocate_power(std::span<const channel::UserProfile> profiles, double p_total,
                               std::size_t n_subcarriers, const AllocationParams& params) {
    if (profiles.empty()) throw std::invalid_argument("allocate_power: no users");
    if (!(p_total > 0.0)) throw std::invalid_argument("allocate_power: P_total must be > 0");
    if (!(params.far_share_cap >= 0.5 && params.far_share_cap <= 1.0)) {
        throw std::invalid_argument("allocate_power: far_share_cap must lie in [0.5, 1]");
    }
    const double k = static_cast<double>(n_subcarriers);
    std::vector<double> weights(profiles.size());
    for (std::size_t n = 0; n < profiles.size(); ++n) {
        const double d = profiles[n].distance_m;
        if (!(d > 0.0)) {
            throw std::invalid_argument("allocate_power: user " +
                                        std::to_string(profiles[n].user_id) +
                                        " has zero distance");
        }
        const double gain = p_total * std::pow(d, -profiles[n].path_loss_exponent) / k;
        weights[n] = params.mode == AllocationMode::literal ? gain : 1.0 / gain;
    }
    if (params.mode == AllocationMode::inverse && params.far_share_cap < 1.0) {
        const double ratio = params.far_share_cap / (1.0 - params.far_share_cap);
        const double floor_w = *std::min_element(weights.begin(), weights.end());
        for (double& w : weights) w = std::min(w, ratio * floor_w);
    }
    return PowerAllocation::from_shares(weights, p_total, n_subcarriers);
}

ChipVector TransmitFrame::pilot_chips(std::size_t pilot) const {
    const auto& layers = pilot_layers.at(pilot);
    ChipVector sum(layers.empty() ? 0 : layers.front().size());
    for (const auto& layer : layers) {
        for (std::size_t c = 0; c < sum.size(); ++c) sum[c] += layer[c];
    }
    return sum;
}

TransmitFrame TransmitFrame::scaled(Complex factor) const {
    TransmitFrame out = *this;
    for (auto& layers : out.pilot_layers) {
        for (auto& layer : layers) {
            for (auto& c : layer) c *= factor;
        }
    }
    for (auto& slot : out.data) {
        for (auto& c : slot) c *= factor;
    }
    return out;
}

double TransmitFrame::mean_data_chip_energy() const {
    double energy = 0.0;
    std::size_t count = 0;
    for (const auto& slot : data) {
        for (const auto& c : slot) energy += std::norm(c);
        count += slot.size();
    }
    return count == 0 ? 0.0 : energy / static_cast<double>(count);
}

TransmitFrame build_frame(const FrameSpec& spec, const PowerAllocation& alloc,
                          std::span<const std::vector<Complex>> symbols,
                          std::span<const gold::GoldCode> codes, PilotMode pilot_mode) {
    spec.validate();
    const std::size_t n_users = spec.n_users;
    if (alloc.n_users() != n_users || alloc.n_subcarriers() != spec.n_subcarriers) {
        throw std::invalid_argument("build_frame: allocation is " +
                                    std::to_string(alloc.n_users()) + "x" +
                                    std::to_string(alloc.n_subcarriers()) + ", frame needs " +
                                    std::to_string(n_users) + "x" +
                                    std::to_string(spec.n_subcarriers));
    }
    if (symbols.size() != n_users || codes.size() != n_users) {
        throw std::invalid_argument("build_frame: need one symbol vector and one code per user");
    }
    const std::size_t len = codes.front().length();
    for (std::size_t n = 0; n < n_users; ++n) {
        if (codes[n].length() != len) throw std::invalid_argument("build_frame: code lengths differ");
        if (symbols[n].size() != spec.data_count()) {
            throw std::invalid_argument("build_frame: user " + std::to_string(n) + " has " +
                                        std::to_string(symbols[n].size()) +
                                        " symbols, frame has " +
                                        std::to_string(spec.data_count()) + " data subcarriers");
        }
    }

    TransmitFrame frame;
    frame.spec = spec;
    frame.pilot_mode = pilot_mode;
    frame.symbols.assign(symbols.begin(), symbols.end());

    frame.pilot_layers.resize(spec.pilot_count());
    for (std::size_t p = 0; p < spec.pilot_count(); ++p) {
        auto& layers = frame.pilot_layers[p];
        layers.resize(n_users);
        for (std::size_t n = 0; n < n_users; ++n) {
            const Complex amp = std::sqrt(alloc.at(n, p)) * spec.pilot_symbol;
            if (pilot_mode == PilotMode::unspread) {
                layers[n] = ChipVector{amp};
                continue;
            }
            const auto chips = codes[n].chips();
            layers[n].resize(len);
            for (std::size_t c = 0; c < len; ++c) layers[n][c] = amp * static_cast<double>(chips[c]);
        }
    }

    frame.data.assign(spec.data_count(), ChipVector(len));
    for (std::size_t j = 0; j < spec.data_count(); ++j) {
        const std::size_t k = spec.data_subcarrier(j);
        auto& slot = frame.data[j];
        for (std::size_t n = 0; n < n_users; ++n) {
            const Complex amp = std::sqrt(alloc.at(n, k)) * symbols[n][j];
            const auto chips = codes[n].chips();
            for (std::size_t c = 0; c < len; ++c) slot[c] += amp * static_cast<double>(chips[c]);
        }
    }
    return frame;
}

std::vector<UserObservation> receive(const TransmitFrame& frame,
                                     const channel::ChannelRealization& chan,
                                     double noise_power_w, Rng& rng) {
    const std::size_t n_users = frame.spec.n_users;
    if (chan.size() != n_users) {
        throw std::invalid_argument("receive: channel has " + std::to_string(chan.size()) +
                                    " users, frame has " + std::to_string(n_users));
    }
    const double per_sample = noise_power_w / static_cast<double>(frame.spec.n_subcarriers);

    std::vector<ChipVector> pilot(frame.pilot_layers.size());
    for (std::size_t p = 0; p < pilot.size(); ++p) {
        const auto& layers = frame.pilot_layers[p];
        pilot[p].assign(layers.front().size(), Complex{});
        for (std::size_t n = 0; n < n_users; ++n) {
            for (std::size_t c = 0; c < pilot[p].size(); ++c) {
                pilot[p][c] += chan.composite_gain[n] * layers[n][c];
            }
        }
        channel::add_awgn_inplace(pilot[p], per_sample, rng);
    }

    std::vector<UserObservation> out(n_users);
    for (std::size_t n = 0; n < n_users; ++n) {
        auto& obs = out[n];
        obs.user = n;
        obs.pilot = pilot;
        obs.data.resize(frame.data.size());
        for (std::size_t j = 0; j < frame.data.size(); ++j) {
            obs.data[j].resize(frame.data[j].size());
            for (std::size_t c = 0; c < frame.data[j].size(); ++c) {
                obs.data[j][c] = chan.composite_gain[n] * frame.data[j][c];
            }
            channel::add_awgn_inplace(obs.data[j], per_sample, rng);
        }
    }
    return out;
}

std::vector<UserObservation> receive(const TransmitFrame& frame,
                                     const channel::ChannelRealization& chan,
                                     double noise_power_w, std::uint64_t seed) {
    Rng rng(seed);
    return receive(frame, chan, noise_power_w, rng);
}

Complex despread(std::span<const Complex> chips, std::span<const int> code) {
    if (chips.size() != code.size()) {
        throw std::invalid_argument("despread: " + std::to_string(chips.size()) +
                                    " chips against a length-" + std::to_string(code.size()) +
                                    " code");
    }
    Complex acc{};
    for (std::size_t c = 0; c < chips.size(); ++c) acc += chips[c] * static_cast<double>(code[c]);
    return acc;
}

std::vector<std::size_t> sic_order(const PowerAllocation& alloc) {
    std::vector<std::size_t> order(alloc.n_users());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> totals(alloc.n_users());
    for (std::size_t n = 0; n < totals.size(); ++n) totals[n] = alloc.user_total(n);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return totals[a] > totals[b]; });
    return order;
}

SicResult sic_detect(const UserObservation& obs, const FrameSpec& spec,
                     std::span<const gold::GoldCode> codes, const PowerAllocation& alloc,
                     std::span<const Complex> chan_est) {
    const std::size_t n_users = alloc.n_users();
    if (codes.size() != n_users || chan_est.size() != n_users) {
        throw std::invalid_argument("sic_detect: need one code and one estimate per user");
    }
    if (obs.data.size() != spec.data_count()) {
        throw std::invalid_argument("sic_detect: observation has " +
                                    std::to_string(obs.data.size()) +
                                    " data subcarriers, frame has " +
                                    std::to_string(spec.data_count()));
    }

    SicResult result;
    result.order = sic_order(alloc);
    result.layers.resize(n_users);
    for (std::size_t n = 0; n < n_users; ++n) {
        result.layers[n].detectable = chan_est[n] != Complex{} && alloc.user_total(n) > 0.0;
        if (result.layers[n].detectable) result.layers[n].symbols.resize(spec.data_count());
    }

    const double len = static_cast<double>(codes.front().length());
    for (std::size_t j = 0; j < spec.data_count(); ++j) {
        const std::size_t k = spec.data_subcarrier(j);
        ChipVector residual = obs.data[j];
        for (std::size_t n : result.order) {
            if (!result.layers[n].detectable) continue;
            const auto code = codes[n].chips();
            const Complex est = chan_est[n];
            const double amp = std::sqrt(alloc.at(n, k));
            const Complex corr = despread(residual, code);
            const double stat = std::real(std::conj(est) * corr);
            const double decided = stat >= 0.0 ? 1.0 : -1.0;
            const double expected = std::norm(est) * len * amp;

            auto& det = result.layers[n].symbols[j];
            det.symbol = Complex(decided, 0.0);
            det.correlator = corr;
            det.reliability = expected > 0.0 ? std::abs(stat) / expected : 0.0;

            const Complex contribution = est * amp * decided;
            for (std::size_t c = 0; c < residual.size(); ++c) {
                residual[c] -= contribution * static_cast<double>(code[c]);
            }
        }
    }
    return result;
}

}  // namespace goldnoma::phy
