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

#include "goldnoma/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace goldnoma::estimation {

Complex despread_estimate(std::span<const Complex> y_pilot, const gold::GoldCode& code,
                          Complex pilot_symbol, double pilot_power) {
    if (pilot_symbol == Complex{}) throw std::invalid_argument("despread_estimate: zero pilot symbol");
    if (!(pilot_power > 0.0)) throw std::invalid_argument("despread_estimate: pilot power must be > 0");
    const Complex corr = phy::despread(y_pilot, code.chips());
    return corr / (static_cast<double>(code.length()) * pilot_symbol * std::sqrt(pilot_power));
}

Complex pilot_estimate(const phy::UserObservation& obs, const phy::FrameSpec& spec,
                       const gold::GoldCode& code, const phy::PowerAllocation& alloc,
                       std::size_t user, phy::PilotMode mode) {
    if (obs.pilot.size() != spec.pilot_count()) {
        throw std::invalid_argument("pilot_estimate: observation has " +
                                    std::to_string(obs.pilot.size()) + " pilots, frame has " +
                                    std::to_string(spec.pilot_count()));
    }
    if (spec.pilot_symbol == Complex{}) throw std::invalid_argument("pilot_estimate: zero pilot symbol");
    // LS over pilots: sum conj(a_p) r_p / sum |a_p|^2 with a_p = L sqrt(phi_p) x_p.
    Complex num{};
    double den = 0.0;
    for (std::size_t p = 0; p < spec.pilot_count(); ++p) {
        const double phi = alloc.at(user, p);
        Complex r;
        double len = 1.0;
        if (mode == phy::PilotMode::unspread) {
            if (obs.pilot[p].size() != 1) {
                throw std::invalid_argument("pilot_estimate: unspread pilot must be one sample");
            }
            r = obs.pilot[p].front();
        } else {
            r = phy::despread(obs.pilot[p], code.chips());
            len = static_cast<double>(code.length());
        }
        const Complex a = len * std::sqrt(phi) * spec.pilot_symbol;
        num += std::conj(a) * r;
        den += std::norm(a);
    }
    if (!(den > 0.0)) throw std::invalid_argument("pilot_estimate: user has no pilot power");
    return num / den;
}

Complex matched_filter_estimate(std::span<const Complex> y, const gold::GoldCode& code,
                                Complex reference_amplitude) {
    return phy::despread(y, code.chips()) /
           (static_cast<double>(code.length()) * reference_amplitude);
}

void SelectionConfig::validate(std::size_t n_subcarriers) const {
    if (!(w_near >= 0.0 && w_near <= 1.0) || !(w_far >= 0.0 && w_far <= 1.0)) {
        throw std::invalid_argument("selection: weights must lie in [0, 1]");
    }
    if (k_select > n_subcarriers) {
        throw std::invalid_argument("selection: K_select=" + std::to_string(k_select) +
                                    " exceeds " + std::to_string(n_subcarriers) +
                                    " subcarriers");
    }
}

std::vector<std::size_t> weighted_subcarrier_selection(std::span<const double> phi_near,
                                                       std::span<const double> phi_far,
                                                       const SelectionConfig& cfg) {
    if (phi_near.size() != phi_far.size()) {
        throw std::invalid_argument("selection: phi vectors differ in length");
    }
    cfg.validate(phi_near.size());
    std::vector<double> weighted(phi_near.size());
    for (std::size_t k = 0; k < weighted.size(); ++k) {
        weighted[k] = phi_near[k] * cfg.w_near + phi_far[k] * cfg.w_far;
    }
    std::vector<std::size_t> idx(weighted.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return weighted[a] > weighted[b]; });
    idx.resize(cfg.k_select);
    return idx;
}

std::optional<Complex> data_aided_estimate(std::span<const AidedSample> samples,
                                           std::size_t code_length, double noise_power) {
    if (samples.empty()) return std::nullopt;
    if (code_length == 0) throw std::invalid_argument("data_aided_estimate: zero code length");
    if (!(noise_power >= 0.0)) throw std::invalid_argument("data_aided_estimate: negative noise power");
    Complex num{};
    double energy = 0.0;
    for (const auto& s : samples) {
        num += std::sqrt(s.power) * std::conj(s.symbol) * s.correlator;
        energy += s.power * std::norm(s.symbol);
    }
    const double den = static_cast<double>(code_length) * energy + noise_power;
    if (!(den > 0.0)) return std::nullopt;
    return num / den;
}

std::optional<Complex> data_aided_estimate(std::span<const ChipVector> observations,
                                           const gold::GoldCode& code,
                                           std::span<const Complex> reliable_symbols,
                                           std::span<const double> powers, double noise_power) {
    if (observations.size() != reliable_symbols.size() || observations.size() != powers.size()) {
        throw std::invalid_argument("data_aided_estimate: observation, symbol and power counts differ");
    }
    std::vector<AidedSample> samples(observations.size());
    for (std::size_t j = 0; j < samples.size(); ++j) {
        samples[j] = {phy::despread(observations[j], code.chips()), reliable_symbols[j], powers[j]};
    }
    return data_aided_estimate(samples, code.length(), noise_power);
}

MseReport mse(std::span<const Complex> truth, std::span<const Complex> estimate) {
    if (truth.size() != estimate.size()) throw std::invalid_argument("mse: length mismatch");
    MseReport r;
    r.per_user.resize(truth.size());
    for (std::size_t n = 0; n < truth.size(); ++n) r.per_user[n] = std::norm(truth[n] - estimate[n]);
    r.aggregate = truth.empty() ? 0.0
                                : std::accumulate(r.per_user.begin(), r.per_user.end(), 0.0) /
                                      static_cast<double>(truth.size());
    return r;
}

}  // namespace goldnoma::estimation
