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
#include <optional>
#include <span>
#include <vector>

#include "goldnoma/gold_codes.hpp"
#include "goldnoma/phy.hpp"
#include "goldnoma/types.hpp"

namespace goldnoma::estimation {

/// h_raw = <y_p, C> / (L_c * x_p * sqrt(P_pilot)); exact for a single
/// noiseless user.
Complex despread_estimate(std::span<const Complex> y_pilot, const gold::GoldCode& code,
                          Complex pilot_symbol, double pilot_power);

/// Combines every pilot subcarrier of the common pilot observation into one
/// least-squares estimate of `user`'s gain. Unspread pilots are divided by
/// the user's own pilot amplitude, so other users' pilots contaminate it.
Complex pilot_estimate(const phy::UserObservation& obs, const phy::FrameSpec& spec,
                       const gold::GoldCode& code, const phy::PowerAllocation& alloc,
                       std::size_t user, phy::PilotMode mode);

/// Normalized correlator <y, C> / (L_c * reference_amplitude).
Complex matched_filter_estimate(std::span<const Complex> y, const gold::GoldCode& code,
                                Complex reference_amplitude = 1.0);

struct SelectionConfig {
    double w_near = 0.3;
    double w_far = 0.7;
    std::size_t k_select = 8;

    void validate(std::size_t n_subcarriers) const;
};

/// Indices of the k_select largest phi_near*w_near + phi_far*w_far, in
/// descending order; ties go to the lower index.
std::vector<std::size_t> weighted_subcarrier_selection(std::span<const double> phi_near,
                                                       std::span<const double> phi_far,
                                                       const SelectionConfig& cfg);

/// One despread observation with a known or decided symbol.
struct AidedSample {
    Complex correlator;  // <y, C>
    Complex symbol;      // unit modulus
    double power = 0.0;  // phi of this user on the sample's subcarrier
};

/// Regularized least squares over the reliable samples:
///   h = sum sqrt(phi_j) conj(s_j) r_j / (L_c * sum phi_j + noise_power).
/// Returns nullopt when there is nothing to refine with.
std::optional<Complex> data_aided_estimate(std::span<const AidedSample> samples,
                                           std::size_t code_length, double noise_power);

/// Chip-level convenience: despreads each observation with `code` first.
std::optional<Complex> data_aided_estimate(std::span<const ChipVector> observations,
                                           const gold::GoldCode& code,
                                           std::span<const Complex> reliable_symbols,
                                           std::span<const double> powers, double noise_power);

struct MseReport {
    std::vector<double> per_user;
    double aggregate = 0.0;
};

MseReport mse(std::span<const Complex> truth, std::span<const Complex> estimate);

}  // namespace goldnoma::estimation
