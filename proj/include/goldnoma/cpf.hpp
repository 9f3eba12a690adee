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
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "goldnoma/estimation.hpp"
#include "goldnoma/phy.hpp"
#include "goldnoma/types.hpp"

namespace goldnoma::cpf {

/// Everything a channel prediction function may look at for one user in one
/// frame. Power vectors cover data subcarriers only.
struct CpfInput {
    std::size_t trial = 0;
    std::size_t user = 0;
    Complex h_raw;
    std::span<const double> phi_row;
    std::span<const double> phi_near;
    std::span<const double> phi_far;
    std::span<const phy::DetectedSymbol> x_hat;
    std::size_t code_length = 1;
    double noise_power = 0.0;  // per despread-chip sample
};

class CpfStrategy {
public:
    virtual ~CpfStrategy() = default;
    virtual Complex refine(const CpfInput& in) const = 0;
    virtual std::string_view name() const = 0;
};

/// Passes h_raw through unchanged.
class RawCpf final : public CpfStrategy {
public:
    Complex refine(const CpfInput& in) const override { return in.h_raw; }
    std::string_view name() const override { return "none"; }
};

/// Data-aided refinement on the weighted-selection subcarriers whose
/// detections are reliable, blended with h_raw using weight R / (R + 1).
class BaselineCpf final : public CpfStrategy {
public:
    BaselineCpf(estimation::SelectionConfig selection, double reliability_threshold);

    Complex refine(const CpfInput& in) const override;
    std::string_view name() const override { return "baseline"; }

    /// Number of detections that would feed the data-aided estimate.
    std::size_t reliable_count(const CpfInput& in) const;

private:
    std::vector<estimation::AidedSample> reliable_samples(const CpfInput& in) const;

    estimation::SelectionConfig selection_;
    double threshold_;
};

/// Predictions keyed by (trial, user).
class PredictionTable {
public:
    void insert(std::size_t trial, std::size_t user, Complex value);
    std::optional<Complex> find(std::size_t trial, std::size_t user) const;
    std::size_t size() const noexcept { return rows_.size(); }

    /// First trial index in [0, trials) lacking a row for some user.
    std::optional<std::size_t> first_misaligned_trial(std::size_t trials,
                                                      std::size_t users) const;

    const std::map<std::pair<std::size_t, std::size_t>, Complex>& rows() const { return rows_; }

private:
    std::map<std::pair<std::size_t, std::size_t>, Complex> rows_;
};

inline constexpr std::string_view kPredictionHeader = "trial,user,h_pred_real,h_pred_imag";

/// Strict CSV reader; errors name the line and column.
PredictionTable read_predictions(std::istream& in, const std::string& source = "<stream>");
PredictionTable read_predictions(const std::filesystem::path& path);
void write_predictions(std::ostream& out, const PredictionTable& table);

/// Returns the prediction for (trial, user) produced by an external model.
class ExternalCpf final : public CpfStrategy {
public:
    explicit ExternalCpf(PredictionTable table) : table_(std::move(table)) {}

    Complex refine(const CpfInput& in) const override;
    std::string_view name() const override { return "external"; }
    const PredictionTable& table() const noexcept { return table_; }

private:
    PredictionTable table_;
};

struct CpfOptions {
    estimation::SelectionConfig selection;
    double reliability_threshold = 0.7;
    std::filesystem::path prediction_file;
};

/// "none", "baseline" or "external"; anything else is rejected.
std::unique_ptr<CpfStrategy> make_cpf_strategy(std::string_view name, const CpfOptions& opts);

inline Complex cpf_refine(const CpfInput& in, const CpfStrategy& strategy) {
    return strategy.refine(in);
}

}  // namespace goldnoma::cpf
