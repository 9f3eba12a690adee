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

#include "goldnoma/cpf.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "goldnoma/format.hpp"

namespace goldnoma::cpf {

BaselineCpf::BaselineCpf(estimation::SelectionConfig selection, double reliability_threshold)
    : selection_(selection), threshold_(reliability_threshold) {
    if (!(threshold_ >= 0.0)) throw std::invalid_argument("cpf: reliability threshold must be >= 0");
}

std::vector<estimation::AidedSample> BaselineCpf::reliable_samples(const CpfInput& in) const {
    std::vector<estimation::AidedSample> samples;
    if (in.x_hat.empty()) return samples;
    if (in.phi_row.size() != in.x_hat.size()) {
        throw std::invalid_argument("cpf: power row and detections differ in length");
    }
    const auto selected = estimation::weighted_subcarrier_selection(in.phi_near, in.phi_far, selection_);
    for (std::size_t j : selected) {
        const auto& det = in.x_hat[j];
        if (det.reliability >= threshold_) samples.push_back({det.correlator, det.symbol, in.phi_row[j]});
    }
    return samples;
}

std::size_t BaselineCpf::reliable_count(const CpfInput& in) const { return reliable_samples(in).size(); }

Complex BaselineCpf::refine(const CpfInput& in) const {
    const auto samples = reliable_samples(in);
    const auto aided = estimation::data_aided_estimate(samples, in.code_length, in.noise_power);
    if (!aided) return in.h_raw;
    const double r = static_cast<double>(samples.size());
    const double w = r / (r + 1.0);
    return w * *aided + (1.0 - w) * in.h_raw;
}

void PredictionTable::insert(std::size_t trial, std::size_t user, Complex value) {
    if (!rows_.emplace(std::make_pair(trial, user), value).second) {
        throw std::invalid_argument("predictions: duplicate row for trial " + std::to_string(trial) +
                                    ", user " + std::to_string(user));
    }
}

std::optional<Complex> PredictionTable::find(std::size_t trial, std::size_t user) const {
    const auto it = rows_.find({trial, user});
    if (it == rows_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> PredictionTable::first_misaligned_trial(std::size_t trials,
                                                                   std::size_t users) const {
    for (std::size_t t = 0; t < trials; ++t) {
        for (std::size_t u = 0; u < users; ++u) {
            if (!rows_.contains({t, u})) return t;
        }
    }
    return std::nullopt;
}

namespace {

std::vector<std::string_view> split_csv(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

template <typename T>
T parse_field(std::string_view field, const std::string& where, std::string_view column) {
    T value{};
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc{} || ptr != end) {
        throw std::invalid_argument(where + ": column '" + std::string(column) +
                                    "': cannot parse '" + std::string(field) + "'");
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (!std::isfinite(value)) {
            throw std::invalid_argument(where + ": column '" + std::string(column) +
                                        "': non-finite value");
        }
    }
    return value;
}

}  // namespace

PredictionTable read_predictions(std::istream& in, const std::string& source) {
    static constexpr std::string_view kColumns[] = {"trial", "user", "h_pred_real", "h_pred_imag"};
    PredictionTable table;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(in, line)) throw std::invalid_argument(source + ": empty prediction file");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kPredictionHeader) {
        throw std::invalid_argument(source + ":1: expected header '" +
                                    std::string(kPredictionHeader) + "', got '" + line + "'");
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = source + ":" + std::to_string(line_no);
        const auto fields = split_csv(line);
        if (fields.size() != 4) {
            throw std::invalid_argument(where + ": expected 4 columns, got " +
                                        std::to_string(fields.size()));
        }
        const auto trial = parse_field<std::size_t>(fields[0], where, kColumns[0]);
        const auto user = parse_field<std::size_t>(fields[1], where, kColumns[1]);
        const auto re = parse_field<double>(fields[2], where, kColumns[2]);
        const auto im = parse_field<double>(fields[3], where, kColumns[3]);
        try {
            table.insert(trial, user, Complex(re, im));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(where + ": " + e.what());
        }
    }
    return table;
}

PredictionTable read_predictions(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open prediction file " + path.string());
    return read_predictions(in, path.string());
}

void write_predictions(std::ostream& out, const PredictionTable& table) {
    out << kPredictionHeader << '\n';
    for (const auto& [key, value] : table.rows()) {
        out << key.first << ',' << key.second << ',' << format_double(value.real()) << ','
            << format_double(value.imag()) << '\n';
    }
}

Complex ExternalCpf::refine(const CpfInput& in) const {
    const auto pred = table_.find(in.trial, in.user);
    if (!pred) {
        throw std::out_of_range("cpf: no external prediction for trial " + std::to_string(in.trial) +
                                ", user " + std::to_string(in.user));
    }
    return *pred;
}

std::unique_ptr<CpfStrategy> make_cpf_strategy(std::string_view name, const CpfOptions& opts) {
    if (name == "none") return std::make_unique<RawCpf>();
    if (name == "baseline") {
        return std::make_unique<BaselineCpf>(opts.selection, opts.reliability_threshold);
    }
    if (name == "external") {
        if (opts.prediction_file.empty()) {
            throw std::invalid_argument("cpf: external strategy needs a prediction file");
        }
        return std::make_unique<ExternalCpf>(read_predictions(opts.prediction_file));
    }
    throw std::invalid_argument("cpf: unknown strategy '" + std::string(name) +
                                "' (expected none, baseline or external)");
}

}  // namespace goldnoma::cpf
