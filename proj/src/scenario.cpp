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

#include "goldnoma/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "goldnoma/format.hpp"

namespace goldnoma::harness {

namespace {

struct Field {
    ConfigKey key;
    std::function<std::string(const ScenarioConfig&)> get;
    std::function<void(ScenarioConfig&, std::string_view)> set;
};

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view want) {
    throw std::invalid_argument("config key '" + std::string(key) + "': expected " +
                                std::string(want) + ", got '" + std::string(value) + "'");
}

double parse_double(std::string_view key, std::string_view v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
        bad_value(key, v, "a finite number");
    }
    return out;
}

std::uint64_t parse_u64(std::string_view key, std::string_view v) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
        bad_value(key, v, "a nonnegative integer");
    }
    return out;
}

int parse_int(std::string_view key, std::string_view v) {
    int out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) bad_value(key, v, "an integer");
    return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    bad_value(key, v, "true or false");
}

Field dbl(std::string_view name, std::string_view unit, std::string_view desc,
          double ScenarioConfig::*member) {
    return {{name, unit, desc},
            [member](const ScenarioConfig& c) { return format_double(c.*member); },
            [member, name](ScenarioConfig& c, std::string_view v) { c.*member = parse_double(name, v); }};
}

Field u64(std::string_view name, std::string_view unit, std::string_view desc,
          std::uint64_t ScenarioConfig::*member) {
    return {{name, unit, desc},
            [member](const ScenarioConfig& c) { return std::to_string(c.*member); },
            [member, name](ScenarioConfig& c, std::string_view v) { c.*member = parse_u64(name, v); }};
}

Field integer(std::string_view name, std::string_view unit, std::string_view desc,
              int ScenarioConfig::*member) {
    return {{name, unit, desc},
            [member](const ScenarioConfig& c) { return std::to_string(c.*member); },
            [member, name](ScenarioConfig& c, std::string_view v) { c.*member = parse_int(name, v); }};
}

Field boolean(std::string_view name, std::string_view desc, bool ScenarioConfig::*member) {
    return {{name, "bool", desc},
            [member](const ScenarioConfig& c) { return std::string(c.*member ? "true" : "false"); },
            [member, name](ScenarioConfig& c, std::string_view v) { c.*member = parse_bool(name, v); }};
}

Field text(std::string_view name, std::string_view unit, std::string_view desc,
           std::string ScenarioConfig::*member) {
    return {{name, unit, desc},
            [member](const ScenarioConfig& c) { return c.*member; },
            [member](ScenarioConfig& c, std::string_view v) { c.*member = std::string(v); }};
}

const std::vector<Field>& fields() {
    using C = ScenarioConfig;
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        f.push_back(integer("cells", "count", "number of cells (only 1 is supported)", &C::cells));
        f.push_back(dbl("max_power_dbm", "dBm", "total base-station transmit power", &C::max_power_dbm));
        f.push_back(dbl("bandwidth_hz", "Hz", "system bandwidth", &C::bandwidth_hz));
        f.push_back(dbl("carrier_frequency_hz", "Hz", "carrier frequency (recorded only)", &C::carrier_frequency_hz));
        f.push_back(dbl("path_loss_exponent", "-", "distance power law exponent alpha", &C::path_loss_exponent));
        f.push_back(dbl("shadowing_sigma_db", "dB", "log-normal shadowing standard deviation for sweeps", &C::shadowing_sigma_db));
        f.push_back(dbl("noise_psd_dbm_per_hz", "dBm/Hz", "thermal noise spectral density", &C::noise_psd_dbm_per_hz));
        f.push_back(dbl("noise_figure_db", "dB", "receiver noise figure", &C::noise_figure_db));
        f.push_back(dbl("min_distance_m", "m", "minimum base station to user distance", &C::min_distance_m));
        f.push_back(u64("trials", "count", "Monte Carlo frames per sweep point", &C::trials));
        f.push_back(dbl("snr_min_db", "dB", "first SNR grid point", &C::snr_min_db));
        f.push_back(dbl("snr_max_db", "dB", "last SNR grid point", &C::snr_max_db));
        f.push_back(dbl("snr_step_db", "dB", "SNR grid step", &C::snr_step_db));
        f.push_back(dbl("d_near_m", "m", "near user distance, also the SNR reference distance", &C::d_near_m));
        f.push_back(dbl("d_far_m", "m", "far user distance", &C::d_far_m));
        f.push_back(integer("code_degree", "-", "Gold code degree m (5, 6 or 7), L_c = 2^m - 1", &C::code_degree));
        f.push_back(u64("n_users", "count", "users in link-level sweeps", &C::n_users));
        f.push_back(u64("n_subcarriers", "count", "subcarriers K per frame", &C::n_subcarriers));
        f.push_back(dbl("pilot_fraction", "-", "fraction p of subcarriers carrying the pilot", &C::pilot_fraction));
        f.push_back({{"allocation", "enum", "inverse (capped, far user favored) or literal (d^-alpha)"},
                     [](const C& c) { return std::string(to_string(c.allocation)); },
                     [](C& c, std::string_view v) {
                         if (v == "inverse") c.allocation = phy::AllocationMode::inverse;
                         else if (v == "literal") c.allocation = phy::AllocationMode::literal;
                         else bad_value("allocation", v, "inverse or literal");
                     }});
        f.push_back(dbl("far_share_cap", "-", "largest two-user power share; share ratio cap is cap/(1-cap)", &C::far_share_cap));
        f.push_back(dbl("w_near", "-", "near user weight for subcarrier selection", &C::w_near));
        f.push_back(dbl("w_far", "-", "far user weight for subcarrier selection", &C::w_far));
        f.push_back(u64("k_select", "count", "subcarriers picked for data-aided refinement", &C::k_select));
        f.push_back(dbl("reliability_threshold", "-", "normalized correlator magnitude for a reliable symbol", &C::reliability_threshold));
        f.push_back(text("cpf_strategy", "enum", "none, baseline or external", &C::cpf_strategy));
        f.push_back(text("prediction_file", "path", "prediction CSV for the external strategy", &C::prediction_file));
        f.push_back({{"channel_source", "enum", "block (i.i.d. per trial) or trace (time-correlated, trial = time step)"},
                     [](const C& c) { return std::string(to_string(c.channel_source)); },
                     [](C& c, std::string_view v) {
                         if (v == "block") c.channel_source = ChannelSource::block;
                         else if (v == "trace") c.channel_source = ChannelSource::trace;
                         else bad_value("channel_source", v, "block or trace");
                     }});
        f.push_back(u64("master_seed", "-", "root of every random stream", &C::master_seed));
        f.push_back(boolean("perfect_csi", "detect with the true channel instead of estimates", &C::perfect_csi));
        f.push_back(boolean("noiseless", "disable receiver noise", &C::noiseless));
        f.push_back(dbl("scaling_snr_db", "dB", "SNR for the user-count scaling study", &C::scaling_snr_db));
        f.push_back(dbl("dataset_shadowing_sigma_db", "dB", "shadowing standard deviation for dataset export", &C::dataset_shadowing_sigma_db));
        f.push_back(dbl("dataset_snr_db", "dB", "SNR for dataset export", &C::dataset_snr_db));
        f.push_back(dbl("dataset_time_step_s", "s", "duration of one trace time step", &C::dataset_time_step_s));
        f.push_back(dbl("dataset_fading_correlation", "-", "AR(1) coefficient of small-scale fading per step", &C::dataset_fading_correlation));
        f.push_back(dbl("dataset_shadowing_correlation", "-", "AR(1) coefficient of shadowing per step", &C::dataset_shadowing_correlation));
        f.push_back(dbl("dataset_speed_mps", "m/s", "random-walk speed of trace users", &C::dataset_speed_mps));
        return f;
    }();
    return table;
}

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void invalid(std::string_view key, const std::string& why) {
    throw std::invalid_argument("config key '" + std::string(key) + "': " + why);
}

}  // namespace

std::string_view to_string(phy::AllocationMode mode) {
    return mode == phy::AllocationMode::literal ? "literal" : "inverse";
}

std::string_view to_string(ChannelSource source) {
    return source == ChannelSource::trace ? "trace" : "block";
}

const std::vector<ConfigKey>& config_schema() {
    static const std::vector<ConfigKey> keys = [] {
        std::vector<ConfigKey> k;
        for (const auto& f : fields()) k.push_back(f.key);
        return k;
    }();
    return keys;
}

void set_config_value(ScenarioConfig& cfg, std::string_view key, std::string_view value) {
    for (const auto& f : fields()) {
        if (f.key.name == key) {
            f.set(cfg, value);
            return;
        }
    }
    throw std::invalid_argument("unknown config key '" + std::string(key) + "'");
}

ScenarioConfig parse_config(std::istream& in, const std::string& source) {
    ScenarioConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto eq = body.find('=');
        const std::string where = source + ":" + std::to_string(line_no) + ": ";
        if (eq == std::string_view::npos) {
            throw std::invalid_argument(where + "expected key=value, got '" + std::string(body) + "'");
        }
        try {
            set_config_value(cfg, trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(where + e.what());
        }
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path.string());
    return parse_config(in, path.string());
}

void ScenarioConfig::validate() const {
    if (cells != 1) invalid("cells", "only a single cell is modeled");
    if (!(bandwidth_hz > 0.0)) invalid("bandwidth_hz", "must be > 0");
    if (!(path_loss_exponent >= 0.0)) invalid("path_loss_exponent", "must be >= 0");
    if (!(shadowing_sigma_db >= 0.0)) invalid("shadowing_sigma_db", "must be >= 0");
    if (!(dataset_shadowing_sigma_db >= 0.0)) invalid("dataset_shadowing_sigma_db", "must be >= 0");
    if (!(min_distance_m > 0.0)) invalid("min_distance_m", "must be > 0");
    if (trials < 1) invalid("trials", "must be >= 1");
    if (!(snr_step_db > 0.0)) invalid("snr_step_db", "must be > 0");
    if (snr_max_db < snr_min_db) invalid("snr_max_db", "must be >= snr_min_db");
    if (d_near_m < min_distance_m) invalid("d_near_m", "below min_distance_m");
    if (d_far_m < d_near_m) invalid("d_far_m", "must be >= d_near_m");
    if (code_degree < 5 || code_degree > 7) invalid("code_degree", "must be 5, 6 or 7");
    if (n_users < 1) invalid("n_users", "must be >= 1");
    if (!(far_share_cap >= 0.5 && far_share_cap <= 1.0)) invalid("far_share_cap", "must lie in [0.5, 1]");
    if (!(reliability_threshold >= 0.0)) invalid("reliability_threshold", "must be >= 0");
    if (cpf_strategy != "none" && cpf_strategy != "baseline" && cpf_strategy != "external") {
        invalid("cpf_strategy", "unknown strategy '" + cpf_strategy + "'");
    }
    if (cpf_strategy == "external" && prediction_file.empty()) {
        invalid("prediction_file", "required by cpf_strategy=external");
    }
    for (const double rho : {dataset_fading_correlation, dataset_shadowing_correlation}) {
        if (!(rho >= 0.0 && rho <= 1.0)) invalid("dataset_*_correlation", "must lie in [0, 1]");
    }
    if (!(dataset_time_step_s > 0.0)) invalid("dataset_time_step_s", "must be > 0");
    if (!(dataset_speed_mps >= 0.0)) invalid("dataset_speed_mps", "must be >= 0");
    try {
        frame_spec().validate();
    } catch (const std::invalid_argument& e) {
        invalid("n_subcarriers/pilot_fraction/n_users", e.what());
    }
    try {
        selection().validate(frame_spec().data_count());
    } catch (const std::invalid_argument& e) {
        invalid("w_near/w_far/k_select", e.what());
    }
}

double ScenarioConfig::total_power_w() const { return channel::dbm_to_watts(max_power_dbm); }

channel::NoiseSpec ScenarioConfig::noise_spec() const {
    return {noise_psd_dbm_per_hz, bandwidth_hz, noise_figure_db};
}

phy::FrameSpec ScenarioConfig::frame_spec() const {
    phy::FrameSpec spec;
    spec.n_subcarriers = n_subcarriers;
    spec.pilot_fraction = pilot_fraction;
    spec.n_users = n_users;
    return spec;
}

estimation::SelectionConfig ScenarioConfig::selection() const {
    return {w_near, w_far, static_cast<std::size_t>(k_select)};
}

phy::AllocationParams ScenarioConfig::allocation_params() const {
    return {allocation, far_share_cap};
}

std::vector<double> ScenarioConfig::snr_grid_db() const {
    std::vector<double> grid;
    const auto steps = static_cast<long>(std::floor((snr_max_db - snr_min_db) / snr_step_db + 1e-9));
    for (long i = 0; i <= steps; ++i) grid.push_back(snr_min_db + static_cast<double>(i) * snr_step_db);
    return grid;
}

std::string ScenarioConfig::canonical_text() const {
    std::ostringstream os;
    for (const auto& f : fields()) os << f.key.name << '=' << f.get(*this) << '\n';
    return os.str();
}

}  // namespace goldnoma::harness
