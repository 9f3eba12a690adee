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

#include "goldnoma/dataset.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "goldnoma/format.hpp"
#include "goldnoma/link.hpp"
#include "goldnoma/results_io.hpp"
#include "goldnoma/sweeps.hpp"

namespace goldnoma::harness {

std::string dataset_fingerprint(const ScenarioConfig& cfg, const DatasetOptions& opts) {
    return fingerprint(cfg, "export-dataset",
                       {{"n_points", std::to_string(opts.n_points)},
                        {"window", std::to_string(opts.window)},
                        {"horizon", std::to_string(opts.horizon)}});
}

DatasetSummary export_training_dataset(const ScenarioConfig& cfg, const DatasetOptions& opts,
                                       const std::filesystem::path& path) {
    cfg.validate();
    if (opts.window == 0 || opts.horizon == 0) {
        throw std::invalid_argument("export-dataset: window and horizon must be positive");
    }
    if (opts.n_points < opts.window + opts.horizon) {
        throw std::invalid_argument("export-dataset: n_points " + std::to_string(opts.n_points) +
                                    " < window + horizon " +
                                    std::to_string(opts.window + opts.horizon));
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");

    const auto setup = make_link_setup(cfg, LinkMode::gold, cfg.code_degree);
    const double noise = noise_power_for_snr(cfg, cfg.dataset_snr_db);
    const cpf::RawCpf raw;
    TraceGenerator gen(cfg, setup.profiles);

    DatasetSummary summary;
    summary.csv = path;
    summary.metadata = sidecar_path(path);
    summary.valid_windows = opts.n_points - opts.window - opts.horizon + 1;

    out << kDatasetHeader << '\n';
    for (std::uint64_t t = 0; t < opts.n_points; ++t) {
        const auto step = gen.next();
        const auto alloc = phy::allocate_power(step.profiles, cfg.total_power_w(),
                                               setup.spec.n_subcarriers, cfg.allocation_params());
        const auto frame = simulate_frame(setup, raw, t, noise, step.realization, alloc);
        for (std::size_t n = 0; n < frame.users.size(); ++n) {
            const auto& u = frame.users[n];
            out << t << ',' << n << ',' << format_double(u.h_true.real()) << ','
                << format_double(u.h_true.imag()) << ',' << format_double(u.phi) << ','
                << format_double(u.x_soft.real()) << ',' << format_double(u.x_soft.imag()) << ','
                << format_double(u.h_raw.real()) << ',' << format_double(u.h_raw.imag()) << '\n';
            ++summary.rows;
        }
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());

    nlohmann::ordered_json meta;
    meta["columns"] = std::string(kDatasetHeader);
    meta["n_points"] = opts.n_points;
    meta["n_users"] = cfg.n_users;
    meta["window"] = opts.window;
    meta["horizon"] = opts.horizon;
    meta["valid_windows"] = summary.valid_windows;
    meta["time_step_s"] = cfg.dataset_time_step_s;
    meta["window_duration_s"] = cfg.dataset_time_step_s * static_cast<double>(opts.window);
    meta["horizon_duration_s"] = cfg.dataset_time_step_s * static_cast<double>(opts.horizon);
    meta["snr_db"] = cfg.dataset_snr_db;
    meta["shadowing_sigma_db"] = cfg.dataset_shadowing_sigma_db;
    meta["fingerprint"] = dataset_fingerprint(cfg, opts);
    meta["version"] = std::string(library_version());
    std::ofstream m(summary.metadata, std::ios::binary | std::ios::trunc);
    if (!m) throw std::runtime_error("cannot open " + summary.metadata.string() + " for writing");
    m << meta.dump(2) << '\n';
    if (!m) throw std::runtime_error("write failed: " + summary.metadata.string());
    return summary;
}

}  // namespace goldnoma::harness
