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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "goldnoma/dataset.hpp"
#include "goldnoma/format.hpp"
#include "goldnoma/gold_codes.hpp"
#include "goldnoma/results_io.hpp"
#include "goldnoma/sweeps.hpp"

namespace fs = std::filesystem;
using namespace goldnoma;
using namespace goldnoma::harness;

namespace {

struct Common {
    std::string config;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::string out = "results";
    bool force = false;
    unsigned threads = 0;
    std::vector<std::string> overrides;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "scenario file (key=value)")->check(CLI::ExistingFile);
    cmd->add_option("--seed", c.seed, "master seed override");
    cmd->add_option("--trials", c.trials, "trials per point override");
    cmd->add_option("--out", c.out, "output directory")->capture_default_str();
    cmd->add_flag("--force", c.force, "overwrite outputs with a different fingerprint");
    cmd->add_option("--threads", c.threads, "worker threads (default: all cores)");
    cmd->add_option("--set", c.overrides, "extra key=value override, repeatable");
}

ScenarioConfig resolve(const Common& c, CLI::App* cmd) {
    ScenarioConfig cfg = c.config.empty() ? ScenarioConfig{} : load_config(c.config);
    for (const auto& kv : c.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
        set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (cmd->count("--seed") > 0) cfg.master_seed = c.seed;
    if (cmd->count("--trials") > 0) cfg.trials = c.trials;
    cfg.validate();
    return cfg;
}

RunOptions run_options(const Common& c) {
    return {c.threads > 0 ? c.threads : std::max(1U, std::thread::hardware_concurrency())};
}

void report(const WrittenFiles& f, const SweepResult& r) {
    std::cout << r.kind << ": " << r.rows.size() << " rows, fingerprint " << r.fingerprint << '\n'
              << "  " << f.csv.string() << '\n'
              << "  " << f.sidecar.string() << '\n';
}

void gold_report(int m, const fs::path& dir, std::ostream& table) {
    const auto fam = gold::generate_gold_family(m);
    const fs::path family_file = dir / ("gold_m" + std::to_string(m) + ".txt");
    {
        std::ofstream out(family_file);
        if (!out) throw std::runtime_error("cannot open " + family_file.string() + " for writing");
        gold::write_family(out, m, fam);
    }
    std::map<long, std::uint64_t> hist;
    long max_abs = 0;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        for (std::size_t j = i + 1; j < fam.size(); ++j) {
            const auto p = gold::cross_correlation(fam[i], fam[j]);
            for (long v : p.values) ++hist[v];
            max_abs = std::max(max_abs, p.max_abs);
        }
    }
    const auto len = fam.front().length();
    for (const auto& [value, count] : hist) table << m << ',' << value << ',' << count << '\n';
    std::cout << "m=" << m << " L=" << len << " codes=" << fam.size() << " t=" << gold::gold_t(m)
              << " max|ccf|=" << max_abs << " (" << format_double(static_cast<double>(max_abs) / static_cast<double>(len))
              << " of L, 1/sqrt(L)=" << format_double(1.0 / std::sqrt(static_cast<double>(len))) << ")\n"
              << "  " << family_file.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gold-coded downlink NOMA link simulator"};
    app.require_subcommand(1);

    Common common;

    auto* ser = app.add_subcommand("ser-sweep", "SER versus SNR for several Gold code lengths");
    std::vector<int> degrees{5, 6, 7};
    add_common(ser, common);
    ser->add_option("--degrees", degrees, "Gold code degrees m")->delimiter(',')->capture_default_str();

    auto* base = app.add_subcommand("baseline-compare", "Gold-coded NOMA against the unspread pilot-only baseline");
    std::vector<double> base_grid;
    add_common(base, common);
    base->add_option("--snr", base_grid, "SNR points in dB (default -20..0)")->delimiter(',');

    auto* scaling = app.add_subcommand("mse-scaling", "matched-filter MSE versus user count with code reuse");
    std::vector<std::uint64_t> users{2, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    add_common(scaling, common);
    scaling->add_option("--users", users, "user counts in [2, 128]")->delimiter(',')->capture_default_str();

    auto* cpf_cmd = app.add_subcommand("cpf-eval", "raw versus refined channel estimate MSE");
    std::string strategy;
    std::string predictions;
    std::string truth_out;
    add_common(cpf_cmd, common);
    cpf_cmd->add_option("--strategy", strategy, "none, baseline or external");
    cpf_cmd->add_option("--predictions", predictions, "prediction CSV (implies --strategy external)");
    cpf_cmd->add_option("--write-truth", truth_out, "also write the true channels as a prediction CSV");

    auto* export_cmd = app.add_subcommand("export-dataset", "write a time-correlated trace for predictor training");
    DatasetOptions ds;
    add_common(export_cmd, common);
    export_cmd->add_option("--points", ds.n_points, "time steps")->capture_default_str();
    export_cmd->add_option("--window", ds.window, "input window length")->capture_default_str();
    export_cmd->add_option("--horizon", ds.horizon, "prediction horizon")->capture_default_str();

    auto* gold_cmd = app.add_subcommand("gold-report", "write Gold families and their correlation tables");
    std::vector<int> report_degrees{5, 6, 7};
    gold_cmd->add_option("--degrees", report_degrees, "Gold code degrees m")->delimiter(',')->capture_default_str();
    gold_cmd->add_option("--out", common.out, "output directory")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        const fs::path out_dir = common.out;
        if (*gold_cmd) {
            fs::create_directories(out_dir);
            const fs::path table_file = out_dir / "gold_correlation.csv";
            std::ofstream table(table_file);
            if (!table) throw std::runtime_error("cannot open " + table_file.string() + " for writing");
            table << "m,value,count\n";
            for (int m : report_degrees) gold_report(m, out_dir, table);
            std::cout << "  " << table_file.string() << '\n';
            return 0;
        }

        CLI::App* cmd = app.get_subcommands().front();
        ScenarioConfig cfg = resolve(common, cmd);
        const auto opts = run_options(common);

        if (*ser) {
            const auto r = run_ser_sweep(cfg, degrees, opts);
            report(save_sweep(r, out_dir, common.force), r);
        } else if (*base) {
            const auto grid = base_grid.empty() ? baseline_snr_grid(cfg) : base_grid;
            const auto r = run_baseline_comparison(cfg, grid, opts);
            report(save_sweep(r, out_dir, common.force), r);
        } else if (*scaling) {
            const auto r = run_mse_scaling(cfg, users, opts);
            report(save_sweep(r, out_dir, common.force), r);
        } else if (*cpf_cmd) {
            if (!predictions.empty()) {
                cfg.prediction_file = predictions;
                if (strategy.empty()) strategy = "external";
            }
            if (!strategy.empty()) cfg.cpf_strategy = strategy;
            cfg.validate();
            if (!truth_out.empty()) {
                std::ofstream out(truth_out);
                if (!out) throw std::runtime_error("cannot open " + truth_out + " for writing");
                cpf::write_predictions(out, channel_truth(cfg));
                std::cout << "truth: " << truth_out << '\n';
            }
            const auto r = run_cpf_eval(cfg, opts);
            report(save_sweep(r, out_dir, common.force), r);
        } else if (*export_cmd) {
            fs::create_directories(out_dir);
            const fs::path csv = out_dir / "dataset.csv";
            const auto meta = sidecar_path(csv);
            const auto fp = dataset_fingerprint(cfg, ds);
            if (!common.force && (fs::exists(csv) || fs::exists(meta))) {
                const auto existing = read_fingerprint(meta);
                if (!existing || *existing != fp) {
                    throw std::runtime_error(csv.string() + " exists with fingerprint " +
                                             existing.value_or("<unknown>") + ", new export has " + fp +
                                             "; pass --force to overwrite");
                }
            }
            const auto s = export_training_dataset(cfg, ds, csv);
            std::cout << "export-dataset: " << s.rows << " rows, " << s.valid_windows
                      << " valid windows per user, fingerprint " << fp << '\n'
                      << "  " << s.csv.string() << '\n'
                      << "  " << s.metadata.string() << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "goldnoma: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
