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

#include "goldnoma/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "goldnoma/estimation.hpp"
#include "goldnoma/format.hpp"
#include "goldnoma/gold_codes.hpp"
#include "goldnoma/link.hpp"

#ifndef GOLDNOMA_VERSION
#define GOLDNOMA_VERSION "0.0.0"
#endif

namespace goldnoma::harness {

namespace {

// Results land in per-trial slots and are reduced in trial order, so the
// output does not depend on the thread count.
template <typename R, typename F>
std::vector<R> run_trials(std::uint64_t n, unsigned threads, F&& fn) {
    std::vector<R> out(n);
    if (threads <= 1 || n < 2) {
        for (std::uint64_t t = 0; t < n; ++t) out[t] = fn(t);
        return out;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (std::uint64_t t = next++; t < n; t = next++) {
                    try {
                        out[t] = fn(t);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                        next = n;
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
    return out;
}

struct MeanAccumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t n = 0;

    void add(double v) {
        sum += v;
        sum_sq += v * v;
        ++n;
    }
    double mean() const { return n == 0 ? 0.0 : sum / static_cast<double>(n); }
    double stderr_value() const {
        if (n < 2) return 0.0;
        const double m = mean();
        const double var = std::max(0.0, (sum_sq - static_cast<double>(n) * m * m) /
                                             static_cast<double>(n - 1));
        return std::sqrt(var / static_cast<double>(n));
    }
};

SweepRow ser_row(double axis, long user, std::string metric, std::uint64_t errors,
                 std::uint64_t symbols, std::uint64_t trials) {
    const double p = symbols == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(symbols);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    return {axis, user, std::move(metric), p, se, trials};
}

SweepRow mean_row(double axis, long user, std::string metric, const MeanAccumulator& acc) {
    return {axis, user, std::move(metric), acc.mean(), acc.stderr_value(), acc.n};
}

void finish(SweepResult& r) { r.fingerprint = fingerprint(r.config, r.kind, r.params); }

std::string join_ints(const auto& values) {
    std::string s;
    for (const auto& v : values) {
        if (!s.empty()) s += ',';
        s += std::to_string(v);
    }
    return s;
}

std::string join_doubles(const std::vector<double>& values) {
    std::string s;
    for (double v : values) {
        if (!s.empty()) s += ',';
        s += format_double(v);
    }
    return s;
}

struct SerCounts {
    std::vector<std::uint64_t> errors;
    std::vector<std::uint64_t> symbols;
};

SerCounts ser_point(const LinkSetup& setup, const cpf::CpfStrategy& strategy, double noise,
                    unsigned threads) {
    const auto outcomes = run_trials<FrameOutcome>(setup.cfg.trials, threads, [&](std::uint64_t t) {
        return simulate_frame(setup, strategy, t, noise, block_channel(setup, t), setup.alloc);
    });
    SerCounts c{std::vector<std::uint64_t>(setup.spec.n_users, 0),
                std::vector<std::uint64_t>(setup.spec.n_users, 0)};
    for (const auto& o : outcomes) {
        for (std::size_t n = 0; n < o.users.size(); ++n) {
            c.errors[n] += o.users[n].symbol_errors;
            c.symbols[n] += o.users[n].symbols;
        }
    }
    return c;
}

cpf::CpfOptions cpf_options(const ScenarioConfig& cfg) {
    return {cfg.selection(), cfg.reliability_threshold, cfg.prediction_file};
}

}  // namespace

const SweepRow& SweepResult::at(double axis, long user_id, const std::string& metric) const {
    for (const auto& r : rows) {
        if (r.axis == axis && r.user_id == user_id && r.metric == metric) return r;
    }
    throw std::out_of_range("sweep " + kind + ": no row axis=" + format_double(axis) +
                            " user=" + std::to_string(user_id) + " metric=" + metric);
}

std::string_view library_version() { return GOLDNOMA_VERSION; }

std::string fingerprint(const ScenarioConfig& cfg, const std::string& kind,
                        const std::vector<std::pair<std::string, std::string>>& params) {
    std::string text = cfg.canonical_text();
    text += "kind=" + kind + '\n';
    for (const auto& [k, v] : params) text += k + '=' + v + '\n';
    text += "version=" + std::string(library_version()) + '\n';
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kHex[h & 0xF];
        h >>= 4;
    }
    return out;
}

SweepResult run_ser_sweep(const ScenarioConfig& cfg, const std::vector<int>& code_degrees,
                          const RunOptions& opts) {
    cfg.validate();
    if (code_degrees.empty()) throw std::invalid_argument("ser-sweep: no code degrees given");
    const auto strategy = cpf::make_cpf_strategy(cfg.cpf_strategy, cpf_options(cfg));

    SweepResult r;
    r.kind = "ser-sweep";
    r.axis_name = "snr_db";
    r.config = cfg;
    r.params = {{"code_degrees", join_ints(code_degrees)}};
    for (int m : code_degrees) {
        const auto setup = make_link_setup(cfg, LinkMode::gold, m);
        const std::string metric = "ser_l" + std::to_string(setup.code_length());
        for (double snr : cfg.snr_grid_db()) {
            const auto c = ser_point(setup, *strategy, noise_power_for_snr(cfg, snr), opts.threads);
            for (std::size_t n = 0; n < c.errors.size(); ++n) {
                r.rows.push_back(ser_row(snr, static_cast<long>(n), metric, c.errors[n],
                                         c.symbols[n], cfg.trials));
            }
        }
    }
    finish(r);
    return r;
}

std::vector<double> baseline_snr_grid(const ScenarioConfig& cfg) {
    std::vector<double> grid;
    for (double snr = -20.0; snr <= 1e-9; snr += cfg.snr_step_db) grid.push_back(snr);
    return grid;
}

SweepResult run_baseline_comparison(const ScenarioConfig& cfg, const std::vector<double>& snr_grid_db,
                                    const RunOptions& opts) {
    cfg.validate();
    if (snr_grid_db.empty()) throw std::invalid_argument("baseline-compare: empty SNR grid");
    const auto gold_setup = make_link_setup(cfg, LinkMode::gold, cfg.code_degree);
    const auto base_setup = make_link_setup(cfg, LinkMode::baseline, cfg.code_degree);
    const auto gold_cpf = cpf::make_cpf_strategy(cfg.cpf_strategy, cpf_options(cfg));
    const cpf::RawCpf pilot_only;

    SweepResult r;
    r.kind = "baseline-compare";
    r.axis_name = "snr_db";
    r.config = cfg;
    r.params = {{"snr_grid_db", join_doubles(snr_grid_db)}};
    for (double snr : snr_grid_db) {
        const double noise = noise_power_for_snr(cfg, snr);
        const auto g = ser_point(gold_setup, *gold_cpf, noise, opts.threads);
        const auto b = ser_point(base_setup, pilot_only, noise, opts.threads);
        for (std::size_t n = 0; n < g.errors.size(); ++n) {
            r.rows.push_back(ser_row(snr, static_cast<long>(n), "ser_gold", g.errors[n],
                                     g.symbols[n], cfg.trials));
            r.rows.push_back(ser_row(snr, static_cast<long>(n), "ser_baseline", b.errors[n],
                                     b.symbols[n], cfg.trials));
        }
    }
    finish(r);
    return r;
}

SweepResult run_mse_scaling(const ScenarioConfig& cfg, const std::vector<std::uint64_t>& user_counts,
                            const RunOptions& opts) {
    cfg.validate();
    if (user_counts.empty()) throw std::invalid_argument("mse-scaling: no user counts given");
    for (auto n : user_counts) {
        if (n < 2 || n > 128) {
            throw std::invalid_argument("mse-scaling: user count " + std::to_string(n) +
                                        " outside [2, 128]");
        }
    }
    constexpr int kScalingDegree = 5;
    const auto family = gold::generate_gold_family(kScalingDegree);
    const double noise = noise_power_for_snr(cfg, cfg.scaling_snr_db);
    const double per_sample = noise / static_cast<double>(cfg.n_subcarriers);
    const channel::ChannelParams chan_params{cfg.shadowing_sigma_db, cfg.min_distance_m};
    const Complex xp{1.0, 0.0};

    SweepResult r;
    r.kind = "mse-scaling";
    r.axis_name = "n_users";
    r.config = cfg;
    r.params = {{"user_counts", join_ints(user_counts)}, {"code_degree", "5"}};
    for (auto n_users : user_counts) {
        const auto profiles = make_profiles(cfg, n_users);
        const auto assignment = gold::assign_codes(family, n_users);
        const auto alloc = phy::allocate_power(profiles, cfg.total_power_w(), cfg.n_subcarriers,
                                               cfg.allocation_params());
        const auto per_trial = run_trials<double>(cfg.trials, opts.threads, [&](std::uint64_t t) {
            auto chan_rng = make_rng(cfg.master_seed, t, Stream::channel);
            const auto chan = channel::sample_block_fading(profiles, chan_params, chan_rng);
            const std::size_t len = family.front().length();
            ChipVector y(len);
            for (std::size_t n = 0; n < n_users; ++n) {
                const auto chips = family[assignment.code_of_user[n]].chips();
                const Complex amp = chan.composite_gain[n] * std::sqrt(alloc.at(n, 0)) * xp;
                for (std::size_t c = 0; c < len; ++c) y[c] += amp * static_cast<double>(chips[c]);
            }
            auto noise_rng = make_rng(cfg.master_seed, t, Stream::pilot_noise);
            channel::add_awgn_inplace(y, per_sample, noise_rng);
            std::vector<Complex> est(n_users);
            for (std::size_t n = 0; n < n_users; ++n) {
                est[n] = estimation::matched_filter_estimate(
                    y, family[assignment.code_of_user[n]], xp * std::sqrt(alloc.at(n, 0)));
            }
            return estimation::mse(chan.composite_gain, est).aggregate;
        });
        MeanAccumulator acc;
        for (double v : per_trial) acc.add(v);
        const auto axis = static_cast<double>(n_users);
        r.rows.push_back(mean_row(axis, -1, "mse", acc));
        r.rows.push_back({axis, -1, "reuse_factor", static_cast<double>(assignment.max_reuse()), 0.0,
                          cfg.trials});
    }
    finish(r);
    return r;
}

namespace {

struct TrialChannel {
    channel::ChannelRealization realization;
    phy::PowerAllocation alloc;
};

std::vector<TrialChannel> trace_channels(const ScenarioConfig& cfg, const LinkSetup& setup) {
    TraceGenerator gen(cfg, setup.profiles);
    std::vector<TrialChannel> out;
    out.reserve(cfg.trials);
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        auto step = gen.next();
        auto alloc = phy::allocate_power(step.profiles, cfg.total_power_w(), setup.spec.n_subcarriers,
                                         cfg.allocation_params());
        out.push_back({std::move(step.realization), std::move(alloc)});
    }
    return out;
}

}  // namespace

SweepResult run_cpf_eval(const ScenarioConfig& cfg, const RunOptions& opts) {
    cfg.validate();
    const auto strategy = cpf::make_cpf_strategy(cfg.cpf_strategy, cpf_options(cfg));
    if (const auto* ext = dynamic_cast<const cpf::ExternalCpf*>(strategy.get())) {
        if (const auto bad = ext->table().first_misaligned_trial(cfg.trials, cfg.n_users)) {
            throw std::invalid_argument("cpf-eval: prediction file " + cfg.prediction_file +
                                        " does not cover trial " + std::to_string(*bad) +
                                        " for every user");
        }
    }
    const auto setup = make_link_setup(cfg, LinkMode::gold, cfg.code_degree);
    std::vector<TrialChannel> trace;
    if (cfg.channel_source == ChannelSource::trace) trace = trace_channels(cfg, setup);

    SweepResult r;
    r.kind = "cpf-eval";
    r.axis_name = "snr_db";
    r.config = cfg;
    r.params = {{"strategy", cfg.cpf_strategy}};
    const std::size_t n_users = setup.spec.n_users;
    for (double snr : cfg.snr_grid_db()) {
        const double noise = noise_power_for_snr(cfg, snr);
        const auto outcomes = run_trials<FrameOutcome>(cfg.trials, opts.threads, [&](std::uint64_t t) {
            if (!trace.empty()) {
                return simulate_frame(setup, *strategy, t, noise, trace[t].realization, trace[t].alloc);
            }
            return simulate_frame(setup, *strategy, t, noise, block_channel(setup, t), setup.alloc);
        });
        std::vector<MeanAccumulator> raw(n_users + 1), fin(n_users + 1), diff(n_users + 1);
        for (const auto& o : outcomes) {
            double agg_raw = 0.0;
            double agg_fin = 0.0;
            for (std::size_t n = 0; n < n_users; ++n) {
                const auto& u = o.users[n];
                const double e_raw = std::norm(u.h_true - u.h_raw);
                const double e_fin = std::norm(u.h_true - u.h_final);
                raw[n].add(e_raw);
                fin[n].add(e_fin);
                diff[n].add(e_fin - e_raw);
                agg_raw += e_raw;
                agg_fin += e_fin;
            }
            agg_raw /= static_cast<double>(n_users);
            agg_fin /= static_cast<double>(n_users);
            raw[n_users].add(agg_raw);
            fin[n_users].add(agg_fin);
            diff[n_users].add(agg_fin - agg_raw);
        }
        for (std::size_t n = 0; n <= n_users; ++n) {
            const long id = n == n_users ? -1 : static_cast<long>(n);
            r.rows.push_back(mean_row(snr, id, "mse_raw", raw[n]));
            r.rows.push_back(mean_row(snr, id, "mse_final", fin[n]));
            r.rows.push_back(mean_row(snr, id, "mse_diff", diff[n]));
        }
    }
    finish(r);
    return r;
}

cpf::PredictionTable channel_truth(const ScenarioConfig& cfg) {
    const auto setup = make_link_setup(cfg, LinkMode::gold, cfg.code_degree);
    cpf::PredictionTable table;
    std::vector<TrialChannel> trace;
    if (cfg.channel_source == ChannelSource::trace) trace = trace_channels(cfg, setup);
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        const auto chan = trace.empty() ? block_channel(setup, t) : trace[t].realization;
        for (std::size_t n = 0; n < chan.size(); ++n) table.insert(t, n, chan.composite_gain[n]);
    }
    return table;
}

}  // namespace goldnoma::harness
