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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "goldnoma/scenario.hpp"

using namespace goldnoma::harness;

namespace {

ScenarioConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in, "test.cfg");
}

std::string parse_error(const std::string& text) {
    try {
        parse(text);
    } catch (const std::invalid_argument& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("defaults follow the reference scenario") {
    const ScenarioConfig c;
    CHECK(c.cells == 1);
    CHECK(c.max_power_dbm == 43.0);
    CHECK(c.bandwidth_hz == 5e6);
    CHECK(c.carrier_frequency_hz == 2e9);
    CHECK(c.path_loss_exponent == 3.76);
    CHECK(c.noise_psd_dbm_per_hz == -174.0);
    CHECK(c.noise_figure_db == 7.0);
    CHECK(c.min_distance_m == 10.0);
    CHECK(c.trials == 10000);
    CHECK(c.d_near_m == 20.0);
    CHECK(c.d_far_m == 50.0);
    CHECK(c.shadowing_sigma_db == 10.0);
    CHECK(c.dataset_shadowing_sigma_db == 8.0);
    CHECK(c.snr_grid_db() == std::vector<double>{-15, -10, -5, 0, 5, 10, 15, 20, 25});
    CHECK(c.total_power_w() == doctest::Approx(19.9526).epsilon(1e-4));
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("canonical text round trips through the parser") {
    ScenarioConfig c;
    c.trials = 123;
    c.snr_min_db = -7.5;
    c.allocation = goldnoma::phy::AllocationMode::literal;
    c.channel_source = ChannelSource::trace;
    c.cpf_strategy = "none";
    c.master_seed = 18446744073709551615ULL;
    c.perfect_csi = true;
    c.w_near = 0.1 + 0.2;
    const auto back = parse(c.canonical_text());
    CHECK(back.canonical_text() == c.canonical_text());
    CHECK(back.w_near == c.w_near);
    CHECK(back.master_seed == c.master_seed);
}

TEST_CASE("strict parsing") {
    CHECK(parse("# comment\n\n  trials = 50  \n").trials == 50);
    CHECK(parse_error("trials=50\nbogus_key=1\n").find("test.cfg:2") != std::string::npos);
    CHECK(parse_error("trials=50\nbogus_key=1\n").find("unknown config key 'bogus_key'") != std::string::npos);
    CHECK(parse_error("trials\n").find("test.cfg:1: expected key=value") != std::string::npos);
    CHECK(parse_error("trials=abc\n").find("test.cfg:1") != std::string::npos);
    CHECK(parse_error("trials=-3\n").find("trials") != std::string::npos);
    CHECK(parse_error("snr_step_db=1.5x\n").find("snr_step_db") != std::string::npos);
    CHECK(parse_error("perfect_csi=maybe\n").find("perfect_csi") != std::string::npos);
    CHECK(parse_error("allocation=greedy\n").find("allocation") != std::string::npos);
    CHECK(parse_error("channel_source=file\n").find("channel_source") != std::string::npos);
}

TEST_CASE("validation names the offending key") {
    CHECK(parse_error("code_degree=8\n").find("code_degree") != std::string::npos);
    CHECK(parse_error("d_near_m=5\n").find("d_near_m") != std::string::npos);
    CHECK(parse_error("cpf_strategy=lstm\n").find("cpf_strategy") != std::string::npos);
    CHECK(parse_error("cpf_strategy=external\n").find("prediction_file") != std::string::npos);
    CHECK(parse_error("n_users=40\n").find("n_subcarriers") != std::string::npos);
    CHECK(parse_error("k_select=20\n").find("k_select") != std::string::npos);
    CHECK(parse_error("cells=2\n").find("cells") != std::string::npos);
    CHECK(parse_error("bandwidth_hz=0\n").find("bandwidth_hz") != std::string::npos);
    CHECK(parse_error("snr_max_db=-20\n").find("snr_max_db") != std::string::npos);
}

TEST_CASE("overrides") {
    ScenarioConfig c;
    set_config_value(c, "n_users", "3");
    set_config_value(c, "noiseless", "true");
    CHECK(c.n_users == 3);
    CHECK(c.noiseless);
    CHECK_THROWS_AS(set_config_value(c, "nope", "1"), std::invalid_argument);
}

TEST_CASE("shipped schema lists every key with its unit") {
    std::ifstream in(std::string(GOLDNOMA_SOURCE_DIR) + "/config/scenario.schema");
    REQUIRE(in);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.front() != '#') lines.push_back(line);
    }
    const auto& schema = config_schema();
    REQUIRE(lines.size() == schema.size());
    for (std::size_t i = 0; i < schema.size(); ++i) {
        const std::string expect = std::string(schema[i].name) + " | " + std::string(schema[i].unit) +
                                   " | " + std::string(schema[i].description);
        CHECK(lines[i] == expect);
        CHECK_FALSE(schema[i].unit.empty());
    }
    std::istringstream keys(ScenarioConfig{}.canonical_text());
    std::size_t i = 0;
    for (std::string line; std::getline(keys, line); ++i) {
        CHECK(line.substr(0, line.find('=')) == schema.at(i).name);
    }
    CHECK(i == schema.size());
}

TEST_CASE("shipped default config equals the built-in defaults") {
    const auto c = load_config(std::string(GOLDNOMA_SOURCE_DIR) + "/config/default.cfg");
    CHECK(c.canonical_text() == ScenarioConfig{}.canonical_text());
    CHECK_THROWS(load_config(std::string(GOLDNOMA_SOURCE_DIR) + "/config/missing.cfg"));
}
