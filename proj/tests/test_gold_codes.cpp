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

#include <algorithm>
#include <random>
#include <sstream>

#include "goldnoma/gold_codes.hpp"
#include "oracles.hpp"

using namespace goldnoma::gold;

namespace {

std::vector<int> to_vec(std::span<const int> s) { return {s.begin(), s.end()}; }

}  // namespace

TEST_CASE("m-sequence matches register oracle") {
    for (int m : {5, 6, 7}) {
        const auto [a, b] = preferred_pair(m);
        for (const auto& spec : {a, b}) {
            const auto seq = generate_m_sequence(spec);
            CHECK(seq == oracle::bipolar_sequence(m, spec.taps, spec.seed, seq.size()));
        }
    }
}

TEST_CASE("m=3 sequence has two-valued autocorrelation") {
    const auto seq = generate_m_sequence(LfsrSpec{3, {3, 2}, 0b001});
    REQUIRE(seq.size() == 7);
    for (std::size_t lag = 0; lag < 7; ++lag) {
        CHECK(oracle::periodic_correlation(seq, seq, lag) == (lag == 0 ? 7 : -1));
    }
}

TEST_CASE("period detection") {
    CHECK(lfsr_period(LfsrSpec{5, {5, 2}, 0b00001}) == 31);
    CHECK(oracle::cycle_length(5, {5, 2}, 1) == 31);
    CHECK(lfsr_period(LfsrSpec{5, {5, 1}, 0b00001}) == oracle::cycle_length(5, {5, 1}, 1));
    CHECK(lfsr_period(LfsrSpec{5, {5, 1}, 0b00001}) == 21);
    try {
        generate_m_sequence(LfsrSpec{5, {5, 1}, 0b00001});
        FAIL("non-primitive polynomial accepted");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("period 21 < 31") != std::string::npos);
    }
}

TEST_CASE("lfsr spec validation") {
    CHECK_THROWS_AS(LfsrSpec({5, {5, 2}, 0}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(LfsrSpec({5, {}, 1}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(LfsrSpec({5, {6, 2}, 1}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(LfsrSpec({5, {4, 2}, 1}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(LfsrSpec({5, {5, 0}, 1}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(LfsrSpec({5, {5, 2}, 32}).validate(), std::invalid_argument);
    CHECK_NOTHROW(LfsrSpec::with_default_seed(5, {5, 2}).validate());
    CHECK(LfsrSpec::with_default_seed(5, {5, 2}).seed == 0b11111);
    CHECK(LfsrSpec::with_default_seed(6, {6, 5, 2, 1}).taps_string() == "6,5,2,1");
}

TEST_CASE("balance and autocorrelation of every preferred sequence") {
    for (int m : {5, 6, 7}) {
        const auto [a, b] = preferred_pair(m);
        for (const auto& spec : {a, b}) {
            const auto seq = generate_m_sequence(spec);
            const auto len = (std::size_t{1} << m) - 1;
            REQUIRE(seq.size() == len);
            CHECK(std::count(seq.begin(), seq.end(), -1) == (1L << (m - 1)));
            CHECK(std::count(seq.begin(), seq.end(), 1) == (1L << (m - 1)) - 1);
            for (std::size_t lag = 1; lag < len; ++lag) {
                CHECK(oracle::periodic_correlation(seq, seq, lag) == -1);
            }
        }
    }
}

TEST_CASE("three-valued set") {
    CHECK(gold_t(5) == 9);
    CHECK(gold_t(6) == 17);
    CHECK(gold_t(7) == 17);
    CHECK(gold_correlation_values(5) == std::vector<long>{-9, -1, 7});
    CHECK(gold_correlation_values(6) == std::vector<long>{-17, -1, 15});
}

TEST_CASE("family structure") {
    for (int m : {5, 6, 7}) {
        const auto fam = generate_gold_family(m);
        const std::size_t len = (std::size_t{1} << m) - 1;
        REQUIRE(fam.size() == len + 2);
        const auto [pa, pb] = preferred_pair(m);
        const auto a = generate_m_sequence(pa);
        const auto b = generate_m_sequence(pb);
        CHECK(to_vec(fam[0].chips()) == a);
        CHECK(to_vec(fam[1].chips()) == b);
        for (std::size_t k = 0; k < len; ++k) {
            const auto& code = fam[k + 2];
            CHECK(code.family_index() == k + 2);
            std::vector<int> expect(len);
            for (std::size_t i = 0; i < len; ++i) expect[i] = a[i] * b[(i + k) % len];
            CHECK(to_vec(code.chips()) == expect);
            CHECK(oracle::periodic_correlation(code.chips(), code.chips(), 0) ==
                  static_cast<long>(len));
        }
    }
    CHECK_THROWS_AS(generate_gold_family(4), std::invalid_argument);
    CHECK_THROWS_AS(generate_gold_family(8), std::invalid_argument);
}

TEST_CASE("m=5 family is three-valued over all pairs") {
    const auto fam = generate_gold_family(5);
    const std::set<long> allowed{-1, -9, 7};
    long family_max = 0;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        for (std::size_t j = i + 1; j < fam.size(); ++j) {
            const auto got = cross_correlation(fam[i], fam[j]);
            for (std::size_t lag = 0; lag < 31; ++lag) {
                CHECK(got.values[lag] ==
                      oracle::periodic_correlation(fam[i].chips(), fam[j].chips(), lag));
                CHECK(allowed.count(got.values[lag]) == 1);
            }
            long peak = 0;
            for (long v : got.values) peak = std::max(peak, std::abs(v));
            CHECK(got.max_abs == peak);
            CHECK(got.max_abs <= 9);
            CHECK(got.normalized_max == doctest::Approx(static_cast<double>(peak) / 31.0));
            family_max = std::max(family_max, got.max_abs);
        }
    }
    CHECK(family_max == 9);
    CHECK(oracle::correlation_value_set(fam[0].chips(), fam[1].chips()) == allowed);
    const auto base = cross_correlation(fam[0], fam[1]);
    CHECK(base.max_abs == 9);
    CHECK(base.normalized_max == doctest::Approx(9.0 / 31.0));
}

TEST_CASE("m=6 and m=7 families on sampled pairs") {
    std::mt19937_64 rng(7);
    for (int m : {6, 7}) {
        const auto fam = generate_gold_family(m);
        const long t = gold_t(m);
        const std::set<long> allowed{-1, -t, t - 2};
        std::uniform_int_distribution<std::size_t> pick(0, fam.size() - 1);
        for (int n = 0; n < 60; ++n) {
            std::size_t i = pick(rng);
            std::size_t j = pick(rng);
            if (i == j) continue;
            for (long v : oracle::correlation_value_set(fam[i].chips(), fam[j].chips())) {
                CHECK(allowed.count(v) == 1);
            }
        }
    }
}

TEST_CASE("cross correlation edge cases") {
    const auto fam = generate_gold_family(5);
    CHECK(cross_correlation(fam[4], fam[4]).values[0] == 31);
    const auto ones = GoldCode::from_chips(std::vector<int>(31, 1));
    const auto flat = cross_correlation(ones, ones);
    CHECK(std::all_of(flat.values.begin(), flat.values.end(), [](long v) { return v == 31; }));
    CHECK(flat.normalized_max == 1.0);
    const auto fam6 = generate_gold_family(6);
    CHECK_THROWS_AS(cross_correlation(fam[0], fam6[0]), std::invalid_argument);
    CHECK_THROWS_AS(GoldCode::from_chips({1, 0, -1}), std::invalid_argument);
}

TEST_CASE("code assignment") {
    const auto fam = generate_gold_family(5);
    const auto two = assign_codes(fam, 2);
    CHECK_FALSE(two.reuse);
    CHECK_FALSE(two.shares_code(0, 1));
    const auto forty = assign_codes(fam, 40);
    CHECK(forty.reuse);
    CHECK(forty.shares_code(0, 33));
    CHECK(fam[forty.code_of_user[33]].family_index() == 0);
    const auto hundred = assign_codes(fam, 100);
    CHECK(hundred.max_reuse() >= 4);
    for (std::size_t u = 0; u < 100; ++u) CHECK(hundred.code_of_user[u] == u % 33);
    CHECK_THROWS_AS(assign_codes(std::span<const GoldCode>{}, 3), std::invalid_argument);
}

TEST_CASE("family export format") {
    const auto fam = generate_gold_family(5);
    std::ostringstream out;
    write_family(out, 5, fam);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "# gold m=5 pair=5,2/5,4,3,2");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        std::istringstream cells(line);
        std::vector<int> chips;
        for (int c; cells >> c;) chips.push_back(c);
        CHECK(chips == to_vec(fam[rows].chips()));
        ++rows;
    }
    CHECK(rows == 33);
}

TEST_CASE("deterministic family") {
    CHECK(generate_gold_family(6) == generate_gold_family(6));
}
