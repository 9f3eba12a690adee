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

#include <cmath>
#include <random>

#include "goldnoma/channel.hpp"
#include "goldnoma/estimation.hpp"
#include "goldnoma/gold_codes.hpp"
#include "oracles.hpp"

using namespace goldnoma;
using namespace goldnoma::estimation;

namespace {

ChipVector spread(const gold::GoldCode& code, Complex amp) {
    ChipVector y(code.length());
    for (std::size_t c = 0; c < y.size(); ++c) y[c] = amp * static_cast<double>(code.chips()[c]);
    return y;
}

}  // namespace

TEST_CASE("despread identity, single user") {
    const auto fam = gold::generate_gold_family(5);
    const Complex h(0.5, -0.3);
    const double p = 0.37;
    const auto y = spread(fam[2], h * std::sqrt(p));
    CHECK(std::abs(despread_estimate(y, fam[2], 1.0, p) - h) < 1e-12);
    const Complex xp(0.0, 1.0);
    CHECK(std::abs(despread_estimate(spread(fam[2], h * std::sqrt(p) * xp), fam[2], xp, p) - h) < 1e-12);
    CHECK(despread_estimate(ChipVector(31), fam[2], 1.0, p) == Complex{});
    CHECK_THROWS_AS(despread_estimate(y, fam[2], 0.0, p), std::invalid_argument);
    CHECK_THROWS_AS(despread_estimate(y, fam[2], 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("despread error is the exact cross term for every m=5 pair") {
    const auto fam = gold::generate_gold_family(5);
    Rng rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    for (std::size_t i = 0; i < fam.size(); ++i) {
        for (std::size_t j = 0; j < fam.size(); ++j) {
            if (i == j) continue;
            const Complex h0(g(rng), g(rng)), h1(g(rng), g(rng));
            const double p0 = 0.2, p1 = 0.8;
            auto y = spread(fam[i], h0 * std::sqrt(p0));
            const auto other = spread(fam[j], h1 * std::sqrt(p1));
            for (std::size_t c = 0; c < 31; ++c) y[c] += other[c];
            const Complex err = despread_estimate(y, fam[i], 1.0, p0) - h0;
            const double ccf = static_cast<double>(oracle::periodic_correlation(fam[i].chips(), fam[j].chips(), 0));
            CHECK(std::abs(err - h1 * std::sqrt(p1 / p0) * ccf / 31.0) < 1e-12);
            CHECK(std::abs(err) <= 9.0 / 31.0 * std::abs(h1) * std::sqrt(p1 / p0) + 1e-12);
        }
    }
}

TEST_CASE("despread estimate is unbiased under noise") {
    const auto fam = gold::generate_gold_family(5);
    const Complex h(0.8, 0.4);
    const auto clean = spread(fam[0], h);
    Rng rng(5);
    Complex sum{};
    double sq = 0.0;
    constexpr int kN = 100000;
    for (int i = 0; i < kN; ++i) {
        auto y = clean;
        channel::add_awgn_inplace(y, 2.0, rng);
        const Complex e = despread_estimate(y, fam[0], 1.0, 1.0);
        sum += e;
        sq += std::norm(e - h);
    }
    const Complex mean = sum / static_cast<double>(kN);
    const double se = std::sqrt(sq / kN / 2.0 / kN);  // per component
    CHECK(std::abs(mean.real() - h.real()) < 3 * se);
    CHECK(std::abs(mean.imag() - h.imag()) < 3 * se);
    CHECK(sq / kN == doctest::Approx(2.0 / 31.0).epsilon(0.02));
}

TEST_CASE("matched filter") {
    const auto fam = gold::generate_gold_family(5);
    const Complex h1(0.3, 0.9), h2(-0.6, 0.2);
    const double p1 = 0.5, p2 = 2.0;
    CHECK(std::abs(matched_filter_estimate(spread(fam[7], h1), fam[7]) - h1) < 1e-12);
    auto y = spread(fam[7], h1 * std::sqrt(p1));
    const auto other = spread(fam[7], h2 * std::sqrt(p2));
    for (std::size_t c = 0; c < 31; ++c) y[c] += other[c];
    CHECK(std::abs(matched_filter_estimate(y, fam[7], std::sqrt(p1)) - (h1 + h2 * std::sqrt(p2 / p1))) < 1e-12);
    CHECK(matched_filter_estimate(ChipVector(31), fam[7]) == Complex{});
}

TEST_CASE("selection hand example") {
    const std::vector<double> near{0.2, 0.5, 0.3};
    const std::vector<double> far{0.6, 0.1, 0.3};
    const SelectionConfig cfg{0.5, 0.5, 2};
    CHECK(weighted_subcarrier_selection(near, far, cfg) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("selection degenerate weights and dominance") {
    Rng rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        std::vector<double> near(12), far(12), sum(12);
        for (std::size_t k = 0; k < 12; ++k) {
            near[k] = u(rng);
            far[k] = u(rng);
            sum[k] = near[k] + far[k];
        }
        CHECK(weighted_subcarrier_selection(near, far, {1.0, 0.0, 5}) == oracle::top_k(near, 5));
        CHECK(weighted_subcarrier_selection(near, far, {0.4, 0.4, 5}) == oracle::top_k(sum, 5));

        auto scaled_near = near, scaled_far = far;
        for (auto& x : scaled_near) x *= 3.7;
        for (auto& x : scaled_far) x *= 3.7;
        CHECK(weighted_subcarrier_selection(scaled_near, scaled_far, {0.3, 0.7, 6}) ==
              weighted_subcarrier_selection(near, far, {0.3, 0.7, 6}));

        auto concentrated = far;
        concentrated[7] = 10.0;
        CHECK(weighted_subcarrier_selection(near, concentrated, {0.3, 0.7, 3}).front() == 7);
    }
}

TEST_CASE("selection output order is strictly descending with index tie-break") {
    const std::vector<double> near(10, 1.0);
    const std::vector<double> far{0, 2, 2, 1, 2, 0, 1, 0, 0, 2};
    const auto sel = weighted_subcarrier_selection(near, far, {0.3, 0.7, 6});
    CHECK(sel == std::vector<std::size_t>{1, 2, 4, 9, 3, 6});
}

TEST_CASE("selection errors") {
    const std::vector<double> a(4, 1.0), b(5, 1.0);
    CHECK_THROWS_AS(weighted_subcarrier_selection(a, a, {0.3, 0.7, 5}), std::invalid_argument);
    CHECK_THROWS_AS(weighted_subcarrier_selection(a, b, {0.3, 0.7, 2}), std::invalid_argument);
    CHECK_THROWS_AS(weighted_subcarrier_selection(a, a, {1.3, 0.7, 2}), std::invalid_argument);
    CHECK_THROWS_AS(weighted_subcarrier_selection(a, a, {0.3, -0.1, 2}), std::invalid_argument);
}

TEST_CASE("data-aided estimate limits") {
    const auto fam = gold::generate_gold_family(5);
    const Complex h(-0.2, 0.7);
    const std::vector<Complex> sym{1.0, -1.0, 1.0, 1.0, -1.0};
    const std::vector<double> pw{0.3, 0.3, 0.5, 0.1, 0.2};
    std::vector<ChipVector> obs;
    for (std::size_t j = 0; j < sym.size(); ++j) obs.push_back(spread(fam[4], h * std::sqrt(pw[j]) * sym[j]));

    const auto exact = data_aided_estimate(obs, fam[4], sym, pw, 0.0);
    REQUIRE(exact.has_value());
    CHECK(std::abs(*exact - h) < 1e-9);

    const auto tiny = data_aided_estimate(obs, fam[4], sym, pw, 1e-12);
    CHECK(std::abs(*tiny - h) < 1e-9);

    double prev = std::abs(h);
    for (double n : {1.0, 10.0, 1e3, 1e6, 1e12}) {
        const double mag = std::abs(*data_aided_estimate(obs, fam[4], sym, pw, n));
        CHECK(mag < prev);
        prev = mag;
    }
    CHECK(prev < 1e-9);

    CHECK_FALSE(data_aided_estimate(std::span<const AidedSample>{}, 31, 0.1).has_value());
    CHECK_THROWS_AS(data_aided_estimate(obs, fam[4], std::span(sym).first(3), pw, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(data_aided_estimate(obs, fam[4], sym, pw, -1.0), std::invalid_argument);
}

TEST_CASE("mse") {
    const std::vector<Complex> t{1.0, Complex(0.0, 1.0)};
    const std::vector<Complex> z(2);
    CHECK(mse(t, t).aggregate == 0.0);
    CHECK(mse(std::span(t).first(1), std::span(z).first(1)).aggregate == 1.0);
    const auto r = mse(t, z);
    CHECK(r.aggregate == doctest::Approx(1.0));
    CHECK(r.per_user == std::vector<double>{1.0, 1.0});
    CHECK_THROWS_AS(mse(t, std::span(z).first(1)), std::invalid_argument);
}
