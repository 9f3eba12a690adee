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

#include "goldnoma/gold_codes.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace goldnoma::gold {

namespace {

constexpr int kMaxDegree = 24;

std::uint32_t feedback_mask(const LfsrSpec& spec) {
    // bit 0 is the constant term; bit t is x^t for t < m
    std::uint32_t mask = 1U;
    for (int t : spec.taps) {
        if (t < spec.degree) mask |= (1U << t);
    }
    return mask;
}

std::uint32_t step(std::uint32_t state, std::uint32_t mask, int degree) {
    const auto fb = static_cast<std::uint32_t>(std::popcount(state & mask) & 1);
    return (state >> 1) | (fb << (degree - 1));
}

}  // namespace

LfsrSpec LfsrSpec::with_default_seed(int degree, std::vector<int> taps) {
    LfsrSpec spec;
    spec.degree = degree;
    spec.taps = std::move(taps);
    spec.seed = degree > 0 && degree < 32 ? (1U << degree) - 1U : 0U;
    return spec;
}

void LfsrSpec::validate() const {
    if (degree < 2 || degree > kMaxDegree) {
        throw std::invalid_argument("lfsr: degree " + std::to_string(degree) +
                                    " outside [2, " + std::to_string(kMaxDegree) + "]");
    }
    if (taps.empty()) throw std::invalid_argument("lfsr: empty tap set");
    for (int t : taps) {
        if (t < 1 || t > degree) {
            throw std::invalid_argument("lfsr: tap " + std::to_string(t) +
                                        " outside [1, " + std::to_string(degree) + "]");
        }
    }
    if (std::find(taps.begin(), taps.end(), degree) == taps.end()) {
        throw std::invalid_argument("lfsr: taps must include the degree " +
                                    std::to_string(degree));
    }
    const std::uint32_t state_mask = (1U << degree) - 1U;
    if ((seed & state_mask) == 0U) throw std::invalid_argument("lfsr: all-zero seed");
    if ((seed & ~state_mask) != 0U) {
        throw std::invalid_argument("lfsr: seed wider than the register");
    }
}

std::string LfsrSpec::taps_string() const {
    std::vector<int> sorted = taps;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    std::ostringstream os;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i != 0) os << ',';
        os << sorted[i];
    }
    return os.str();
}

std::size_t lfsr_period(const LfsrSpec& spec) {
    spec.validate();
    const std::uint32_t mask = feedback_mask(spec);
    std::uint32_t state = spec.seed;
    std::size_t period = 0;
    // The constant term is always present, so the map is a permutation and
    // the seed lies on a cycle.
    do {
        state = step(state, mask, spec.degree);
        ++period;
    } while (state != spec.seed);
    return period;
}

std::vector<std::uint8_t> lfsr_bits(const LfsrSpec& spec, std::size_t count) {
    spec.validate();
    const std::uint32_t mask = feedback_mask(spec);
    std::vector<std::uint8_t> bits(count);
    std::uint32_t state = spec.seed;
    for (auto& b : bits) {
        b = static_cast<std::uint8_t>(state & 1U);
        state = step(state, mask, spec.degree);
    }
    return bits;
}

std::vector<int> generate_m_sequence(const LfsrSpec& spec) {
    const std::size_t expected = (std::size_t{1} << spec.degree) - 1;
    const std::size_t period = lfsr_period(spec);
    if (period != expected) {
        throw std::invalid_argument("lfsr: polynomial with taps {" + spec.taps_string() +
                                    "} is not primitive: period " + std::to_string(period) +
                                    " < " + std::to_string(expected));
    }
    const auto bits = lfsr_bits(spec, expected);
    std::vector<int> chips(expected);
    std::transform(bits.begin(), bits.end(), chips.begin(),
                   [](std::uint8_t b) { return b ? -1 : 1; });
    return chips;
}

GoldCode GoldCode::from_chips(std::vector<int> chips, std::size_t family_index) {
    return GoldCode(std::move(chips), family_index, {}, {});
}

GoldCode::GoldCode(std::vector<int> chips, std::size_t family_index, LfsrSpec first,
                   LfsrSpec second)
    : chips_(std::move(chips)),
      family_index_(family_index),
      first_(std::move(first)),
      second_(std::move(second)) {
    if (chips_.empty()) throw std::invalid_argument("gold code: empty chip vector");
    for (std::size_t i = 0; i < chips_.size(); ++i) {
        if (chips_[i] != 1 && chips_[i] != -1) {
            throw std::invalid_argument("gold code: chip " + std::to_string(i) +
                                        " is not +1/-1");
        }
    }
}

std::pair<LfsrSpec, LfsrSpec> preferred_pair(int m) {
    switch (m) {
        case 5:
            return {LfsrSpec::with_default_seed(5, {5, 2}),
                    LfsrSpec::with_default_seed(5, {5, 4, 3, 2})};
        case 6:
            return {LfsrSpec::with_default_seed(6, {6, 1}),
                    LfsrSpec::with_default_seed(6, {6, 5, 2, 1})};
        case 7:
            return {LfsrSpec::with_default_seed(7, {7, 3}),
                    LfsrSpec::with_default_seed(7, {7, 3, 2, 1})};
        default:
            throw std::invalid_argument("gold family: unsupported degree m=" +
                                        std::to_string(m) + " (supported: 5, 6, 7)");
    }
}

long gold_t(int m) { return (1L << ((m + 2) / 2)) + 1; }

std::vector<long> gold_correlation_values(int m) {
    const long t = gold_t(m);
    return {-t, -1, t - 2};
}

std::vector<GoldCode> generate_gold_family(int m) {
    const auto [pa, pb] = preferred_pair(m);
    const auto a = generate_m_sequence(pa);
    const auto b = generate_m_sequence(pb);
    const std::size_t len = a.size();

    std::vector<GoldCode> family;
    family.reserve(len + 2);
    family.emplace_back(a, 0, pa, pb);
    family.emplace_back(b, 1, pa, pb);
    for (std::size_t k = 0; k < len; ++k) {
        std::vector<int> chips(len);
        for (std::size_t i = 0; i < len; ++i) chips[i] = a[i] * b[(i + k) % len];
        family.emplace_back(std::move(chips), k + 2, pa, pb);
    }
    return family;
}

CorrelationProfile cross_correlation(std::span<const int> a, std::span<const int> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("cross_correlation: length mismatch " +
                                    std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()));
    }
    if (a.empty()) throw std::invalid_argument("cross_correlation: empty sequences");
    const std::size_t len = a.size();
    CorrelationProfile profile;
    profile.values.resize(len);
    for (std::size_t lag = 0; lag < len; ++lag) {
        long acc = 0;
        for (std::size_t i = 0; i < len; ++i) acc += a[i] * b[(i + lag) % len];
        profile.values[lag] = acc;
        profile.max_abs = std::max(profile.max_abs, acc < 0 ? -acc : acc);
    }
    profile.normalized_max = static_cast<double>(profile.max_abs) / static_cast<double>(len);
    return profile;
}

CorrelationProfile cross_correlation(const GoldCode& a, const GoldCode& b) {
    return cross_correlation(a.chips(), b.chips());
}

std::size_t CodeAssignment::max_reuse() const {
    return users_per_code.empty()
               ? 0
               : *std::max_element(users_per_code.begin(), users_per_code.end());
}

CodeAssignment assign_codes(std::span<const GoldCode> family, std::size_t n_users) {
    if (family.empty()) throw std::invalid_argument("assign_codes: empty family");
    if (n_users == 0) throw std::invalid_argument("assign_codes: n_users must be >= 1");
    CodeAssignment out;
    out.code_of_user.resize(n_users);
    out.users_per_code.assign(family.size(), 0);
    for (std::size_t u = 0; u < n_users; ++u) {
        const std::size_t c = u % family.size();
        out.code_of_user[u] = c;
        ++out.users_per_code[c];
    }
    out.reuse = n_users > family.size();
    return out;
}

void write_family(std::ostream& out, int m, std::span<const GoldCode> family) {
    const auto [pa, pb] = preferred_pair(m);
    out << "# gold m=" << m << " pair=" << pa.taps_string() << '/' << pb.taps_string()
        << '\n';
    for (const auto& code : family) {
        const auto chips = code.chips();
        for (std::size_t i = 0; i < chips.size(); ++i) {
            if (i != 0) out << ' ';
            out << (chips[i] > 0 ? "+1" : "-1");
        }
        out << '\n';
    }
}

}  // namespace goldnoma::gold
