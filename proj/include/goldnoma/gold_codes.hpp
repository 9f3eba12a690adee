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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace goldnoma::gold {

/// Fibonacci LFSR description.
///
/// `taps` are the nonzero exponents of the characteristic polynomial, the
/// constant term excluded, so {5, 2} is x^5 + x^2 + 1. The degree m must be
/// one of the taps. Bit i of `seed` is the i-th output bit, which fixes the
/// phase of the generated sequence.
struct LfsrSpec {
    int degree = 0;
    std::vector<int> taps;
    std::uint32_t seed = 0;

    /// All-ones initial state.
    static LfsrSpec with_default_seed(int degree, std::vector<int> taps);

    /// Throws std::invalid_argument on a zero seed, an out-of-range tap or a
    /// missing degree tap.
    void validate() const;

    /// e.g. "5,2"
    std::string taps_string() const;
};

/// Number of LFSR steps before the register returns to its seed state.
std::size_t lfsr_period(const LfsrSpec& spec);

/// Raw output bits over one full period of the register.
std::vector<std::uint8_t> lfsr_bits(const LfsrSpec& spec, std::size_t count);

/// Maximal-length sequence as bipolar chips (bit 0 -> +1, bit 1 -> -1).
/// Rejects polynomials whose period from `spec.seed` is not 2^m - 1.
std::vector<int> generate_m_sequence(const LfsrSpec& spec);

class GoldCode {
public:
    GoldCode() = default;

    /// Wraps arbitrary chips; every chip must be +1 or -1.
    static GoldCode from_chips(std::vector<int> chips, std::size_t family_index = 0);

    GoldCode(std::vector<int> chips, std::size_t family_index, LfsrSpec first,
             LfsrSpec second);

    std::span<const int> chips() const noexcept { return chips_; }
    std::size_t length() const noexcept { return chips_.size(); }
    std::size_t family_index() const noexcept { return family_index_; }
    const LfsrSpec& first() const noexcept { return first_; }
    const LfsrSpec& second() const noexcept { return second_; }

    friend bool operator==(const GoldCode& a, const GoldCode& b) {
        return a.chips_ == b.chips_ && a.family_index_ == b.family_index_;
    }

private:
    std::vector<int> chips_;
    std::size_t family_index_ = 0;
    LfsrSpec first_;
    LfsrSpec second_;
};

/// Preferred pair used for degree m (5, 6 or 7).
std::pair<LfsrSpec, LfsrSpec> preferred_pair(int m);

/// t(m) = 2^floor((m+2)/2) + 1; the Gold cross-correlation magnitude bound.
long gold_t(int m);

/// The three admissible cross-correlation values {-1, -t(m), t(m) - 2}.
std::vector<long> gold_correlation_values(int m);

/// Family order: [a, b, a*shift_0(b), ..., a*shift_{L-1}(b)], 2^m + 1 codes.
std::vector<GoldCode> generate_gold_family(int m);

struct CorrelationProfile {
    std::vector<long> values;  // values[lag], lag = 0 .. L-1
    long max_abs = 0;
    double normalized_max = 0.0;
};

/// Unnormalized periodic cross-correlation R(lag) = sum_i a[i] * b[i + lag].
CorrelationProfile cross_correlation(std::span<const int> a, std::span<const int> b);
CorrelationProfile cross_correlation(const GoldCode& a, const GoldCode& b);

struct CodeAssignment {
    std::vector<std::size_t> code_of_user;  // index into the family
    std::vector<std::size_t> users_per_code;
    bool reuse = false;

    bool shares_code(std::size_t user_a, std::size_t user_b) const {
        return code_of_user.at(user_a) == code_of_user.at(user_b);
    }
    std::size_t max_reuse() const;
};

/// Round-robin assignment: user i gets family member i mod family size.
CodeAssignment assign_codes(std::span<const GoldCode> family, std::size_t n_users);

/// Text export: header `# gold m=<m> pair=<taps1>/<taps2>`, then one code
/// per line as space-separated chips.
void write_family(std::ostream& out, int m, std::span<const GoldCode> family);

}  // namespace goldnoma::gold
