#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polylad/mp/real.hpp"
#include "polylad/series/series.hpp"

namespace polylad::spigot {

using mp::Bits;
using mp::MpReal;
using mp::Rational;
using series::SeriesSpec;

// Widest modulus v*k^n the modular exponentiation handles.
inline constexpr int kMaxModulusBits = 192;
inline constexpr long kMaxPosition = 1L << 40;

// A value in [0, 1) as a little-endian limb array of bits() fractional bits.
struct FixedFrac {
    std::vector<std::uint64_t> limbs;
    // Upper bound on the accumulated truncation error, in units of the last bit.
    std::uint64_t error_ulps = 0;

    long bits() const { return 64 * static_cast<long>(limbs.size()); }
    MpReal to_real() const;
    std::string hex(int count) const;  // leading count hex digits, uppercase
};

// frac(sum_k multiplier * a_k * 2^(shift - floor((pk+p)/2)) / k^n) to acc_bits
// (rounded up to a multiple of 64). Two-adic factors of the multiplier fold
// into the shift.
FixedFrac frac_term_sum(const SeriesSpec& spec, const Rational& multiplier, long shift, long acc_bits,
                        int threads = 1);

struct DigitRequest {
    std::string formula;
    long position = 1;  // 1-based index of the first fractional hex digit
    int count = 16;
    long guard_bits = 64;
    int threads = 1;
};

struct DigitRun {
    std::string digits;
    long position = 1;
    bool guard_ok = false;
    int retries = 0;
};

DigitRun hex_digits(const DigitRequest& req);
DigitRun hex_digits(const series::Formula& formula, const DigitRequest& req);

// Hex digits of frac(16^(d-1) * value) from a high-precision real.
std::string oracle_digits(const MpReal& value, long d, int count);

// Spigot digits against the direct evaluation and against an overlapping run
// one position earlier.
bool self_check(const std::string& formula, long d, int count);

}  // namespace polylad::spigot
