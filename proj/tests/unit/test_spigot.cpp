#include <doctest.h>

#include <gmpxx.h>

#include "oracle.hpp"
#include "polylad/errors.hpp"
#include "polylad/series/series.hpp"
#include "polylad/spigot/spigot.hpp"

using namespace polylad;
using namespace polylad::spigot;
using series::make_pattern;

namespace {

std::string digits(const std::string& f, long d, int count, int threads = 1) {
    DigitRequest r;
    r.formula = f;
    r.position = d;
    r.count = count;
    r.threads = threads;
    return hex_digits(r).digits;
}

// frac(16^(d-1) x) in hex straight from an MPFR value.
std::string mpfr_hex(const MpReal& x, long d, int count) {
    MpReal y = frac(mp::ldexp(x, 4 * (d - 1)));
    std::string s;
    static const char* hexd = "0123456789ABCDEF";
    for (int i = 0; i < count; ++i) {
        y = y * 16L;
        long digit = floor(y).to_integer().get_si();
        s += hexd[digit];
        y = frac(y);
    }
    return s;
}

}  // namespace

TEST_CASE("pi digits") {
    CHECK(digits("pi", 1, 8) == "243F6A88");
    CHECK(digits("pi", 1, 16) == mpfr_hex(oracle::pi(Bits{256}), 1, 16));
    Bits P{4 * (1000 + 24) + 64};
    CHECK(digits("pi", 1000, 24) == mpfr_hex(oracle::pi(P), 1000, 24));
    CHECK(digits("pi_bellard", 1000, 24) == digits("pi", 1000, 24));
}

TEST_CASE("oracle digits agree with independent conversions") {
    Bits P{4 * (500 + 16) + 64};
    CHECK(oracle_digits(oracle::zeta(3, P), 500, 16) == mpfr_hex(oracle::zeta(3, P), 500, 16));
    CHECK(oracle_digits(oracle::catalan(P), 500, 16) == mpfr_hex(oracle::catalan(P), 500, 16));
    CHECK(digits("zeta3", 500, 16) == mpfr_hex(oracle::zeta(3, P), 500, 16));
    CHECK(digits("catalan", 500, 16) == mpfr_hex(oracle::catalan(P), 500, 16));
    MpReal l2 = oracle::log2(P);
    CHECK(digits("log2_5", 500, 16) == mpfr_hex(pow(l2, 5), 500, 16));
}

TEST_CASE("self checks") {
    CHECK(self_check("pi", 100, 16));
    CHECK(self_check("zeta5", 1000, 32));
    CHECK(self_check("catalan", 1, 8));
    CHECK_THROWS_AS(self_check("pi", 200000, 8), DomainError);
}

TEST_CASE("frac_term_sum") {
    series::SeriesSpec pi_spec{1, 1, make_pattern({1, 0, 0, -1, -1, -1, 0, 0})};
    FixedFrac f = frac_term_sum(pi_spec, Rational(8), 0, 128);
    CHECK(f.hex(8) == "243F6A88");
    CHECK(frac_term_sum({3, 3, make_pattern({0, 0, 0, 0, 0, 0, 0, 0})}, Rational(5), 40, 128).hex(16) ==
          "0000000000000000");
    // At shift 0 with unit multiplier the result is frac(S) itself.
    series::SeriesSpec s{3, 1, make_pattern({1, -7, -1, 10, -1, -7, 1, 0})};
    FixedFrac g = frac_term_sum(s, Rational(1), 0, 192);
    MpReal direct = frac(series::eval_series(s, Bits{192 + 32}));
    CHECK(oracle::close(g.to_real(), direct, -(192 - 8)));
    // Negative series values wrap into [0, 1).
    FixedFrac neg = frac_term_sum(s, Rational(-1), 0, 192);
    CHECK(oracle::close(neg.to_real(), frac(-series::eval_series(s, Bits{224})), -(192 - 8)));
}

TEST_CASE("modulus width") {
    // 62651 (8e7)^5 < 2^148: the zeta5 worst case at position 1e7 fits the modulus cap.
    mpz_class m = 62651;
    mpz_class k = 80000000;
    for (int i = 0; i < 5; ++i) m *= k;
    CHECK(mpz_sizeinbase(m.get_mpz_t(), 2) <= 148);
    CHECK(148 < kMaxModulusBits);
    mpz_class big;
    mpz_ui_pow_ui(big.get_mpz_t(), 3, 130);
    series::SeriesSpec s{1, 1, make_pattern({1, 1, 1, 1, 1, 1, 1, 1})};
    CHECK_THROWS_AS(frac_term_sum(s, Rational(mpz_class(1), big), 0, 128), OverflowError);
}

TEST_CASE("request validation") {
    CHECK_THROWS_AS(digits("pi", 0, 8), DomainError);
    CHECK_THROWS_AS(digits("pi", 1, 65), DomainError);
    CHECK_THROWS_AS(digits("pi", kMaxPosition, 8), DomainError);
    CHECK_THROWS_AS(digits("zeta7", 1, 8), UnknownFormula);
}

TEST_CASE("shift consistency on every formula") {
    for (const auto& f : series::catalog()) {
        CAPTURE(f.name);
        std::string prev = digits(f.name, 1, 17);
        for (long d = 2; d <= 12; ++d) {
            std::string cur = digits(f.name, d, 16);
            CHECK(cur == prev.substr(1));
            prev = digits(f.name, d, 17);
        }
    }
}

TEST_CASE("thread count does not change the output") {
    for (const char* f : {"zeta3", "log2_4", "catalan"}) {
        std::string one = digits(f, 200000, 32, 1);
        CHECK(digits(f, 200000, 32, 4) == one);
        CHECK(digits(f, 200000, 32, 8) == one);
    }
}

TEST_CASE("derived formulas spigot too") {
    auto d = series::derived_formulas();
    auto it = std::find_if(d.begin(), d.end(), [](const series::Formula& f) { return f.name == "pi_log2"; });
    REQUIRE(it != d.end());
    DigitRequest r;
    r.position = 300;
    r.count = 16;
    Bits P{4 * 316 + 64};
    CHECK(hex_digits(*it, r).digits == mpfr_hex(oracle::pi(P) * oracle::log2(P), 300, 16));
}
