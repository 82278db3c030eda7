#include <doctest.h>

#include "oracle.hpp"
#include "polylad/errors.hpp"
#include "polylad/mp/functions.hpp"
#include "polylad/series/series.hpp"

using namespace polylad;
using namespace polylad::mp;
using oracle::close;

TEST_CASE("pi against MPFR and both series forms") {
    for (long p : {32L, 64L, 256L, 1024L}) {
        Bits P{p};
        CHECK(close(pi(P), oracle::pi(P), -(p - 1)));
    }
    CHECK(pi(Bits{64}).to_string(16, 16).substr(0, 17) == "3.243f6a8885a308d");
    Bits P{256};
    CHECK(close(series::eval_formula("pi", P), series::eval_formula("pi_bellard", P), -(256 - 8)));
    CHECK(close(pi(Bits{32}), pi(Bits{256}).rounded(Bits{32}), -28));
}

TEST_CASE("log2 against MPFR and exp") {
    for (long p : {32L, 64L, 512L}) {
        Bits P{p};
        CHECK(close(log2(P), oracle::log2(P), -(p - 1)));
    }
    CHECK(log2(Bits{64}).to_string(16, 16).substr(0, 17) == "0.b17217f7d1cf79a");
    Bits P{256};
    CHECK(close(exp(log2(P)), MpReal(2, P), -(256 - 4)));
    auto half = series::SeriesSpec{1, 2, series::make_pattern({2, 2, 2, 2, 2, 2, 2, 2})};
    CHECK(close(series::eval_series(half, P), log2(P), -(256 - 8)));
}

TEST_CASE("polylog values") {
    Bits P{256};
    MpComplex half(MpReal(Rational(1, 2), P));
    CHECK(close(polylog(1, half, P).re(), log2(P), -(256 - 8)));
    MpReal pi2 = pow(oracle::pi(P), 2), l2 = oracle::log2(P);
    CHECK(close(polylog(2, half, P).re(), pi2 / 12L - l2 * l2 / 2L, -(256 - 8)));
    CHECK(close(polylog(2, MpReal(Rational(1, 2), P), P), oracle::li2(MpReal(Rational(1, 2), P)), -(256 - 8)));

    MpComplex w(Rational(1, 2), Rational(1, 2), P);
    for (int n : {1, 2, 5, 11}) CHECK(close(polylog(n, w, P), oracle::polylog_naive(n, w, P), -(256 - 8)));
    MpComplex z(Rational(-3, 5), Rational(2, 5), P);
    CHECK(close(polylog(3, z, P), oracle::polylog_naive(3, z, P), -(256 - 8)));

    // Re Li_2(i) through the general evaluator, which never sums the series at |z| = 1.
    MpComplex i(MpReal(P), MpReal(1, P));
    CHECK(close(polylog_any(2, i, P).re(), -pi2 / 48L, -(256 - 8)));
    CHECK(close(polylog_any(2, i, P).im(), oracle::catalan(P), -(256 - 8)));

    CHECK_THROWS_AS(polylog(2, MpComplex(Rational(4, 5), Rational(0), P), P), DomainError);
}

TEST_CASE("polylog truncation bound") {
    // Partial sums after K terms stay within |z|^(K+1)/(1-|z|) of the converged value.
    Bits P{128};
    MpComplex z(Rational(1, 2), Rational(1, 2), P);
    MpComplex full = polylog(5, z, P);
    MpReal r = hypot(z.re(), z.im());
    MpComplex zk = z, partial(P);
    for (long k = 1; k <= 40; ++k) {
        partial += zk / pow(MpReal(k, P), 5);
        zk *= z;
        if (k % 10 == 0) {
            MpComplex d = full - partial;
            MpReal bound = pow(r, k + 1) / (1L - r);
            CHECK(hypot(d.re(), d.im()) <= bound);
        }
    }
}

TEST_CASE("zeta") {
    for (unsigned long n : {2UL, 3UL, 5UL, 7UL, 11UL, 20UL}) {
        Bits P{512};
        CHECK(close(zeta(static_cast<int>(n), P), oracle::zeta(n, P), -(512 - 2)));
    }
    Bits P{256};
    MpReal pi_ = oracle::pi(P);
    CHECK(close(zeta(2, P), pi_ * pi_ / 6L, -(256 - 8)));
    CHECK(close(zeta(4, P) * Rational(15, 16), pow(pi_, 4) / 96L, -(256 - 8)));
    MpReal z3 = 6L * series::eval_series({3, 1, series::make_pattern({1, -7, -1, 10, -1, -7, 1, 0})}, P) +
                4L * series::eval_series({3, 3, series::make_pattern({1, 1, -1, -2, -1, 1, 1, 0})}, P);
    CHECK(close(z3, zeta(3, P) * Rational(7, 8), -(256 - 8)));
}

TEST_CASE("zeta agrees with the alternating eta sum at low precision") {
    Bits P{64};
    for (int n : {4, 6}) {
        // eta(n) = sum (-1)^(k+1) k^-n by repeated averaging of partial sums.
        std::vector<MpReal> partial;
        MpReal s(Bits{128});
        for (long k = 1; k <= 120; ++k) {
            MpReal t = 1L / pow(MpReal(k, Bits{128}), n);
            if (k % 2) s += t;
            else s -= t;
            partial.push_back(s);
        }
        while (partial.size() > 1) {
            std::vector<MpReal> next;
            for (size_t i = 0; i + 1 < partial.size(); ++i) next.push_back((partial[i] + partial[i + 1]) / 2L);
            partial.swap(next);
        }
        MpReal eta = zeta(n, P) * (1L - ldexp(MpReal(1, P), 1 - n));
        CHECK(close(eta, partial[0], -32));
    }
}

TEST_CASE("dirichlet beta and lambda") {
    Bits P{256};
    MpReal pi_ = oracle::pi(P);
    CHECK(close(dirichlet_beta(1, P), pi_ / 4L, -(256 - 8)));
    CHECK(close(dirichlet_beta(2, P), oracle::catalan(P), -(256 - 8)));
    CHECK(close(dirichlet_beta(3, P), pow(pi_, 3) / 32L, -(256 - 8)));
    CHECK(close(dirichlet_beta(5, P), oracle::dirichlet_beta_naive(5, P), -(256 - 8)));
    CHECK(close(dirichlet_lambda(5, P), oracle::zeta(5, P) * Rational(31, 32), -(256 - 8)));
}

TEST_CASE("gamma and beta_fn") {
    Bits P{256};
    MpReal pi_ = oracle::pi(P);
    CHECK(close(gamma(MpReal(Rational(1, 2), P), P), sqrt(pi_), -(256 - 8)));
    BigInt f = 1;
    for (long n = 1; n <= 10; ++n) {
        f *= n;
        CHECK(close(gamma(MpReal(n + 1, P), P), MpReal(f, P), -(256 - 8) + 22));
    }
    MpReal third(Rational(1, 3), P);
    CHECK(close(gamma(third, P) * gamma(1L - third, P), pi_ / sin(pi_ * third), -(256 - 16)));
    MpReal x(Rational(-7, 3), P);
    CHECK(close(gamma(x, P), oracle::gamma(x), -(256 - 8)));
    MpComplex z(Rational(1, 3), Rational(2, 7), P);
    MpComplex gz = gamma(z, P), gz1 = gamma(z + MpComplex(MpReal(1, P)), P);
    CHECK(close(gz1, gz * z, -(256 - 12)));
    CHECK_THROWS_AS(gamma(MpReal(-3, P), P), PoleError);
    CHECK_THROWS_AS(gamma(MpReal(0, P), P), PoleError);

    CHECK(close(beta_fn(MpReal(1, P), MpReal(1, P), P), MpReal(1, P), -(256 - 8)));
    MpReal h(Rational(1, 2), P);
    CHECK(close(beta_fn(h, h, P), pi_, -(256 - 8)));
    MpReal a(Rational(3, 10), P), b(Rational(17, 10), P);
    CHECK(close(beta_fn(a, b, P), beta_fn(b, a, P), -(256 - 8)));
}

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    for (int m = 2; m <= 64; m += 2) {
        BigInt d = bernoulli(m).den();
        for (long p = 2; p * p <= d; ++p) CHECK(d % (p * p) != 0);
        // von Staudt-Clausen: the denominator is the product of primes p with (p-1) | m.
        BigInt expect = 1;
        for (long p = 2; p <= m + 1; ++p) {
            bool prime = true;
            for (long q = 2; q * q <= p; ++q) prime = prime && p % q != 0;
            if (prime && m % (p - 1) == 0) expect *= p;
        }
        CHECK(d == expect);
    }
    CHECK_THROWS_AS(bernoulli(3), DomainError);
    CHECK_THROWS_AS(bernoulli(4096), DomainError);
}

TEST_CASE("taylor coefficients") {
    Bits P{128};
    MpReal radius(Rational(1, 4), P);
    auto geo = taylor_coeffs([](const MpReal& t) { return 1L / (1L - t); }, 6, P, radius);
    for (const auto& c : geo) CHECK(close(c, MpReal(1, P), -64));
    auto ex = taylor_coeffs([](const MpReal& t) { return exp(t); }, 6, P, radius);
    BigInt f = 1;
    for (int k = 0; k <= 6; ++k) {
        if (k) f *= k;
        CHECK(close(ex[static_cast<size_t>(k)], MpReal(Rational(BigInt(1), f), P), -64));
    }
}

TEST_CASE("precision contract") {
    // Recomputing at 2P and rounding to P agrees within 2^-(P-8) in relative terms.
    Bits P{200}, P2{400};
    auto agree = [&](const MpReal& a, const MpReal& b) {
        return close(a, b.rounded(P), a.exponent() - (P.value - 8));
    };
    CHECK(agree(zeta(7, P), zeta(7, P2)));
    CHECK(agree(dirichlet_beta(4, P), dirichlet_beta(4, P2)));
    CHECK(agree(gamma(MpReal(Rational(2, 7), P), P), gamma(MpReal(Rational(2, 7), P2), P2)));
    CHECK(agree(polylog(4, MpReal(Rational(-1, 4), P), P), polylog(4, MpReal(Rational(-1, 4), P2), P2)));
}

TEST_CASE("rational arithmetic stays canonical") {
    Rational q(6, -4);
    CHECK(q.num() == -3);
    CHECK(q.den() == 2);
    CHECK(Rational::parse("343/128") + Rational(1, 128) == Rational(43, 16));
    CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
}
