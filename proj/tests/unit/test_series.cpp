#include <doctest.h>

#include <map>

#include "oracle.hpp"
#include "polylad/errors.hpp"
#include "polylad/ladders/ladders.hpp"
#include "polylad/mp/functions.hpp"
#include "polylad/series/series.hpp"

using namespace polylad;
using namespace polylad::series;
using mp::MpComplex;
using oracle::close;

namespace {

MpReal oracle_constant(const std::string& name, Bits P) {
    MpReal pi = oracle::pi(P), l2 = oracle::log2(P);
    if (name == "pi" || name == "pi_bellard") return pi;
    if (name == "pi2") return pi * pi;
    if (name == "log2sq") return l2 * l2;
    if (name == "catalan") return oracle::catalan(P);
    if (name == "log2cu") return pow(l2, 3);
    if (name == "zeta3") return oracle::zeta(3, P);
    if (name == "beta3") return pow(pi, 3) / 32L;
    if (name == "log2_4") return pow(l2, 4);
    if (name == "pi4") return pow(pi, 4);
    if (name == "log2_5") return pow(l2, 5);
    if (name == "zeta5") return oracle::zeta(5, P);
    FAIL("no oracle for " << name);
    return pi;
}

MpReal eval_pattern_list(const std::vector<std::pair<Rational, SeriesSpec>>& terms, Bits P) {
    MpReal s(P + 32);
    for (const auto& [c, spec] : terms) s += eval_series(spec, P + 32) * c;
    return s.rounded(P);
}

}  // namespace

TEST_CASE("catalog has the twelve printed formulas") {
    std::vector<std::string> names;
    for (const auto& f : catalog()) names.push_back(f.name);
    CHECK(names == std::vector<std::string>{"pi", "pi_bellard", "pi2", "log2sq", "catalan", "log2cu", "zeta3",
                                            "beta3", "log2_4", "pi4", "log2_5", "zeta5"});
    CHECK_THROWS_AS(find_formula("zeta7"), UnknownFormula);
}

TEST_CASE("printed coefficients are kept verbatim") {
    const auto& g = find_formula("catalan");
    REQUIRE(g.terms.size() == 2);
    CHECK(g.terms[0].coef == Rational(3));
    CHECK(g.terms[0].spec == SeriesSpec{2, 1, make_pattern({1, -1, 1, 0, -1, 1, -1, 0})});
    CHECK(g.terms[1].coef == Rational(-2));
    CHECK(g.terms[1].spec == SeriesSpec{2, 3, make_pattern({1, 1, 1, 0, -1, -1, -1, 0})});
    const auto& z5 = find_formula("zeta5");
    CHECK(z5.scale == Rational(2048, 62651));
    REQUIRE(z5.terms.size() == 3);
    CHECK(z5.terms[0].coef == Rational(9));
    CHECK(z5.terms[0].spec.pattern == make_pattern({31, -1614, -31, -6212, -31, -1614, 31, 74552}));
    CHECK(z5.terms[2].coef == Rational(-738));
}

TEST_CASE("every catalog formula matches its oracle") {
    for (long p : {128L, 512L, 1024L}) {
        Bits P{p};
        for (const auto& f : catalog()) {
            CAPTURE(f.name);
            CAPTURE(p);
            MpReal v = eval_formula(f, P), o = oracle_constant(f.name, P);
            CHECK(close(v, o, o.exponent() - (p - 16)));
        }
    }
}

TEST_CASE("eval_series basics") {
    Bits P{256};
    CHECK(close(eval_series({1, 1, make_pattern({1, 0, 0, -1, -1, -1, 0, 0})}, P) * 8L, oracle::pi(P), -(256 - 8)));
    CHECK(eval_series({5, 3, make_pattern({0, 0, 0, 0, 0, 0, 0, 0})}, P).is_zero());
    // Linearity over patterns.
    auto a = make_pattern({1, -7, -1, 10, -1, -7, 1, 0}), b = make_pattern({3, 1, 0, -2, 5, 1, 1, 9});
    PeriodicPattern sum;
    for (size_t k = 0; k < 8; ++k) sum.a[k] = a.a[k] + b.a[k];
    CHECK(close(eval_series({3, 1, sum}, P), eval_series({3, 1, a}, P) + eval_series({3, 1, b}, P), -(256 - 8)));
    // Direct partial sum of the defining series.
    SeriesSpec s{2, 3, b};
    MpReal direct(P + 32);
    for (long k = 1; k <= 200; ++k) {
        MpReal t(s.pattern.at(k), P + 32);
        direct += ldexp(t, -((3 * k + 3) / 2)) / (k * k);
    }
    CHECK(close(eval_series(s, P), direct, -(256 - 8)));
}

TEST_CASE("polylog patterns reproduce Li_n at every supported argument") {
    namespace A = ladders::arg;
    std::vector<std::pair<std::string, ExactComplex>> args = {
        {"1/2", A::half()},          {"w", A::w()},
        {"conj w", A::w_conj()},     {"w/2", A::quarter_w()},
        {"conj w/4", A::eighth_w_conj()}, {"i/2", A::i_half()},
        {"-i/2", A::neg_i_half()},   {"-1/2", ExactComplex(Rational(-1, 2))},
        {"-1/4", ExactComplex(Rational(-1, 4))}, {"-1/8", ExactComplex(Rational(-1, 8))},
    };
    Bits P{256};
    for (const auto& [label, z] : args) {
        for (int n = 1; n <= 6; ++n) {
            MpComplex li = oracle::polylog_naive(n, z.value(P + 32), P);
            CAPTURE(label);
            CAPTURE(n);
            CHECK(close(eval_pattern_list(polylog_pattern(z, n, Part::re), P), li.re(), -(256 - 16)));
            CHECK(close(eval_pattern_list(polylog_pattern(z, n, Part::im), P), li.im(), -(256 - 16)));
        }
    }
}

TEST_CASE("polylog pattern shapes") {
    namespace A = ladders::arg;
    auto w = polylog_pattern(A::w(), 2, Part::re);
    REQUIRE(w.size() == 1);
    CHECK(w[0].first == Rational(1));
    CHECK(w[0].second == SeriesSpec{2, 1, make_pattern({1, 0, -1, -1, -1, 0, 1, 1})});
    auto half = polylog_pattern(A::half(), 3, Part::re);
    REQUIRE(half.size() == 1);
    // Li_n(1/2) = sum 2/(2^(k+1) k^n); odd-p canonical form folds the constant pattern.
    MpReal v = eval_pattern_list(half, Bits{128});
    CHECK(close(v, oracle::polylog_naive(3, MpComplex(MpReal(Rational(1, 2), Bits{160})), Bits{128}).re(), -120));
    CHECK(polylog_pattern(A::half(), 3, Part::im).empty());
    // Re Li_n(i/sqrt2) has rational coefficients; the imaginary part carries sqrt2.
    MpReal re_h = eval_pattern_list(polylog_pattern(A::h(), 4, Part::re), Bits{128});
    CHECK(close(re_h, oracle::polylog_naive(4, A::h().value(Bits{160}), Bits{128}).re(), -120));
    CHECK_THROWS_AS(polylog_pattern(A::h(), 2, Part::im), UnsupportedArgument);
    CHECK_THROWS_AS(polylog_pattern(A::i(), 2, Part::re), UnsupportedArgument);
}

TEST_CASE("solver reproduces printed formulas") {
    const auto& cat = ladders::default_catalog();
    auto g = solve_formulas({cat.relation("w21"), cat.relation("w23")},
                            {{"g", Monomial::beta_of(2)}, {"pl", Monomial::pi_pow(1, 1)},
                             {"p2", Monomial::pi_pow(2, 0)}, {"l2", Monomial::pi_pow(0, 2)}});
    REQUIRE(g.size() == 4);
    Bits P{256};
    CHECK(close(eval_formula(g[0], P), oracle::catalan(P), -(256 - 16)));
    // Same terms as the printed (3, -2) pair.
    const auto& printed_g = find_formula("catalan");
    REQUIRE(g[0].terms.size() == printed_g.terms.size());
    for (size_t k = 0; k < printed_g.terms.size(); ++k) {
        CHECK(g[0].terms[k].spec == printed_g.terms[k].spec);
        CHECK(g[0].terms[k].coef * g[0].scale == printed_g.terms[k].coef);
    }
    CHECK(close(eval_formula(g[0], P), eval_formula("catalan", P), -(256 - 16)));
    CHECK(close(eval_formula(g[1], P), oracle::pi(P) * oracle::log2(P), -(256 - 16)));

    auto b3 = solve_formulas({cat.relation("i3")}, {{"b3", Monomial::beta_of(3)}, {"p3", Monomial::pi_pow(3, 0)},
                                                     {"pl", Monomial::pi_pow(1, 2)}});
    REQUIRE(b3.size() == 3);
    const auto& printed = find_formula("beta3");
    CHECK(b3[0].terms.size() == printed.terms.size());
    for (size_t k = 0; k < printed.terms.size() && k < b3[0].terms.size(); ++k) {
        CHECK(b3[0].terms[k].spec == printed.terms[k].spec);
        CHECK(b3[0].terms[k].coef * b3[0].scale == printed.terms[k].coef * printed.scale);
    }

    CHECK_THROWS_AS(solve_formulas({cat.relation("w21")}, {{"g", Monomial::beta_of(2)}, {"pl", Monomial::pi_pow(1, 1)}}),
                    RankDeficient);
}

TEST_CASE("derived formulas evaluate to their targets") {
    auto d = derived_formulas();
    Bits P{256};
    MpReal pi = oracle::pi(P), l2 = oracle::log2(P);
    std::map<std::string, MpReal> expect = {
        {"pi_log2", pi * l2},      {"pi3", pow(pi, 3)},           {"pi_log2sq", pi * l2 * l2},
        {"pi2_log2", pi * pi * l2}, {"pi2_log2sq", pi * pi * l2 * l2}, {"pi2_log2cu", pi * pi * pow(l2, 3)},
        {"pi4_log2", pow(pi, 4) * l2},
    };
    for (const auto& [name, value] : expect) {
        CAPTURE(name);
        auto it = std::find_if(d.begin(), d.end(), [&](const Formula& f) { return f.name == name; });
        REQUIRE(it != d.end());
        CHECK(close(eval_formula(*it, P), value, value.exponent() - (256 - 16)));
    }
}

TEST_CASE("catalog json round trip") {
    std::string j = to_json(catalog());
    auto back = formulas_from_json(j);
    REQUIRE(back.size() == catalog().size());
    for (size_t k = 0; k < back.size(); ++k) {
        CHECK(back[k].name == catalog()[k].name);
        CHECK(back[k].scale == catalog()[k].scale);
        CHECK(back[k].terms == catalog()[k].terms);
        CHECK(back[k].paper_eq == catalog()[k].paper_eq);
    }
    CHECK(to_json(back) == j);
}
