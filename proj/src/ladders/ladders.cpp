#include "polylad/ladders/ladders.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include <json.hpp>

#include "polylad/errors.hpp"
#include "polylad/mp/functions.hpp"
#include "polylad/series/series.hpp"

namespace polylad::ladders {

namespace {

using R = Rational;

LadderPolyTerm li(R coef, R base, int offset, ExactComplex z, Part part) {
    return {std::move(coef), std::move(base), offset, std::move(z), part};
}

Monomial zeta_m(int k) { return Monomial::zeta_of(k); }
Monomial beta_m(int k) { return Monomial::beta_of(k); }

LadderSpec base_ladder(std::string name, std::string eq, std::vector<LadderPolyTerm> terms) {
    return {std::move(name), std::move(eq), std::move(terms), {}, {}};
}

LadderSpec combo(std::string name, std::string eq, std::vector<LadderSubTerm> subs,
                 std::vector<LadderLogTerm> logs) {
    return {std::move(name), std::move(eq), {}, std::move(subs), std::move(logs)};
}

std::vector<LadderSpec> build_ladders() {
    using namespace arg;
    const Part re = Part::re, im = Part::im;
    std::vector<LadderSpec> v;
    v.push_back(base_ladder("A", "an", {li(1, 1, 0, half(), re)}));
    v.push_back(base_ladder("B", "bn", {li(1, 2, -1, w(), re)}));
    v.push_back(base_ladder("C", "cn", {li(1, R(2, 3), -1, i_over_sqrt8(), re), li(-1, 2, 0, neg_i_over_sqrt2(), re)}));
    v.push_back(base_ladder("D", "dn", {li(1, R(2, 3), -1, quarter_w(), re), li(-1, 1, 0, neg_i_half(), re)}));
    v.push_back(base_ladder("E", "en", {li(1, R(2, 5), -1, eighth_w_conj(), re), li(-2, 1, 0, neg_i_half(), re)}));
    v.push_back(base_ladder("F", "fn", {li(1, 2, -1, w(), im)}));
    v.push_back(base_ladder("G", "gn", {li(1, R(2, 3), -1, quarter_w(), im), li(-1, 1, 0, neg_i_half(), im)}));
    v.push_back(base_ladder("H", "hn", {li(1, R(2, 5), -1, eighth_w_conj(), im), li(-2, 1, 0, neg_i_half(), im)}));

    const Monomial one = Monomial::constant();
    v.push_back(combo("Abar", "ab", {{1, "A"}}, {{1, one, 0}, {R(-1, 2), zeta_m(2), 2}}));
    v.push_back(combo("Bbar", "bb", {{1, "B"}}, {{R(1, 2), one, 0}, {R(-5, 8), zeta_m(2), 2}}));
    v.push_back(combo("Cbar", "cb", {{1, "C"}}, {{R(1, 2), one, 0}, {R(-1, 3), zeta_m(2), 2}}));
    v.push_back(combo("Dbar", "db", {{1, "D"}}, {{R(1, 2), one, 0}, {R(-5, 24), zeta_m(2), 2}}));
    v.push_back(combo("Ebar", "eb", {{1, "E"}}, {{R(1, 2), one, 0}, {R(-7, 40), zeta_m(2), 2}}));
    v.push_back(combo("Fbar", "fb", {{1, "F"}}, {{-1, beta_m(1), 1}}));
    v.push_back(combo("Gbar", "gb", {{1, "G"}}, {{-1, beta_m(1), 1}}));
    v.push_back(combo("Hbar", "hb", {{1, "H"}}, {{-1, beta_m(1), 1}}));

    v.push_back(combo("Btilde", "bt", {{1, "Bbar"}, {R(-5, 2), "Abar"}}, {{R(-343, 128), zeta_m(4), 4}}));
    v.push_back(combo("Ctilde", "ct", {{1, "Cbar"}, {R(-7, 9), "Abar"}}, {{R(-5, 54), zeta_m(4), 4}}));
    v.push_back(combo("Dtilde", "dt", {{1, "Dbar"}, {R(-1, 3), "Abar"}}, {{R(313, 3456), zeta_m(4), 4}}));
    v.push_back(combo("Etilde", "et", {{1, "Ebar"}, {R(-6, 25), "Abar"}}, {{R(1547, 16000), zeta_m(4), 4}}));
    // The braced group of the H-tilde definition.
    v.push_back(combo("Gcomb", "ht", {{1, "Gbar"}, {R(-2, 3), "Fbar"}}, {{1, beta_m(3), 3}}));
    v.push_back(combo("Htilde", "ht", {{1, "Hbar"}, {R(-4, 5), "Fbar"}, {R(-648, 625), "Gcomb"}},
                      {{R(23, 25), beta_m(3), 3}}));

    v.push_back(combo("U", "un", {{R(13, 23), "Btilde"}, {R(-243, 8), "Ctilde"}}, {{R(-11041, 2048), zeta_m(6), 6}}));
    v.push_back(combo("V", "vn", {{R(19, 23), "Btilde"}, {R(81, 2), "Dtilde"}}, {{R(-87101, 12288), zeta_m(6), 6}}));
    v.push_back(combo("W", "wn", {{R(71, 23), "Btilde"}, {R(625, 4), "Etilde"}},
                      {{R(-1193757, 40960), zeta_m(6), 6}}));
    v.push_back(combo("X", "xn", {{463, "V"}, {-636, "U"}}, {{R(-1323636287, 1769472), zeta_m(8), 8}}));
    v.push_back(combo("Y", "yn", {{R(91, 25), "V"}, {R(-265, 288), "W"}},
                      {{R(-602893337, 113246208), zeta_m(8), 8}}));
    // Z = (1/4823)(2087 Y - (37403/2500) X) - c zeta(10) L_{n-10}
    v.push_back(combo("Zcore", "zn", {{2087, "Y"}, {R(-37403, 2500), "X"}}, {}));
    v.push_back(combo("Z", "zn", {{R(1, 4823), "Zcore"}},
                      {{R(BigInt("-12227440999"), BigInt("135895449600")), zeta_m(10), 10}}));
    return v;
}

// ---- relation helpers ----

Term lad(R c, const std::string& name, int n) { return {std::move(c), LadderRef{name, n}}; }
Term mono(R c, Monomial m) { return {std::move(c), std::move(m)}; }
Term poly(R c, ExactComplex z, int n, Part p) { return {std::move(c), PolyAtom{std::move(z), n, p}}; }
Term form(R c, LinearForm f) { return {std::move(c), std::move(f)}; }
// lambda(n) = (1 - 2^-n) zeta(n)
Term lam(R c, int n) { return mono(c * (R(1) - pow(R(2), -n)), zeta_m(n)); }

RelationSpec rel(std::string name, std::string eq, std::string desc, std::vector<std::vector<Term>> comps,
                 Provenance status = Provenance::proved, long min_bits = 256) {
    return {std::move(name), std::move(eq), std::move(desc), status, min_bits, std::move(comps)};
}

// Real and imaginary components of sum c_j * Li_1(z_j) - rhs_im * i.
std::vector<std::vector<Term>> order_one(const std::vector<std::pair<R, ExactComplex>>& lis, R rhs_im_pi) {
    std::vector<Term> re, im;
    for (const auto& [c, z] : lis) {
        re.push_back(poly(c, z, 1, Part::re));
        im.push_back(poly(c, z, 1, Part::im));
    }
    im.push_back(mono(-rhs_im_pi, Monomial::pi_pow(1)));
    return {re, im};
}

ComplexForm log_of(R log2_coef, R pi_coef) {
    // log2_coef*log2 + i*pi_coef*pi
    return {monomial_form(Monomial::pi_pow(0, 1), log2_coef), monomial_form(Monomial::pi_pow(1), pi_coef)};
}

std::vector<std::vector<Term>> complex_components(const ComplexForm& f) {
    return {{form(1, f.re)}, {form(1, f.im)}};
}

std::vector<RelationSpec> build_relations() {
    using namespace arg;
    const Part re = Part::re;
    std::vector<RelationSpec> v;

    ExactComplex w2 = pow(w(), 2);
    ExactComplex neg_w3 = ExactComplex() - pow(w(), 3);
    ExactComplex neg_w5 = ExactComplex() - pow(w(), 5);
    ExactComplex h3 = pow(arg::h(), 3);

    v.push_back(rel("w11", "w11", "Li1(w) - Li1(1/2)/2 = i pi/4",
                    order_one({{1, w()}, {R(-1, 2), half()}}, R(1, 4))));
    v.push_back(rel("w13", "w13", "Li1(-w^3) - Li1(w^2) - Li1(1/2)/2 = -i pi/4",
                    order_one({{1, neg_w3}, {-1, w2}, {R(-1, 2), half()}}, R(-1, 4))));
    v.push_back(rel("w15", "w15", "Li1(-w^5) - 2 Li1(w^2) - Li1(1/2)/2 = -i pi/4",
                    order_one({{1, neg_w5}, {-2, w2}, {R(-1, 2), half()}}, R(-1, 4))));
    v.push_back(rel("h1", "h1", "Li1(h^3) - 2 Li1(h) - Li1(1/2)/2 = -i pi/2",
                    order_one({{1, h3}, {-2, arg::h()}, {R(-1, 2), half()}}, R(-1, 2))));

    ComplexForm log_w = log_of(R(-1, 2), R(1, 4));       // log w
    ComplexForm log_1mw = log_of(R(-1, 2), R(-1, 4));    // log(1-w)
    ComplexForm li2_neg_i = ComplexForm::li(neg_i(), 2);  // -iG - pi^2/48
    {
        ComplexForm f = R(2) * ComplexForm::li(w(), 2) + log_1mw * log_1mw + R(2) * li2_neg_i;
        v.push_back(rel("w21", "w21", "2 Li2(w) = -log^2(1-w) - 2 Li2(-i)", complex_components(f)));
    }
    {
        ComplexForm f = R(2) * ComplexForm::li(neg_w3, 2) - R(3) * ComplexForm::li(w2, 2) + R(3) * (log_w * log_w) -
                        R(4) * li2_neg_i;
        v.push_back(rel("w23", "w23", "2 Li2(-w^3) = 3{Li2(w^2) - log^2 w} + 4 Li2(-i)", complex_components(f)));
    }
    {
        ComplexForm f = R(2) * ComplexForm::li(neg_w5, 2) - R(10) * ComplexForm::li(w2, 2) + R(5) * (log_w * log_w) -
                        R(8) * li2_neg_i;
        v.push_back(rel("w25", "w25", "2 Li2(-w^5) = 5{2 Li2(w^2) - log^2 w} + 8 Li2(-i)", complex_components(f)));
    }
    v.push_back(rel("h21", "h21", "Re Li2(i) = -pi^2/48",
                    {{poly(1, i(), 2, re), mono(R(1, 48), Monomial::pi_pow(2))}}));
    v.push_back(rel("h22", "h22", "Li2(1/2) = pi^2/12 - log^2(2)/2",
                    {{poly(1, half(), 2, re), mono(R(-1, 12), Monomial::pi_pow(2)),
                      mono(R(1, 2), Monomial::pi_pow(0, 2))}}));
    v.push_back(rel("h23", "h23", "Re{Li2(h^3) - 6 Li2(h)} = pi^2/12 - 3 log^2(2)/8",
                    {{poly(1, h3, 2, re), poly(-6, arg::h(), 2, re), mono(R(-1, 12), Monomial::pi_pow(2)),
                      mono(R(3, 8), Monomial::pi_pow(0, 2))}}));

    {
        std::vector<std::vector<Term>> c;
        for (const char* x : {"Abar", "Bbar", "Cbar", "Dbar", "Ebar", "Fbar", "Gbar", "Hbar"}) c.push_back({lad(1, x, 1)});
        v.push_back(rel("r1", "r1", "all barred ladders vanish at n = 1", c));
    }
    {
        std::vector<std::vector<Term>> c;
        for (const char* x : {"Abar", "Bbar", "Cbar", "Dbar", "Ebar"}) c.push_back({lad(1, x, 2)});
        v.push_back(rel("r2", "r2", "real barred ladders vanish at n = 2", c));
    }
    v.push_back(rel("i2", "i2", "Fbar2/2 = 3 Gbar2/4 = 5 Hbar2/8 = G",
                    {{lad(R(1, 2), "Fbar", 2), mono(-1, beta_m(2))},
                     {lad(R(3, 4), "Gbar", 2), mono(-1, beta_m(2))},
                     {lad(R(5, 8), "Hbar", 2), mono(-1, beta_m(2))}}));
    v.push_back(rel("r3", "r3", "lambda(3) = Abar3 = 2/5 Bbar3 = 9/7 Cbar3 = 3 Dbar3 = 25/6 Ebar3",
                    {{lam(1, 3), lad(-1, "Abar", 3)},
                     {lam(1, 3), lad(R(-2, 5), "Bbar", 3)},
                     {lam(1, 3), lad(R(-9, 7), "Cbar", 3)},
                     {lam(1, 3), lad(-3, "Dbar", 3)},
                     {lam(1, 3), lad(R(-25, 6), "Ebar", 3)}}));
    v.push_back(rel("i3", "i3", "beta(3) = pi^3/32 = 2/3 Fbar3 - Gbar3 = 20/23 Fbar3 - 25/23 Hbar3",
                    {{mono(1, beta_m(3)), mono(R(-1, 32), Monomial::pi_pow(3))},
                     {mono(R(1, 32), Monomial::pi_pow(3)), lad(R(-2, 3), "Fbar", 3), lad(1, "Gbar", 3)},
                     {mono(R(1, 32), Monomial::pi_pow(3)), lad(R(-20, 23), "Fbar", 3), lad(R(25, 23), "Hbar", 3)}}));
    v.push_back(rel("r4b", "r4b", "Bbar4 - 5/2 Abar4 = 343/128 zeta(4)",
                    {{lad(1, "Bbar", 4), lad(R(-5, 2), "Abar", 4), mono(R(-343, 128), zeta_m(4))}}));
    v.push_back(rel("r4c", "r4c", "Cbar4 - 7/9 Abar4 = 5/54 zeta(4)",
                    {{lad(1, "Cbar", 4), lad(R(-7, 9), "Abar", 4), mono(R(-5, 54), zeta_m(4))}}));
    v.push_back(rel("r4d", "r4d", "Dbar4 - 1/3 Abar4 = -313/3456 zeta(4)",
                    {{lad(1, "Dbar", 4), lad(R(-1, 3), "Abar", 4), mono(R(313, 3456), zeta_m(4))}}));
    v.push_back(rel("r4e", "r4e", "Ebar4 - 6/25 Abar4 = -1547/16000 zeta(4)",
                    {{lad(1, "Ebar", 4), lad(R(-6, 25), "Abar", 4), mono(R(1547, 16000), zeta_m(4))}}));
    v.push_back(rel("i4g", "i4g", "Gbar4 - 2/3 Fbar4 - beta(3) log2 = -80/27 beta(4)",
                    {{lad(1, "Gbar", 4), lad(R(-2, 3), "Fbar", 4), mono(-1, beta_m(3) * Monomial::pi_pow(0, 1)),
                      mono(R(80, 27), beta_m(4))}}));
    v.push_back(rel("i4h", "i4h", "Hbar4 - 4/5 Fbar4 - 23/25 beta(3) log2 = -384/125 beta(4)",
                    {{lad(1, "Hbar", 4), lad(R(-4, 5), "Fbar", 4),
                      mono(R(-23, 25), beta_m(3) * Monomial::pi_pow(0, 1)), mono(R(384, 125), beta_m(4))}}));
    v.push_back(rel("r5c", "r5c", "Ctilde5 = 13/81 lambda(5)", {{lad(1, "Ctilde", 5), lam(R(-13, 81), 5)}}));
    v.push_back(rel("r51", "r51", "Btilde5 + 9/2 Dtilde5 = 47/6 lambda(5)",
                    {{lad(1, "Btilde", 5), lad(R(9, 2), "Dtilde", 5), lam(R(-47, 6), 5)}}));
    v.push_back(rel("r52", "r52", "Btilde5 - (9/2)^3 Dtilde5 + (5/2)^4 Etilde5 = 18 lambda(5)",
                    {{lad(1, "Btilde", 5), lad(-pow(R(9, 2), 3), "Dtilde", 5), lad(pow(R(5, 2), 4), "Etilde", 5),
                      lam(-18, 5)}}));
    v.push_back(rel("qef", "qef", "Btilde5 = 69/8 lambda(5)", {{lad(1, "Btilde", 5), lam(R(-69, 8), 5)}},
                    Provenance::numeric));
    v.push_back(rel("n5h", "n5h", "Htilde5 = -1567/3125 beta(5)",
                    {{lad(1, "Htilde", 5), mono(R(1567, 3125), beta_m(5))}}, Provenance::numeric));
    v.push_back(rel("r5", "r5", "lambda(5) = 8/69 Btilde5 = 81/13 Ctilde5 = -108/19 Dtilde5 = -1250/213 Etilde5",
                    {{lam(1, 5), lad(R(-8, 69), "Btilde", 5)},
                     {lam(1, 5), lad(R(-81, 13), "Ctilde", 5)},
                     {lam(1, 5), lad(R(108, 19), "Dtilde", 5)},
                     {lam(1, 5), lad(R(1250, 213), "Etilde", 5)}}));
    v.push_back(rel("b6", "b6", "61 beta(6)/3 = (1567 beta(5) log2 - 3125 Htilde6)/2^8",
                    {{mono(R(61, 3), beta_m(6)), mono(R(-1567, 256), beta_m(5) * Monomial::pi_pow(0, 1)),
                      lad(R(3125, 256), "Htilde", 6)}},
                    Provenance::numeric));
    v.push_back(rel("z7", "z7", "340/23 lambda(7) = 384/463 U7 = 32/53 V7 = 125/819 W7",
                    {{lam(R(340, 23), 7), lad(R(-384, 463), "U", 7)},
                     {lam(R(340, 23), 7), lad(R(-32, 53), "V", 7)},
                     {lam(R(340, 23), 7), lad(R(-125, 819), "W", 7)}},
                    Provenance::numeric));
    v.push_back(rel("z9", "z9", "217/864 lambda(9) = X9/10435 = 500/37403 Y9",
                    {{lam(R(217, 864), 9), lad(R(-1, 10435), "X", 9)},
                     {lam(R(217, 864), 9), lad(R(-500, 37403), "Y", 9)}},
                    Provenance::numeric));
    v.push_back(rel("z11", "z11", "lambda(11) = 129600000/41323873 Z11",
                    {{lam(1, 11), lad(R(-129600000, 41323873), "Z", 11)}}, Provenance::numeric));
    {
        auto B = [](const char* s) { return R(BigInt(s)); };
        ExactComplex one_plus_i_8{QuadExt(R(1, 8)), QuadExt(R(1, 8))};
        std::vector<Term> c = {
            mono(B("46090055410032553920"), zeta_m(11)),
            poly(-B("105497707483968307200"), w(), 11, re),
            poly(-B("14102390469191270400"), quarter_w(), 11, re),
            poly(B("943412955347681280"), one_plus_i_8, 11, re),
            poly(-B("8628616191131674214400"), half(), 11, re),
            poly(-B("8666542920405771878400"), ExactComplex::parse("-1/2"), 11, re),
            poly(-B("8389140238437235200"), ExactComplex::parse("-1/4"), 11, re),
            poly(B("73384332676300800"), ExactComplex::parse("-1/8"), 11, re),
            mono(B("5097106123776"), Monomial::pi_pow(0, 11)),
            mono(-B("9394465639680"), Monomial::pi_pow(2, 9)),
            mono(B("13065007342464"), Monomial::pi_pow(4, 7)),
            mono(-B("20585306545056"), Monomial::pi_pow(6, 5)),
            mono(B("42801564610332"), Monomial::pi_pow(8, 3)),
            mono(-B("139087141363625"), Monomial::pi_pow(10, 1)),
        };
        v.push_back(rel("f11", "f11", "integer relation for zeta(11)", {c}, Provenance::numeric, 1024));
    }
    v.push_back(rel("cat", "cat", "G = 3/2 (F2 - G2)",
                    {{mono(1, beta_m(2)), lad(R(-3, 2), "F", 2), lad(R(3, 2), "G", 2)}}));
    {
        std::vector<std::vector<Term>> c;
        for (const char* x : {"Btilde", "Ctilde", "Dtilde", "Etilde", "Htilde"}) {
            for (int n = 1; n <= 4; ++n) c.push_back({lad(1, x, n)});
        }
        v.push_back(rel("vanish_tilde", "bt", "tilde ladders vanish for n <= 4", c));
    }
    {
        std::vector<std::vector<Term>> c;
        for (const char* x : {"U", "V", "W"}) {
            for (int n = 1; n <= 6; ++n) c.push_back({lad(1, x, n)});
        }
        v.push_back(rel("vanish_uvw", "un", "U, V, W vanish for n <= 6", c, Provenance::numeric));
    }
    {
        std::vector<std::vector<Term>> c;
        for (const char* x : {"X", "Y"}) {
            for (int n = 1; n <= 8; ++n) c.push_back({lad(1, x, n)});
        }
        v.push_back(rel("vanish_xy", "xn", "X, Y vanish for n <= 8", c, Provenance::numeric));
    }
    {
        std::vector<std::vector<Term>> c;
        for (int n = 1; n <= 10; ++n) c.push_back({lad(1, "Z", n)});
        v.push_back(rel("vanish_z", "zn", "Z vanishes for n <= 10", c, Provenance::numeric));
    }
    {
        // Li5(-x) + Li5(x) = Li5(x^2)/16 at x = 1/2 and x = i/2.
        std::vector<std::vector<Term>> c;
        for (const ExactComplex& x : {half(), i_half()}) {
            for (Part p : {Part::re, Part::im}) {
                if (p == Part::im && x.is_real()) continue;
                c.push_back({poly(1, ExactComplex() - x, 5, p), poly(1, x, 5, p), poly(R(-1, 16), x * x, 5, p)});
            }
        }
        v.push_back(rel("dup5", "ri", "Li5(-x) + Li5(x) = Li5(x^2)/16", c));
    }
    return v;
}

}  // namespace

const LadderSpec& Catalog::ladder(const std::string& name) const {
    for (const auto& l : ladders) {
        if (l.name == name) return l;
    }
    throw UndefinedOrder("unknown ladder '" + name + "'");
}

const RelationSpec& Catalog::relation(const std::string& name) const {
    for (const auto& r : relations) {
        if (r.name == name) return r;
    }
    throw UnknownRelation("unknown relation '" + name + "'");
}

const Catalog& default_catalog() {
    static const Catalog cat{build_ladders(), build_relations()};
    return cat;
}

LinearForm log_power(int m) {
    LinearForm f;
    if (m < 0) return f;
    BigInt fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(m));
    R c(BigInt(m % 2 ? -1 : 1), fact);
    f.add_monomial(Monomial::pi_pow(0, m), c);
    return f;
}

namespace {

// Inside ladder definitions zeta(2) and beta(1) are the exact pi^2/6 and pi/4.
LinearForm hardwired(const Monomial& m) {
    Monomial rest = m;
    R c(1);
    if (auto it = rest.zeta.find(2); it != rest.zeta.end()) {
        c *= pow(R(1, 6), it->second);
        rest.pi += 2 * it->second;
        rest.zeta.erase(it);
    }
    if (auto it = rest.beta.find(1); it != rest.beta.end()) {
        c *= pow(R(1, 4), it->second);
        rest.pi += it->second;
        rest.beta.erase(it);
    }
    return monomial_form(rest, c);
}

}  // namespace

LinearForm ladder_form(const std::string& name, int n, const Catalog& cat) {
    if (n < 1 || n > 11) {
        throw UndefinedOrder("ladder " + name + " is defined for orders 1..11, got " + std::to_string(n));
    }
    const LadderSpec& spec = cat.ladder(name);
    LinearForm f;
    for (const auto& t : spec.terms) {
        f.add_polylog(t.arg, n, t.part, t.coef * pow(t.base, n + t.offset));
    }
    for (const auto& s : spec.subs) f += s.coef * ladder_form(s.ladder, n, cat);
    for (const auto& l : spec.logcorr) f += l.coef * (hardwired(l.factor) * log_power(n - l.shift));
    return f;
}

LinearForm compile(const std::vector<Term>& component, const Catalog& cat) {
    LinearForm f;
    for (const auto& t : component) {
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, LadderRef>) {
                    f += t.coef * ladder_form(x.ladder, x.n, cat);
                } else if constexpr (std::is_same_v<T, Monomial>) {
                    f.add_monomial(x, t.coef);
                } else if constexpr (std::is_same_v<T, PolyAtom>) {
                    f.add_polylog(x.arg, x.n, x.part, t.coef);
                } else {
                    f += t.coef * x;
                }
            },
            t.what);
    }
    return f;
}

// ---- numeric evaluation ----

MpReal Evaluator::pi_value() {
    auto it = pi_pows_.find(1);
    if (it == pi_pows_.end()) it = pi_pows_.emplace(1, mp::pi(P_)).first;
    return it->second;
}

MpReal Evaluator::log2_value() {
    auto it = log2_pows_.find(1);
    if (it == log2_pows_.end()) it = log2_pows_.emplace(1, mp::log2(P_)).first;
    return it->second;
}

MpReal Evaluator::zeta_value(int n) {
    auto it = zetas_.find(n);
    if (it == zetas_.end()) it = zetas_.emplace(n, mp::zeta(n, P_)).first;
    return it->second;
}

MpReal Evaluator::beta_value(int n) {
    auto it = betas_.find(n);
    if (it == betas_.end()) {
        // Catalan's constant comes from its own BBP-type formula.
        MpReal v = n == 2 ? series::eval_formula("catalan", P_ + 16).rounded(P_) : mp::dirichlet_beta(n, P_);
        it = betas_.emplace(n, std::move(v)).first;
    }
    return it->second;
}

const MpComplex& Evaluator::polylog(const ExactComplex& z, int n) {
    auto key = std::make_pair(z, n);
    auto it = polylogs_.find(key);
    if (it == polylogs_.end()) it = polylogs_.emplace(key, mp::polylog(n, z.value(P_ + 16), P_)).first;
    return it->second;
}

MpReal Evaluator::monomial(const Monomial& m) {
    MpReal v(1, P_);
    auto cached_pow = [&](std::map<int, MpReal>& cache, int e, MpReal base) {
        auto it = cache.find(e);
        if (it == cache.end()) it = cache.emplace(e, mp::pow(base, static_cast<long>(e))).first;
        return it->second;
    };
    if (m.pi) v *= cached_pow(pi_pows_, m.pi, pi_value());
    if (m.log2) v *= cached_pow(log2_pows_, m.log2, log2_value());
    for (auto [k, e] : m.zeta) v *= mp::pow(zeta_value(k), static_cast<long>(e));
    for (auto [k, e] : m.beta) v *= mp::pow(beta_value(k), static_cast<long>(e));
    return v;
}

MpReal Evaluator::atom(const Atom& a) {
    if (const auto* p = std::get_if<PolyAtom>(&a)) {
        const MpComplex& v = polylog(p->arg, p->n);
        return p->part == Part::re ? v.re() : v.im();
    }
    return monomial(std::get<Monomial>(a));
}

MpReal Evaluator::value(const LinearForm& f) {
    MpReal sum(P_);
    for (const auto& [a, c] : f.terms()) sum += atom(a) * c;
    return sum;
}

long guard_bits_for(const LinearForm& f) {
    double biggest = 0;
    for (const auto& [a, c] : f.terms()) {
        double lg = static_cast<double>(mpz_sizeinbase(c.num().get_mpz_t(), 2));
        biggest = std::max(biggest, lg);
    }
    return 32 + static_cast<long>(biggest) + static_cast<long>(std::log2(static_cast<double>(f.terms().size()) + 1));
}

MpReal eval_ladder(const std::string& name, int n, Bits P, const Catalog& cat) {
    LinearForm f = ladder_form(name, n, cat);
    Evaluator ev(P + guard_bits_for(f));
    return ev.value(f).rounded(P);
}

namespace {

CheckReport evaluate(const RelationSpec& rel, Bits P, const Catalog& cat, Evaluator* shared) {
    std::vector<LinearForm> forms;
    long guard = 32;
    for (const auto& comp : rel.components) {
        forms.push_back(compile(comp, cat));
        guard = std::max(guard, guard_bits_for(forms.back()));
    }
    Evaluator local(P + guard);
    Evaluator& ev = (shared && shared->precision() >= P + guard) ? *shared : local;
    MpReal worst(ev.precision());
    for (const auto& f : forms) {
        MpReal r = mp::abs(ev.value(f));
        if (r > worst) worst = r;
    }
    CheckReport rep;
    rep.name = rel.name;
    rep.bits = P.value;
    rep.log2_residual = mp::log2_abs(worst);
    rep.pass = rep.log2_residual < -static_cast<double>(P.value - 64);
    return rep;
}

}  // namespace

CheckReport check_relation(const RelationSpec& rel, Bits P, const Catalog& cat) {
    if (P.value < rel.min_bits) {
        throw PrecisionError("relation " + rel.name + " needs at least " + std::to_string(rel.min_bits) + " bits");
    }
    return evaluate(rel, P, cat, nullptr);
}

CheckReport check_relation(const std::string& name, Bits P, const Catalog& cat) {
    return check_relation(cat.relation(name), P, cat);
}

std::vector<CheckReport> check_all(Bits P, const Catalog& cat) {
    std::vector<CheckReport> out;
    Evaluator shared(P + 160);
    for (const auto& rel : cat.relations) {
        if (P.value < rel.min_bits) {
            CheckReport skip;
            skip.name = rel.name;
            skip.bits = P.value;
            skip.log2_residual = std::numeric_limits<double>::quiet_NaN();
            skip.pass = true;
            skip.skipped = true;
            skip.detail = "needs " + std::to_string(rel.min_bits) + " bits";
            out.push_back(skip);
            continue;
        }
        out.push_back(evaluate(rel, P, cat, &shared));
    }
    return out;
}

CheckReport check_li5_identity(const MpComplex& x, const MpComplex& y, Bits P) {
    Bits wp = P + 48;
    const MpComplex one(MpReal(1, wp));
    MpComplex X = x.rounded(wp), Y = y.rounded(wp);
    MpComplex xi = one - X, eta = one - Y;
    if (xi.is_zero() || eta.is_zero() || X.is_zero() || Y.is_zero()) {
        throw ArgumentOutOfDomain("li5 identity needs x, y not in {0, 1}");
    }
    MpComplex alpha = -(X / xi), beta = -(Y / eta);
    auto L = [&](const MpComplex& z) {
        if (z.is_real() && z.re() > 1) {
            throw ArgumentOutOfDomain("li5 identity argument " + z.re().to_string(20) + " lies on the branch cut");
        }
        return mp::polylog_any(5, z, wp);
    };
    MpComplex lhs = L(X * alpha / (Y * beta)) + L(X * alpha * Y * eta) + L(X * alpha * beta / eta) +
                    L(X * xi * Y * beta) + L(X * xi / (Y * eta)) + L(X * xi * eta / beta) +
                    L(alpha * Y * beta / xi) + L(alpha / (xi * Y * eta)) + L(alpha * eta / (xi * beta));
    MpComplex nine = L(X * Y) + L(X * beta) + L(X * eta) + L(X / Y) + L(X / beta) + L(X / eta) + L(alpha * Y) +
                     L(alpha * beta) + L(alpha * eta) + L(alpha / Y) + L(alpha / beta) + L(alpha / eta) +
                     L(xi * Y) + L(xi * beta) + L(xi * eta) + L(Y / xi) + L(beta / xi) + L(eta / xi);
    MpComplex eighteen = L(X) + L(alpha) + L(xi) + L(Y) + L(beta) + L(eta) - MpComplex(mp::zeta(5, wp));
    lhs = lhs - nine * 9L + eighteen * 18L;

    MpComplex lx = log(X), ly = log(Y), lxi = log(xi), leta = log(eta);
    MpReal p = mp::pi(wp);
    MpReal p2 = p * p;
    MpComplex lxi2 = lxi * lxi;
    MpComplex rhs = pow(lxi, 5) * Rational(3, 10) + (ly - lx) * pow(lxi, 4) * Rational(3, 4) +
                    (ly * 3L - leta) * (leta * leta) * lxi2 * Rational(3, 2) +
                    (lxi - leta * 3L) * lxi2 * p2 * Rational(1, 2) + lxi * (p2 * p2) * Rational(1, 5);
    CheckReport rep;
    rep.name = "li5";
    rep.bits = P.value;
    rep.log2_residual = mp::log2_abs(mp::abs(lhs - rhs));
    rep.pass = rep.log2_residual < -static_cast<double>(P.value - 64);
    return rep;
}

MpReal monomial(int a, int b, const std::vector<std::pair<int, int>>& zetas, Bits P) {
    if (a < 0 || b < 0) throw DomainError("monomial exponents must be >= 0");
    Monomial m = Monomial::pi_pow(a, b);
    for (auto [k, e] : zetas) {
        if (e < 0 || k < 2) throw DomainError("monomial zeta factors need order >= 2, exponent >= 0");
        m.zeta[k] += e;
    }
    Evaluator ev(P + 16);
    return ev.monomial(m).rounded(P);
}

namespace {

nlohmann::json report_to_json(const CheckReport& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["bits"] = r.bits;
    if (std::isfinite(r.log2_residual)) {
        j["log2_residual"] = std::round(r.log2_residual * 1000) / 1000;
    } else {
        j["log2_residual"] = nullptr;
    }
    j["pass"] = r.pass;
    if (r.skipped) j["skipped"] = true;
    return j;
}

}  // namespace

std::string report_json(const CheckReport& r) { return report_to_json(r).dump(); }

std::string reports_json(const std::vector<CheckReport>& rs) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rs) arr.push_back(report_to_json(r));
    return arr.dump();
}

std::string catalog_json(const Catalog& cat) {
    nlohmann::json j;
    j["ladders"] = nlohmann::json::array();
    for (const auto& l : cat.ladders) j["ladders"].push_back({{"name", l.name}, {"paper_eq", l.paper_eq}});
    j["relations"] = nlohmann::json::array();
    for (const auto& r : cat.relations) {
        j["relations"].push_back({{"name", r.name},
                                  {"paper_eq", r.paper_eq},
                                  {"status", r.status == Provenance::proved ? "proved" : "numeric"},
                                  {"min_bits", r.min_bits},
                                  {"description", r.description}});
    }
    return j.dump();
}

}  // namespace polylad::ladders
