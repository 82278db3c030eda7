#include "polylad/series/series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include <json.hpp>

#include "polylad/errors.hpp"
#include "polylad/ladders/ladders.hpp"
#include "polylad/mp/functions.hpp"

namespace polylad::series {

using ladders::LinearForm;
using ladders::QuadExt;

bool PeriodicPattern::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](const BigInt& x) { return x == 0; });
}

BigInt PeriodicPattern::max_abs() const {
    BigInt m = 0;
    for (const auto& x : a) m = std::max<BigInt>(m, abs(x));
    return m;
}

std::string PeriodicPattern::to_string() const {
    std::string s = "(";
    for (size_t i = 0; i < 8; ++i) {
        if (i) s += ",";
        s += a[i].get_str();
    }
    return s + ")";
}

PeriodicPattern make_pattern(std::initializer_list<long> v) {
    if (v.size() != 8) throw DomainError("a period-8 pattern needs 8 entries");
    PeriodicPattern p;
    size_t i = 0;
    for (long x : v) p.a[i++] = x;
    return p;
}

std::string SeriesSpec::to_string() const {
    return "S_{" + std::to_string(n) + "," + std::to_string(p) + "}" + pattern.to_string();
}

std::string Formula::to_string() const {
    std::ostringstream os;
    os << name << " = ";
    if (scale != Rational(1)) os << scale.to_string() << " * ";
    os << "[";
    for (size_t i = 0; i < terms.size(); ++i) {
        const Rational& c = terms[i].coef;
        if (i) os << (c.sign() < 0 ? " - " : " + ");
        else if (c.sign() < 0) os << "-";
        Rational m = abs(c);
        if (m != Rational(1)) os << m.to_string() << " ";
        os << terms[i].spec.to_string();
    }
    os << "]";
    return os.str();
}

MpReal eval_series(const SeriesSpec& spec, Bits P) {
    if (spec.n < 1 || spec.p < 1) throw DomainError("series needs n >= 1 and p >= 1");
    if (spec.pattern.is_zero()) return MpReal(P);
    // |term k| <= max|a| 2^-(pk/2); stop once below 2^-(P+8).
    const long amax = static_cast<long>(mpz_sizeinbase(spec.pattern.max_abs().get_mpz_t(), 2));
    const long kmax = 2 * (P.value + 8 + amax) / spec.p + 2;
    const Bits wp = P + 16 + static_cast<long>(std::log2(static_cast<double>(kmax)) + 1);
    MpReal sum(wp), term(wp);
    BigInt kn;
    for (long k = 1; k <= kmax; ++k) {
        const BigInt& ak = spec.pattern.at(k);
        if (ak == 0) continue;
        mpz_ui_pow_ui(kn.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(spec.n));
        mpfr_set_z(term.get(), ak.get_mpz_t(), MPFR_RNDN);
        mpfr_div_z(term.get(), term.get(), kn.get_mpz_t(), MPFR_RNDN);
        mpfr_mul_2si(term.get(), term.get(), -((spec.p * k + spec.p) / 2), MPFR_RNDN);
        mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    }
    return sum.rounded(P);
}

namespace {

FormulaTerm ft(Rational c, int n, int p, std::initializer_list<long> a) {
    return {std::move(c), SeriesSpec{n, p, make_pattern(a)}};
}

std::vector<Formula> build_catalog() {
    std::vector<Formula> v;
    v.push_back({"pi", 1, {ft(8, 1, 1, {1, 0, 0, -1, -1, -1, 0, 0})}, "pi", "pi"});
    v.push_back({"pi_bellard",
                 1,
                 {ft(16, 1, 1, {0, 1, 0, 0, 0, -1, 0, 0}), ft(-16, 1, 5, {1, 1, 1, 0, -1, -1, -1, 0})},
                 "pi, Bellard-type form",
                 "FB"});
    v.push_back({"pi2", 1, {ft(32, 2, 1, {1, -1, -1, -2, -1, -1, 1, 0})}, "pi^2", "pi2"});
    v.push_back({"log2sq", 1, {ft(Rational(8, 3), 2, 1, {2, -5, -2, -7, -2, -5, 2, -3})}, "log^2 2", "l2"});
    v.push_back({"catalan",
                 1,
                 {ft(3, 2, 1, {1, -1, 1, 0, -1, 1, -1, 0}), ft(-2, 2, 3, {1, 1, 1, 0, -1, -1, -1, 0})},
                 "Catalan's constant G",
                 "G"});
    v.push_back({"log2cu",
                 1,
                 {ft(192, 3, 1, {0, 1, 0, 4, 0, 1, 0, 16}), ft(-32, 3, 3, {4, -3, -4, -1, -4, -3, 4, 7})},
                 "log^3 2",
                 "l3"});
    v.push_back({"zeta3",
                 Rational(8, 7),
                 {ft(6, 3, 1, {1, -7, -1, 10, -1, -7, 1, 0}), ft(4, 3, 3, {1, 1, -1, -2, -1, 1, 1, 0})},
                 "zeta(3)",
                 "z3"});
    v.push_back({"beta3",
                 1,
                 {ft(5, 3, 1, {1, -6, 1, 0, -1, 6, -1, 0}), ft(Rational(5, 3), 3, 3, {1, 1, 1, 0, -1, -1, -1, 0}),
                  ft(2, 3, 5, {1, 1, 1, 0, -1, -1, -1, 0})},
                 "beta(3) = pi^3/32",
                 "b3"});
    v.push_back({"log2_4",
                 Rational(256, 615),
                 {ft(3, 4, 1, {73, -2617, -73, -5066, -73, -2617, 73, -27564}),
                  ft(1, 4, 3, {1258, -761, -1258, -497, -1258, -761, 1258, 2019})},
                 "log^4 2",
                 "l4"});
    v.push_back({"pi4",
                 Rational(9216, 41),
                 {ft(3, 4, 1, {1, -19, -1, -2, -1, -19, 1, -108}), ft(2, 4, 3, {3, -1, -3, -2, -3, -1, 3, 4})},
                 "pi^4",
                 "z4"});
    v.push_back({"log2_5",
                 Rational(256, 2021),
                 {ft(1, 5, 1, {2783, -261592, -2783, -1500376, -2783, -261592, 2783, 26717696}),
                  ft(1, 5, 3, {29537, 79446, -29537, -108983, -29537, 79446, 29537, -49909}),
                  ft(-26398, 5, 5, {1, 0, -1, -1, -1, 0, 1, 1})},
                 "log^5 2",
                 "l5"});
    v.push_back({"zeta5",
                 Rational(2048, 62651),
                 {ft(9, 5, 1, {31, -1614, -31, -6212, -31, -1614, 31, 74552}),
                  ft(7, 5, 3, {173, 284, -173, -457, -173, 284, 173, -111}),
                  ft(-738, 5, 5, {1, 0, -1, -1, -1, 0, 1, 1})},
                 "zeta(5)",
                 "z5"});
    return v;
}

const std::vector<Formula>& derived_cache() {
    static const std::vector<Formula> d = derived_formulas();
    return d;
}

}  // namespace

const std::vector<Formula>& catalog() {
    static const std::vector<Formula> c = build_catalog();
    return c;
}

const Formula& find_formula(const std::string& name) {
    for (const auto& f : catalog()) {
        if (f.name == name) return f;
    }
    for (const auto& f : derived_cache()) {
        if (f.name == name) return f;
    }
    throw UnknownFormula("unknown formula '" + name + "'");
}

MpReal eval_formula(const Formula& f, Bits P) {
    long extra = 16;
    for (const auto& t : f.terms) {
        extra = std::max<long>(extra, 16 + static_cast<long>(mpz_sizeinbase(t.coef.num().get_mpz_t(), 2)));
    }
    const Bits wp = P + extra;
    MpReal sum(wp);
    for (const auto& t : f.terms) sum += eval_series(t.spec, wp) * t.coef;
    return (sum * f.scale).rounded(P);
}

MpReal eval_formula(const std::string& name, Bits P) { return eval_formula(find_formula(name), P); }

// ---- polylogarithm values as S-series ----

namespace {

// gcd of numerators over lcm of denominators, positive.
Rational content(const std::vector<Rational>& xs) {
    BigInt g = 0, l = 1;
    for (const auto& x : xs) {
        if (x.is_zero()) continue;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.num().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.den().get_mpz_t());
    }
    if (g == 0) return Rational(0);
    return Rational(g, l);
}

// Splits a rational 8-vector into coef * primitive integer pattern whose first
// nonzero entry is positive.
std::pair<Rational, PeriodicPattern> normalize(const std::array<Rational, 8>& raw) {
    std::vector<Rational> xs(raw.begin(), raw.end());
    Rational c = content(xs);
    PeriodicPattern pat;
    if (c.is_zero()) return {c, pat};
    for (const auto& x : raw) {
        if (!x.is_zero()) {
            if (x.sign() < 0) c = -c;
            break;
        }
    }
    for (size_t i = 0; i < 8; ++i) {
        Rational q = raw[i] / c;
        pat.a[i] = q.num();
    }
    return {c, pat};
}

int v2(long c) {
    int e = 0;
    while (c % 2 == 0) {
        c /= 2;
        ++e;
    }
    return e;
}

}  // namespace

std::vector<std::pair<Rational, SeriesSpec>> polylog_pattern(const ExactComplex& z, int n, Part part) {
    if (n < 1) throw DomainError("polylog order must be >= 1");
    if (!ladders::catalog_name(z) && !ladders::catalog_name(z.conj())) {
        throw UnsupportedArgument("argument " + z.to_string() + " is not one of the special arguments");
    }
    QuadExt nrm = z.norm();
    if (!nrm.is_rational() || nrm.a >= Rational(1)) {
        throw UnsupportedArgument("argument " + z.to_string() + " is not inside the unit disc");
    }
    // |z|^2 = 2^-c
    const BigInt& num = nrm.a.num();
    const BigInt& den = nrm.a.den();
    if (num != 1 || mpz_popcount(den.get_mpz_t()) != 1) {
        throw UnsupportedArgument("|" + z.to_string() + "|^2 is not a power of 1/2");
    }
    const long c = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
    const long s = 1L << v2(c);
    const int p = static_cast<int>(c / s);

    // raw_m = Part(z^k) 2^floor((pm+p)/2) at m = s k, else 0; checked over three periods.
    std::array<Rational, 24> raw;
    ExactComplex zk(QuadExt(Rational(1)));
    for (long m = 1; m <= 24; ++m) {
        if (m % s != 0) continue;
        zk = zk * z;
        const QuadExt& v = part == Part::re ? zk.re : zk.im;
        if (!v.is_rational()) {
            throw UnsupportedArgument((part == Part::re ? "Re" : "Im") + std::string(" Li_n(") + z.to_string() +
                                      ") involves sqrt(2)");
        }
        raw[static_cast<size_t>(m - 1)] = v.a * pow(Rational(2), (p * m + p) / 2);
        (void)0;
    }
    for (size_t i = 8; i < 24; ++i) {
        if (raw[i] != raw[i - 8]) {
            throw UnsupportedArgument("Li_n(" + z.to_string() + ") has no period-8 S-pattern");
        }
    }
    std::array<Rational, 8> first;
    std::copy_n(raw.begin(), 8, first.begin());
    auto [coef, pat] = normalize(first);
    if (coef.is_zero()) return {};
    return {{coef * pow(Rational(s), n), SeriesSpec{n, p, pat}}};
}

// ---- exact elimination ----

std::pair<Rational, Monomial> canonical_monomial(const Monomial& m) {
    static const long euler[] = {1, -1, 5, -61, 1385, -50521, 2702765, -199360981};
    Rational c(1);
    Monomial out = m;
    out.zeta.clear();
    out.beta.clear();
    for (auto [k, e] : m.zeta) {
        if (k % 2 == 0 && k >= 2) {
            // zeta(2j) = (-1)^(j+1) B_2j (2 pi)^2j / (2 (2j)!)
            BigInt fact;
            mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k));
            Rational z = mp::bernoulli(k) * pow(Rational(2), k) / (Rational(2) * Rational(fact));
            if ((k / 2) % 2 == 0) z = -z;
            c *= pow(z, e);
            out.pi += k * e;
        } else {
            out.zeta[k] += e;
        }
    }
    for (auto [k, e] : m.beta) {
        const int j = (k - 1) / 2;
        if (k % 2 == 1 && j < 8) {
            // beta(2j+1) = (-1)^j E_2j pi^(2j+1) / (4^(j+1) (2j)!)
            BigInt fact;
            mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(2 * j));
            Rational b = Rational(euler[j]) / (pow(Rational(4), j + 1) * Rational(fact));
            if (j % 2 == 1) b = -b;
            c *= pow(b, e);
            out.pi += k * e;
        } else {
            out.beta[k] += e;
        }
    }
    return {c, out};
}

namespace {

struct BasisKey {
    int n, p, r;
    auto operator<=>(const BasisKey&) const = default;
};

}  // namespace

std::vector<Formula> solve_formulas(const std::vector<RelationSpec>& relations, const std::vector<Target>& targets) {
    using Row = std::pair<std::map<Monomial, Rational>, std::map<BasisKey, Rational>>;
    std::vector<Row> rows;
    for (const auto& rel : relations) {
        for (const auto& comp : rel.components) {
            LinearForm f = ladders::compile(comp);
            Row row;
            for (const auto& [atom, coef] : f.terms()) {
                if (const auto* pa = std::get_if<ladders::PolyAtom>(&atom)) {
                    for (const auto& [c, spec] : polylog_pattern(pa->arg, pa->n, pa->part)) {
                        for (int r = 0; r < 8; ++r) {
                            if (spec.pattern.a[static_cast<size_t>(r)] == 0) continue;
                            row.second[{spec.n, spec.p, r}] +=
                                coef * c * Rational(spec.pattern.a[static_cast<size_t>(r)]);
                        }
                    }
                } else {
                    auto [c, m] = canonical_monomial(std::get<Monomial>(atom));
                    row.first[m] += coef * c;
                }
            }
            rows.push_back(std::move(row));
        }
    }

    // Unknown columns: nuisance monomials first, then targets.
    std::vector<std::pair<Rational, Monomial>> tcanon;
    std::set<Monomial> target_cols;
    for (const auto& t : targets) {
        tcanon.push_back(canonical_monomial(t.monomial));
        target_cols.insert(tcanon.back().second);
    }
    std::vector<Monomial> cols;
    std::set<Monomial> seen;
    for (const auto& row : rows) {
        for (const auto& [m, c] : row.first) {
            if (!c.is_zero() && !m.is_constant() && !target_cols.count(m) && seen.insert(m).second) cols.push_back(m);
        }
    }
    for (const auto& m : target_cols) cols.push_back(m);
    for (const auto& row : rows) {
        for (const auto& [m, c] : row.first) {
            if (m.is_constant() && !c.is_zero()) throw RankDeficient("relation has a rational constant term");
        }
    }

    // Dense matrix: unknown part, then the series part kept as sparse maps.
    const size_t nc = cols.size();
    std::vector<std::vector<Rational>> A(rows.size(), std::vector<Rational>(nc));
    std::vector<std::map<BasisKey, Rational>> S(rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        for (size_t j = 0; j < nc; ++j) {
            auto it = rows[i].first.find(cols[j]);
            if (it != rows[i].first.end()) A[i][j] = it->second;
        }
        S[i] = rows[i].second;
    }
    auto axpy = [&](size_t dst, size_t src, Rational f) {
        for (size_t j = 0; j < nc; ++j) {
            if (!A[src][j].is_zero()) A[dst][j] -= f * A[src][j];
        }
        for (const auto& [k, v] : S[src]) {
            Rational& x = S[dst][k];
            x -= f * v;
        }
    };
    std::vector<long> pivot_row(nc, -1);
    size_t r = 0;
    for (size_t j = 0; j < nc && r < A.size(); ++j) {
        size_t piv = r;
        while (piv < A.size() && A[piv][j].is_zero()) ++piv;
        if (piv == A.size()) continue;
        std::swap(A[piv], A[r]);
        std::swap(S[piv], S[r]);
        Rational inv = Rational(1) / A[r][j];
        for (auto& x : A[r]) x *= inv;
        for (auto& [k, v] : S[r]) v *= inv;
        for (size_t i = 0; i < A.size(); ++i) {
            if (i != r && !A[i][j].is_zero()) axpy(i, r, A[i][j]);
        }
        pivot_row[j] = static_cast<long>(r);
        ++r;
    }

    std::vector<Formula> out;
    for (size_t t = 0; t < targets.size(); ++t) {
        const Monomial& m = tcanon[t].second;
        const size_t j = static_cast<size_t>(std::find(cols.begin(), cols.end(), m) - cols.begin());
        if (pivot_row[j] < 0) throw RankDeficient("target " + targets[t].name + " is not determined");
        const size_t row = static_cast<size_t>(pivot_row[j]);
        for (size_t k = 0; k < nc; ++k) {
            if (k != j && !A[row][k].is_zero()) {
                throw RankDeficient("target " + targets[t].name + " is tied to " + cols[k].to_string());
            }
        }
        // value(target) = c * m = -c * S_row
        std::map<std::pair<int, int>, std::array<Rational, 8>> groups;
        for (const auto& [k, v] : S[row]) {
            if (!v.is_zero()) groups[{k.n, k.p}][static_cast<size_t>(k.r)] = -tcanon[t].first * v;
        }
        Formula f;
        f.name = targets[t].name;
        f.description = "solved: " + targets[t].monomial.to_string();
        std::vector<Rational> coefs;
        for (const auto& [np, raw] : groups) {
            auto [c, pat] = normalize(raw);
            if (c.is_zero()) continue;
            f.terms.push_back({c, SeriesSpec{np.first, np.second, pat}});
            coefs.push_back(c);
        }
        f.scale = coefs.empty() ? Rational(1) : content(coefs);
        for (auto& term : f.terms) term.coef /= f.scale;
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<Formula> derived_formulas() {
    const auto& cat = ladders::default_catalog();
    auto R = [&](std::initializer_list<const char*> names) {
        std::vector<RelationSpec> v;
        for (const char* n : names) v.push_back(cat.relation(n));
        return v;
    };
    auto pl = [](int a, int b) { return Monomial::pi_pow(a, b); };
    std::vector<Formula> out;
    auto add = [&](const std::vector<RelationSpec>& rels, const std::vector<Target>& ts, const std::string& eq) {
        for (auto& f : solve_formulas(rels, ts)) {
            f.paper_eq = eq;
            out.push_back(std::move(f));
        }
    };
    add(R({"w21", "w23"}),
        {{"pi_log2", pl(1, 1)}, {"catalan_solved", Monomial::beta_of(2)}, {"pi2_solved", pl(2, 0)},
         {"log2sq_solved", pl(0, 2)}},
        "G");
    add(R({"i3"}), {{"pi3", pl(3, 0)}, {"beta3_solved", Monomial::beta_of(3)}, {"pi_log2sq", pl(1, 2)}}, "b3");
    add(R({"r3"}), {{"pi2_log2", pl(2, 1)}, {"zeta3_solved", Monomial::zeta_of(3)}, {"log2cu_solved", pl(0, 3)}},
        "z3");
    add(R({"r4b", "r4c", "r4d"}),
        {{"pi2_log2sq", pl(2, 2)}, {"pi4_solved", pl(4, 0)}, {"log2_4_solved", pl(0, 4)}}, "z4");
    add(R({"r5c", "r51", "r52", "qef"}),
        {{"pi2_log2cu", pl(2, 3)}, {"pi4_log2", pl(4, 1)}, {"zeta5_solved", Monomial::zeta_of(5)},
         {"log2_5_solved", pl(0, 5)}},
        "z5");
    return out;
}

// ---- JSON ----

namespace {

nlohmann::json bigint_json(const BigInt& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

BigInt bigint_from(const nlohmann::json& j) {
    if (j.is_string()) return BigInt(j.get<std::string>());
    return BigInt(std::to_string(j.get<long long>()));
}

nlohmann::json rational_json(const Rational& q) {
    return nlohmann::json::array({bigint_json(q.num()), bigint_json(q.den())});
}

Rational rational_from(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw DomainError("rational must be [num, den]");
    return Rational(bigint_from(j[0]), bigint_from(j[1]));
}

}  // namespace

std::string to_json(const std::vector<Formula>& formulas) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : formulas) {
        nlohmann::json jf;
        jf["name"] = f.name;
        jf["scale"] = rational_json(f.scale);
        jf["description"] = f.description;
        jf["paper_eq"] = f.paper_eq;
        jf["terms"] = nlohmann::json::array();
        for (const auto& t : f.terms) {
            nlohmann::json pat = nlohmann::json::array();
            for (const auto& x : t.spec.pattern.a) pat.push_back(bigint_json(x));
            jf["terms"].push_back({{"coef", rational_json(t.coef)}, {"n", t.spec.n}, {"p", t.spec.p}, {"pattern", pat}});
        }
        arr.push_back(jf);
    }
    return arr.dump(1);
}

std::vector<Formula> formulas_from_json(const std::string& text) {
    std::vector<Formula> out;
    nlohmann::json arr = nlohmann::json::parse(text);
    for (const auto& jf : arr) {
        Formula f;
        f.name = jf.at("name").get<std::string>();
        f.scale = rational_from(jf.at("scale"));
        f.description = jf.value("description", "");
        f.paper_eq = jf.value("paper_eq", "");
        for (const auto& jt : jf.at("terms")) {
            FormulaTerm t;
            t.coef = rational_from(jt.at("coef"));
            t.spec.n = jt.at("n").get<int>();
            t.spec.p = jt.at("p").get<int>();
            const auto& pat = jt.at("pattern");
            if (pat.size() != 8) throw DomainError("pattern must have 8 entries");
            for (size_t i = 0; i < 8; ++i) t.spec.pattern.a[i] = bigint_from(pat[i]);
            f.terms.push_back(std::move(t));
        }
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace polylad::series
