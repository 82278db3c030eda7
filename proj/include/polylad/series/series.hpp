#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "polylad/ladders/forms.hpp"
#include "polylad/mp/real.hpp"

namespace polylad::series {

using ladders::ExactComplex;
using ladders::Monomial;
using ladders::Part;
using ladders::RelationSpec;
using mp::BigInt;
using mp::Bits;
using mp::MpReal;
using mp::Rational;

// Period-8 integer sequence; a_k = a[(k-1) mod 8].
struct PeriodicPattern {
    std::array<BigInt, 8> a;

    const BigInt& at(long k) const { return a[static_cast<size_t>((k - 1) % 8)]; }
    bool is_zero() const;
    BigInt max_abs() const;
    std::string to_string() const;
    friend bool operator==(const PeriodicPattern&, const PeriodicPattern&) = default;
};

PeriodicPattern make_pattern(std::initializer_list<long> v);

// S_{n,p}(a) = sum_{k>=1} a_k / (2^floor((pk+p)/2) k^n).
struct SeriesSpec {
    int n = 1;
    int p = 1;
    PeriodicPattern pattern;

    std::string to_string() const;
    friend bool operator==(const SeriesSpec&, const SeriesSpec&) = default;
};

struct FormulaTerm {
    Rational coef;
    SeriesSpec spec;
    friend bool operator==(const FormulaTerm&, const FormulaTerm&) = default;
};

// constant = scale * sum coef * S(spec)
struct Formula {
    std::string name;
    Rational scale{1};
    std::vector<FormulaTerm> terms;
    std::string description;
    std::string paper_eq;

    std::string to_string() const;
};

MpReal eval_series(const SeriesSpec& spec, Bits P);

const std::vector<Formula>& catalog();
const Formula& find_formula(const std::string& name);
MpReal eval_formula(const std::string& name, Bits P);
MpReal eval_formula(const Formula& f, Bits P);

// Exact S-basis expansion of Re/Im Li_n(arg) for a catalog argument other
// than +-i. The pattern is primitive with its first nonzero entry positive
// and p is odd; an empty list means the part vanishes identically.
std::vector<std::pair<Rational, SeriesSpec>> polylog_pattern(const ExactComplex& arg, int n, Part part);

// Rewrites a monomial with even zeta and odd beta values as powers of pi.
std::pair<Rational, Monomial> canonical_monomial(const Monomial& m);

struct Target {
    std::string name;
    Monomial monomial;
};

// Exact rational elimination over the S-basis. Unknown monomials that are
// not targets are eliminated first.
std::vector<Formula> solve_formulas(const std::vector<RelationSpec>& relations, const std::vector<Target>& targets);

// Formulas the solver derives from the catalog's polylogarithm relation systems: the pi/log2
// products and solver reproductions of the printed formulas.
std::vector<Formula> derived_formulas();

std::string to_json(const std::vector<Formula>& formulas);
std::vector<Formula> formulas_from_json(const std::string& text);

}  // namespace polylad::series
