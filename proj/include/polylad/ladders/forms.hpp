#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "polylad/ladders/exact.hpp"

namespace polylad::ladders {

enum class Part { re, im };

std::string to_string(Part p);

// pi^pi * log(2)^log2 * prod zeta(k)^e * prod beta(k)^e.
// beta(2) is Catalan's G; beta(1) and even zeta values reduce to powers of pi.
struct Monomial {
    int pi = 0;
    int log2 = 0;
    std::map<int, int> zeta;
    std::map<int, int> beta;

    static Monomial constant() { return {}; }
    static Monomial pi_pow(int a, int b = 0) { return Monomial{a, b, {}, {}}; }
    static Monomial zeta_of(int k) { return Monomial{0, 0, {{k, 1}}, {}}; }
    static Monomial beta_of(int k) { return Monomial{0, 0, {}, {{k, 1}}}; }

    bool is_constant() const { return pi == 0 && log2 == 0 && zeta.empty() && beta.empty(); }
    int weight() const;
    std::string to_string() const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Re or Im of Li_n(arg).
struct PolyAtom {
    ExactComplex arg;
    int n = 1;
    Part part = Part::re;

    std::string to_string() const;
    friend auto operator<=>(const PolyAtom&, const PolyAtom&) = default;
    friend bool operator==(const PolyAtom&, const PolyAtom&) = default;
};

using Atom = std::variant<PolyAtom, Monomial>;

std::string to_string(const Atom& a);

// Finite rational combination of atoms. Li_n at +-i is expanded on insertion
// into zeta/beta monomials, so such atoms never appear.
class LinearForm {
public:
    LinearForm() = default;

    LinearForm& add(const Atom& atom, const Rational& coef);
    LinearForm& add_polylog(const ExactComplex& z, int n, Part part, const Rational& coef);
    LinearForm& add_monomial(const Monomial& m, const Rational& coef) { return add(Atom(m), coef); }

    LinearForm& operator+=(const LinearForm& o);
    LinearForm& operator-=(const LinearForm& o);
    LinearForm& operator*=(const Rational& q);

    const std::map<Atom, Rational>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    bool monomials_only() const;
    std::string to_string() const;

    friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
    friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
    friend LinearForm operator*(LinearForm a, const Rational& q) { return a *= q; }
    friend LinearForm operator*(const Rational& q, LinearForm a) { return a *= q; }
    // Product of two monomial-only forms.
    friend LinearForm operator*(const LinearForm& a, const LinearForm& b);

private:
    std::map<Atom, Rational> terms_;
};

LinearForm monomial_form(const Monomial& m, const Rational& coef = Rational(1));

// Complex combination used to write the dilogarithm relations.
struct ComplexForm {
    LinearForm re;
    LinearForm im;

    static ComplexForm li(const ExactComplex& z, int n);
    static ComplexForm real(LinearForm f) { return {std::move(f), {}}; }
    static ComplexForm imag(LinearForm f) { return {{}, std::move(f)}; }

    ComplexForm& operator+=(const ComplexForm& o);
    ComplexForm& operator-=(const ComplexForm& o);
    friend ComplexForm operator+(ComplexForm a, const ComplexForm& b) { return a += b; }
    friend ComplexForm operator-(ComplexForm a, const ComplexForm& b) { return a -= b; }
    friend ComplexForm operator*(const Rational& q, const ComplexForm& a) { return {q * a.re, q * a.im}; }
    // Product of monomial-only complex forms.
    friend ComplexForm operator*(const ComplexForm& a, const ComplexForm& b);
};

// A reference to ladder `ladder` at order n.
struct LadderRef {
    std::string ladder;
    int n = 1;
};

// One summand of a relation component: coef * (ladder value | monomial | polylog part).
struct Term {
    Rational coef;
    std::variant<LadderRef, Monomial, PolyAtom, LinearForm> what;
};

enum class Provenance { proved, numeric };

// A relation is a list of real components each expected to vanish; a
// chain of equalities a = b = c contributes one component per link.
struct RelationSpec {
    std::string name;
    std::string paper_eq;
    std::string description;
    Provenance status = Provenance::proved;
    long min_bits = 256;
    std::vector<std::vector<Term>> components;
};

struct CheckReport {
    std::string name;
    long bits = 0;
    double log2_residual = 0;  // -inf for an exact zero
    bool pass = false;
    bool skipped = false;
    std::string detail;
};

}  // namespace polylad::ladders
