#pragma once

#include <optional>
#include <string>
#include <vector>

#include "polylad/ladders/forms.hpp"
#include "polylad/mp/complex.hpp"
#include "polylad/mp/real.hpp"

namespace polylad::hyper {

using ladders::CheckReport;
using mp::BigInt;
using mp::Bits;
using mp::MpComplex;
using mp::MpReal;
using mp::Rational;

// 3F2(a1, a2, 1; b1, b2; 1). Needs b1 + b2 - a1 - a2 > 1 unless the series
// terminates. Direct summation plus an asymptotic tail in Hurwitz zetas.
MpReal hyp3f2_unit(const MpReal& a1, const MpReal& a2, const MpReal& b1, const MpReal& b2, Bits P);

struct WArgs {
    MpReal a1, a2, a3, a4;
};

// W(a1,a2;a3,a4) = 3F2(1/2-a1, 1/2-a2, 1; 3/2+a3, 3/2+a4; 1) / ((1/2+a3)(1/2+a4)).
MpReal eval_W(const WArgs& a, Bits P);

// Gamma(1 + sum a)/prod Gamma(1/2 + a_k) * prod_{i<=2<j} B(1/2 + a_i, 1/2 + a_j).
MpReal reflection_rhs(const WArgs& a, Bits P);

CheckReport check_reflection(const WArgs& a, Bits P);
CheckReport check_symmetry(const WArgs& a, Bits P);

struct F5Args {
    Rational a1, a2, a3, a4;

    Rational sigma1() const { return a1 + a2 + a3 + a4; }
    Rational sigma2() const { return a1 * a1 + a2 * a2 + a3 * a3 + a4 * a4; }
    Rational delta1() const { return a1 + a2 - a3 - a4; }
    Rational delta2() const { return a1 * a2 - a3 * a4; }
};

Rational f5(const F5Args& a);

// F(a,b,c) = 1 - 3F2(-a, 1/2-b, 1; 1-a, 1-c; 1) and its W-form transform.
MpReal F_abc(const MpReal& a, const MpReal& b, const MpReal& c, Bits P);
MpReal F_abc_transformed(const MpReal& a, const MpReal& b, const MpReal& c, Bits P);

enum class GenFnId { A, B, C, D, E, F, G, H };

GenFnId parse_genfn(const std::string& name);
std::string to_string(GenFnId id);
bool has_hypergeometric(GenFnId id);

// sum A_n t^n for A, 2 sum X_n t^n otherwise, from the ladder poles.
MpComplex genfn_pf(GenFnId id, const MpComplex& t, Bits P);
MpReal genfn_pf(GenFnId id, const MpReal& t, Bits P);

// The 3F2 form for A, B, C, D, F, G with |t| < 1/2.
MpReal genfn_hyp(GenFnId id, const MpReal& t, Bits P);

CheckReport check_genfn(GenFnId id, const MpReal& t, Bits P);

// F(a,b,c) against the con- and alt- trig + W decompositions for A..D.
CheckReport check_trig_forms(GenFnId id, const MpReal& t, Bits P);

// The complex generators F(t), G(t), H(t) built from B+iF, D+iG, E+iH.
enum class ComplexGen { F, G, H };

ComplexGen parse_complex_gen(const std::string& name);
MpComplex complex_genfn(ComplexGen id, const MpComplex& t, Bits P);
CheckReport check_recurrence(ComplexGen id, const MpComplex& t, Bits P);

// E(t) with the trig pole part removed; finite for t > -2.
MpReal U(const MpReal& t, Bits P);
// U(t) - 5 pi t / (2^t sin(pi t/2)).
MpReal Utilde(const MpReal& t, Bits P);

// Exact values on the rational families. For a pole family `value` holds
// the remainder and `residue` the coefficient of 1/eps.
struct URational {
    Rational value;
    std::optional<Rational> residue;
    bool tilde = false;  // value refers to Utilde rather than U
    std::string family;
};

// t = 5n (n > 0), -5n (n odd), -10n (pole), 5n/2 (n odd, Utilde), -5n/2 (n odd, Utilde pole).
URational U_rational(const Rational& t);

// V(n) of the negative-axis family.
Rational V(long n);

// k_m in U(t) ~ 6 (1 + sum k_m (10t)^-m), 1 <= m <= 64.
BigInt asymp_coeff(int m);
std::vector<BigInt> asymp_coeffs(int m_max);
std::string asymp_json(const std::vector<BigInt>& ks);

enum class Pochhammer { poca, pocb, pocc, pocd, poc4, poc6 };

Pochhammer parse_pochhammer(const std::string& name);
std::string to_string(Pochhammer p);
CheckReport pochhammer_check(Pochhammer which, const MpReal& t, Bits P);

// Taylor coefficients of U through t^5 against the closed expansion.
CheckReport expu_check(Bits P);

// The two geometric-sum identities (exact) and the trig residue facts.
CheckReport geo_checks(Bits P = Bits{256});

// Catalan's constant from the central-binomial harmonic double sum.
MpReal catalan_binomial(Bits P);

}  // namespace polylad::hyper
