#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "polylad/ladders/exact.hpp"
#include "polylad/ladders/forms.hpp"

namespace polylad::ladders {

// coef * base^(n + offset) * Part Li_n(arg)
struct LadderPolyTerm {
    Rational coef;
    Rational base{1};
    int offset = 0;
    ExactComplex arg;
    Part part = Part::re;
};

// coef * factor * L_{n - shift}, with L_m = (-log2)^m / m! and L_m = 0 for m < 0.
struct LadderLogTerm {
    Rational coef;
    Monomial factor;
    int shift = 0;
};

// coef * (another ladder at the same order)
struct LadderSubTerm {
    Rational coef;
    std::string ladder;
};

struct LadderSpec {
    std::string name;
    std::string paper_eq;
    std::vector<LadderPolyTerm> terms;
    std::vector<LadderSubTerm> subs;
    std::vector<LadderLogTerm> logcorr;
};

struct Catalog {
    std::vector<LadderSpec> ladders;
    std::vector<RelationSpec> relations;

    const LadderSpec& ladder(const std::string& name) const;
    const RelationSpec& relation(const std::string& name) const;
};

// Ladders A..H, their bars and tildes, U..Z, and every relation the paper
// states for them.
const Catalog& default_catalog();

// L_m as a form: (-1)^m/m! log2^m.
LinearForm log_power(int m);

LinearForm ladder_form(const std::string& name, int n, const Catalog& cat = default_catalog());
LinearForm compile(const std::vector<Term>& component, const Catalog& cat = default_catalog());

// Numeric values of atoms at a fixed precision, with caching.
class Evaluator {
public:
    explicit Evaluator(Bits P) : P_(P) {}
    Bits precision() const { return P_; }

    MpReal value(const LinearForm& f);
    MpReal atom(const Atom& a);
    MpReal monomial(const Monomial& m);
    const MpComplex& polylog(const ExactComplex& z, int n);
    MpReal pi_value();
    MpReal log2_value();
    MpReal zeta_value(int n);
    MpReal beta_value(int n);

private:
    Bits P_;
    std::map<std::pair<ExactComplex, int>, MpComplex> polylogs_;
    std::map<int, MpReal> zetas_;
    std::map<int, MpReal> betas_;
    std::map<int, MpReal> pi_pows_;
    std::map<int, MpReal> log2_pows_;
};

// Guard bits that keep rounding below the residual threshold for a form
// whose coefficients reach this size.
long guard_bits_for(const LinearForm& f);

MpReal eval_ladder(const std::string& name, int n, Bits P, const Catalog& cat = default_catalog());

CheckReport check_relation(const std::string& name, Bits P, const Catalog& cat = default_catalog());
CheckReport check_relation(const RelationSpec& rel, Bits P, const Catalog& cat = default_catalog());

// The 34-term Li_5 identity with its closed right-hand side.
CheckReport check_li5_identity(const MpComplex& x, const MpComplex& y, Bits P);

std::vector<CheckReport> check_all(Bits P, const Catalog& cat = default_catalog());

MpReal monomial(int a, int b, const std::vector<std::pair<int, int>>& zetas, Bits P);

std::string report_json(const CheckReport& r);
std::string reports_json(const std::vector<CheckReport>& rs);
std::string catalog_json(const Catalog& cat = default_catalog());

}  // namespace polylad::ladders
