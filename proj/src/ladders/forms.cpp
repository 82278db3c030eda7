#include "polylad/ladders/forms.hpp"

#include <sstream>

#include "polylad/errors.hpp"

namespace polylad::ladders {

std::string to_string(Part p) { return p == Part::re ? "Re" : "Im"; }

int Monomial::weight() const {
    int w = pi + log2;
    for (auto [k, e] : zeta) w += k * e;
    for (auto [k, e] : beta) w += k * e;
    return w;
}

std::string Monomial::to_string() const {
    std::vector<std::string> parts;
    auto power = [](const std::string& base, int e) { return e == 1 ? base : base + "^" + std::to_string(e); };
    if (pi) parts.push_back(power("pi", pi));
    if (log2) parts.push_back(power("log2", log2));
    for (auto [k, e] : zeta) parts.push_back(power("zeta(" + std::to_string(k) + ")", e));
    for (auto [k, e] : beta) parts.push_back(k == 2 ? power("G", e) : power("beta(" + std::to_string(k) + ")", e));
    if (parts.empty()) return "1";
    std::string out = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) out += "*" + parts[i];
    return out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    r.pi += b.pi;
    r.log2 += b.log2;
    for (auto [k, e] : b.zeta) r.zeta[k] += e;
    for (auto [k, e] : b.beta) r.beta[k] += e;
    return r;
}

std::string PolyAtom::to_string() const {
    return ladders::to_string(part) + " Li" + std::to_string(n) + "(" + arg.to_string() + ")";
}

std::string to_string(const Atom& a) {
    if (const auto* p = std::get_if<PolyAtom>(&a)) return p->to_string();
    return std::get<Monomial>(a).to_string();
}

LinearForm& LinearForm::add(const Atom& atom, const Rational& coef) {
    if (coef.is_zero()) return *this;
    if (const auto* p = std::get_if<PolyAtom>(&atom)) {
        if (p->arg == arg::i() || p->arg == arg::neg_i()) return add_polylog(p->arg, p->n, p->part, coef);
    }
    auto [it, fresh] = terms_.try_emplace(atom, coef);
    if (!fresh) {
        it->second += coef;
        if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
}

LinearForm& LinearForm::add_polylog(const ExactComplex& z, int n, Part part, const Rational& coef) {
    if (n < 1) throw DomainError("polylog order must be >= 1");
    const bool plus_i = z == arg::i();
    if (plus_i || z == arg::neg_i()) {
        if (part == Part::re) {
            // Re Li_n(+-i) = sum_k (-1)^k/(2k)^n = -2^-n (1 - 2^(1-n)) zeta(n); -log2/2 at n = 1.
            if (n == 1) return add(Monomial::pi_pow(0, 1), coef * Rational(-1, 2));
            Rational c = -(Rational(1) - pow(Rational(2), 1 - n)) * pow(Rational(2), -n);
            return add(Monomial::zeta_of(n), coef * c);
        }
        // Im Li_n(+-i) = +-beta(n), beta(1) = pi/4.
        Rational s = plus_i ? Rational(1) : Rational(-1);
        if (n == 1) return add(Monomial::pi_pow(1), coef * s * Rational(1, 4));
        return add(Monomial::beta_of(n), coef * s);
    }
    return add(Atom(PolyAtom{z, n, part}), coef);
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
    for (const auto& [a, c] : o.terms_) add(a, c);
    return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& o) {
    for (const auto& [a, c] : o.terms_) add(a, -c);
    return *this;
}

LinearForm& LinearForm::operator*=(const Rational& q) {
    if (q.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [a, c] : terms_) c *= q;
    return *this;
}

bool LinearForm::monomials_only() const {
    for (const auto& [a, c] : terms_) {
        if (!std::holds_alternative<Monomial>(a)) return false;
    }
    return true;
}

std::string LinearForm::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, c] : terms_) {
        if (!first) os << (c.sign() < 0 ? " - " : " + ");
        else if (c.sign() < 0) os << "-";
        first = false;
        os << abs(c).to_string() << "*" << ladders::to_string(a);
    }
    return os.str();
}

LinearForm operator*(const LinearForm& a, const LinearForm& b) {
    if (!a.monomials_only() || !b.monomials_only()) {
        throw DomainError("product of forms is defined for monomials only");
    }
    LinearForm r;
    for (const auto& [x, cx] : a.terms()) {
        for (const auto& [y, cy] : b.terms()) {
            r.add(std::get<Monomial>(x) * std::get<Monomial>(y), cx * cy);
        }
    }
    return r;
}

LinearForm monomial_form(const Monomial& m, const Rational& coef) {
    LinearForm f;
    f.add_monomial(m, coef);
    return f;
}

ComplexForm ComplexForm::li(const ExactComplex& z, int n) {
    ComplexForm f;
    f.re.add_polylog(z, n, Part::re, Rational(1));
    f.im.add_polylog(z, n, Part::im, Rational(1));
    return f;
}

ComplexForm& ComplexForm::operator+=(const ComplexForm& o) {
    re += o.re;
    im += o.im;
    return *this;
}

ComplexForm& ComplexForm::operator-=(const ComplexForm& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

ComplexForm operator*(const ComplexForm& a, const ComplexForm& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

}  // namespace polylad::ladders
