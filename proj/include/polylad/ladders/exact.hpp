#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "polylad/mp/complex.hpp"

namespace polylad::ladders {

using mp::BigInt;
using mp::Bits;
using mp::MpComplex;
using mp::MpReal;
using mp::Rational;

// a + b*sqrt(2) with rational a, b.
struct QuadExt {
    Rational a;
    Rational b;

    QuadExt() = default;
    QuadExt(Rational a_, Rational b_ = Rational(0)) : a(std::move(a_)), b(std::move(b_)) {}  // NOLINT

    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    bool is_rational() const { return b.is_zero(); }
    QuadExt operator-() const { return {-a, -b}; }
    QuadExt conjugate() const { return {a, -b}; }  // sqrt2 -> -sqrt2
    MpReal value(Bits P) const;
    std::string to_string() const;

    friend QuadExt operator+(const QuadExt& x, const QuadExt& y) { return {x.a + y.a, x.b + y.b}; }
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y) { return {x.a - y.a, x.b - y.b}; }
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y) {
        return {x.a * y.a + Rational(2) * x.b * y.b, x.a * y.b + x.b * y.a};
    }
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y);
    friend bool operator==(const QuadExt&, const QuadExt&) = default;
    friend std::strong_ordering operator<=>(const QuadExt&, const QuadExt&) = default;
};

// Exact complex number with components in Q(sqrt2).
struct ExactComplex {
    QuadExt re;
    QuadExt im;

    ExactComplex() = default;
    ExactComplex(QuadExt r, QuadExt i = QuadExt()) : re(std::move(r)), im(std::move(i)) {}  // NOLINT

    static ExactComplex parse(const std::string& text);  // one of the catalog names

    ExactComplex conj() const { return {re, -im}; }
    QuadExt norm() const { return re * re + im * im; }  // |z|^2
    bool is_real() const { return im.is_zero(); }
    MpComplex value(Bits P) const;
    std::string to_string() const;

    friend ExactComplex operator+(const ExactComplex& x, const ExactComplex& y) {
        return {x.re + y.re, x.im + y.im};
    }
    friend ExactComplex operator-(const ExactComplex& x, const ExactComplex& y) {
        return {x.re - y.re, x.im - y.im};
    }
    friend ExactComplex operator*(const ExactComplex& x, const ExactComplex& y) {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
    friend ExactComplex operator/(const ExactComplex& x, const ExactComplex& y);
    friend bool operator==(const ExactComplex&, const ExactComplex&) = default;
    friend std::strong_ordering operator<=>(const ExactComplex&, const ExactComplex&) = default;
};

ExactComplex pow(const ExactComplex& z, int e);

struct NamedArg {
    std::string name;
    ExactComplex value;
};

// The 13 special arguments: 1/2, -1/2, -1/4, -1/8, (1+i)/2, (1-i)/2,
// (1+i)/4, (1-i)/8, i/2, -i/2, i/sqrt8, -i/sqrt2, i.
const std::vector<NamedArg>& catalog_args();
std::optional<std::string> catalog_name(const ExactComplex& z);

// Short-hands used throughout the ladder definitions.
namespace arg {
ExactComplex half();           // 1/2
ExactComplex w();              // (1+i)/2
ExactComplex w_conj();         // (1-i)/2
ExactComplex quarter_w();      // (1+i)/4
ExactComplex eighth_w_conj();  // (1-i)/8
ExactComplex i_half();         // i/2
ExactComplex neg_i_half();     // -i/2
ExactComplex i_over_sqrt8();   // i/sqrt8
ExactComplex neg_i_over_sqrt2();  // -i/sqrt2
ExactComplex h();              // i/sqrt2
ExactComplex i();
ExactComplex neg_i();
}  // namespace arg

}  // namespace polylad::ladders
