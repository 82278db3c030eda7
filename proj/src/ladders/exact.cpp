#include "polylad/ladders/exact.hpp"

#include "polylad/errors.hpp"

namespace polylad::ladders {

QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    Rational d = y.a * y.a - Rational(2) * y.b * y.b;
    if (d.is_zero()) throw DomainError("QuadExt division by zero");
    QuadExt n = x * y.conjugate();
    return {n.a / d, n.b / d};
}

MpReal QuadExt::value(Bits P) const {
    Bits wp = P + 16;
    MpReal v(a, wp);
    if (!b.is_zero()) v += mp::sqrt(MpReal(2, wp)) * b;
    return v.rounded(P);
}

std::string QuadExt::to_string() const {
    if (b.is_zero()) return a.to_string();
    std::string s = a.is_zero() ? "" : a.to_string() + (b.sign() > 0 ? "+" : "");
    return s + b.to_string() + "*sqrt2";
}

ExactComplex operator/(const ExactComplex& x, const ExactComplex& y) {
    QuadExt d = y.norm();
    ExactComplex n = x * y.conj();
    return {n.re / d, n.im / d};
}

MpComplex ExactComplex::value(Bits P) const { return MpComplex(re.value(P), im.value(P)); }

std::string ExactComplex::to_string() const {
    if (auto name = catalog_name(*this)) return *name;
    return "(" + re.to_string() + ")+(" + im.to_string() + ")i";
}

ExactComplex pow(const ExactComplex& z, int e) {
    if (e < 0) return ExactComplex(QuadExt(Rational(1))) / pow(z, -e);
    ExactComplex r(QuadExt(Rational(1)));
    for (int k = 0; k < e; ++k) r = r * z;
    return r;
}

namespace arg {
ExactComplex half() { return {QuadExt(Rational(1, 2))}; }
ExactComplex w() { return {QuadExt(Rational(1, 2)), QuadExt(Rational(1, 2))}; }
ExactComplex w_conj() { return {QuadExt(Rational(1, 2)), QuadExt(Rational(-1, 2))}; }
ExactComplex quarter_w() { return {QuadExt(Rational(1, 4)), QuadExt(Rational(1, 4))}; }
ExactComplex eighth_w_conj() { return {QuadExt(Rational(1, 8)), QuadExt(Rational(-1, 8))}; }
ExactComplex i_half() { return {QuadExt(), QuadExt(Rational(1, 2))}; }
ExactComplex neg_i_half() { return {QuadExt(), QuadExt(Rational(-1, 2))}; }
// i/sqrt8 = i*sqrt2/4
ExactComplex i_over_sqrt8() { return {QuadExt(), QuadExt(Rational(0), Rational(1, 4))}; }
// -i/sqrt2 = -i*sqrt2/2
ExactComplex neg_i_over_sqrt2() { return {QuadExt(), QuadExt(Rational(0), Rational(-1, 2))}; }
ExactComplex h() { return {QuadExt(), QuadExt(Rational(0), Rational(1, 2))}; }
ExactComplex i() { return {QuadExt(), QuadExt(Rational(1))}; }
ExactComplex neg_i() { return {QuadExt(), QuadExt(Rational(-1))}; }
}  // namespace arg

const std::vector<NamedArg>& catalog_args() {
    static const std::vector<NamedArg> args = {
        {"1/2", arg::half()},
        {"-1/2", {QuadExt(Rational(-1, 2))}},
        {"-1/4", {QuadExt(Rational(-1, 4))}},
        {"-1/8", {QuadExt(Rational(-1, 8))}},
        {"(1+i)/2", arg::w()},
        {"(1-i)/2", arg::w_conj()},
        {"(1+i)/4", arg::quarter_w()},
        {"(1-i)/8", arg::eighth_w_conj()},
        {"i/2", arg::i_half()},
        {"-i/2", arg::neg_i_half()},
        {"i/sqrt8", arg::i_over_sqrt8()},
        {"-i/sqrt2", arg::neg_i_over_sqrt2()},
        {"i", arg::i()},
    };
    return args;
}

std::optional<std::string> catalog_name(const ExactComplex& z) {
    for (const auto& a : catalog_args()) {
        if (a.value == z) return a.name;
    }
    if (z == arg::h()) return "i/sqrt2";
    if (z == arg::neg_i()) return "-i";
    return std::nullopt;
}

ExactComplex ExactComplex::parse(const std::string& text) {
    for (const auto& a : catalog_args()) {
        if (a.name == text) return a.value;
    }
    if (text == "i/sqrt2") return arg::h();
    if (text == "-i") return arg::neg_i();
    throw UnsupportedArgument("unknown argument '" + text + "'");
}

}  // namespace polylad::ladders
