#include "polylad/mp/complex.hpp"

namespace polylad::mp {

MpComplex::MpComplex(const MpReal& re) : re_(re), im_(re.precision()) {}

MpComplex::MpComplex(const MpReal& re, const MpReal& im)
    : re_(re.rounded(max(re.precision(), im.precision()))),
      im_(im.rounded(max(re.precision(), im.precision()))) {}

MpComplex& MpComplex::operator+=(const MpComplex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

MpComplex& MpComplex::operator-=(const MpComplex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

MpComplex& MpComplex::operator*=(const MpComplex& o) {
    if (o.im_.is_zero()) return *this *= o.re_;
    MpReal r = re_ * o.re_ - im_ * o.im_;
    MpReal i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

MpComplex& MpComplex::operator/=(const MpComplex& o) {
    if (o.im_.is_zero()) return *this /= o.re_;
    MpReal d = o.re_ * o.re_ + o.im_ * o.im_;
    MpReal r = (re_ * o.re_ + im_ * o.im_) / d;
    MpReal i = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

MpComplex& MpComplex::operator*=(const MpReal& o) {
    re_ *= o;
    im_ *= o;
    return *this;
}

MpComplex& MpComplex::operator/=(const MpReal& o) {
    re_ /= o;
    im_ /= o;
    return *this;
}

MpComplex& MpComplex::operator*=(long o) {
    re_ *= o;
    im_ *= o;
    return *this;
}

MpComplex& MpComplex::operator/=(long o) {
    re_ /= o;
    im_ /= o;
    return *this;
}

MpComplex& MpComplex::operator*=(const Rational& q) {
    re_ *= q;
    im_ *= q;
    return *this;
}

MpComplex operator+(MpComplex a, const MpComplex& b) { return a += b; }
MpComplex operator-(MpComplex a, const MpComplex& b) { return a -= b; }
MpComplex operator*(MpComplex a, const MpComplex& b) { return a *= b; }
MpComplex operator/(MpComplex a, const MpComplex& b) { return a /= b; }
MpComplex operator*(MpComplex a, const MpReal& b) { return a *= b; }
MpComplex operator*(const MpReal& b, MpComplex a) { return a *= b; }
MpComplex operator/(MpComplex a, const MpReal& b) { return a /= b; }
MpComplex operator*(MpComplex a, long b) { return a *= b; }
MpComplex operator*(MpComplex a, const Rational& q) { return a *= q; }
MpComplex operator*(const Rational& q, MpComplex a) { return a *= q; }
MpComplex operator+(MpComplex a, const MpReal& b) { return {a.re() + b, a.im()}; }
MpComplex operator-(MpComplex a, const MpReal& b) { return {a.re() - b, a.im()}; }
MpComplex operator+(MpComplex a, long b) { return {a.re() + b, a.im()}; }
MpComplex operator-(long a, const MpComplex& b) { return {a - b.re(), -b.im()}; }

MpComplex conj(const MpComplex& z) { return {z.re(), -z.im()}; }

MpReal abs(const MpComplex& z) { return hypot(z.re(), z.im()); }

MpReal arg(const MpComplex& z) { return atan2(z.im(), z.re()); }

MpComplex exp(const MpComplex& z) {
    MpReal m = exp(z.re());
    if (z.im().is_zero()) return MpComplex(m);
    return {m * cos(z.im()), m * sin(z.im())};
}

MpComplex log(const MpComplex& z) {
    if (z.im().is_zero() && z.re().sign() > 0) return MpComplex(log(z.re()));
    return {log(abs(z)), arg(z)};
}

MpComplex sqrt(const MpComplex& z) {
    if (z.im().is_zero() && z.re().sign() >= 0) return MpComplex(sqrt(z.re()));
    MpReal r = abs(z);
    MpReal a = sqrt(ldexp(r + z.re(), -1));
    MpReal b = sqrt(ldexp(r - z.re(), -1));
    if (z.im().sign() < 0) b = -b;
    return {a, b};
}

MpComplex sin(const MpComplex& z) {
    if (z.im().is_zero()) return MpComplex(sin(z.re()));
    return {sin(z.re()) * cosh(z.im()), cos(z.re()) * sinh(z.im())};
}

MpComplex cos(const MpComplex& z) {
    if (z.im().is_zero()) return MpComplex(cos(z.re()));
    return {cos(z.re()) * cosh(z.im()), -(sin(z.re()) * sinh(z.im()))};
}

MpComplex pow(const MpComplex& z, long e) {
    if (e < 0) {
        MpComplex one(MpReal(1, z.precision()));
        return one / pow(z, -e);
    }
    MpComplex result(MpReal(1, z.precision()));
    MpComplex base = z;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

MpComplex pow(const MpComplex& z, const MpComplex& w) {
    if (z.is_zero()) return MpComplex(z.precision());
    return exp(w * log(z));
}

}  // namespace polylad::mp
