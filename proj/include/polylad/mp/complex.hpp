#pragma once

#include "polylad/mp/real.hpp"

namespace polylad::mp {

// Complex value; both parts always carry the same precision.
class MpComplex {
public:
    explicit MpComplex(Bits prec) : re_(prec), im_(prec) {}
    explicit MpComplex(const MpReal& re);
    MpComplex(const MpReal& re, const MpReal& im);
    MpComplex(const Rational& re, const Rational& im, Bits prec) : re_(re, prec), im_(im, prec) {}

    const MpReal& re() const { return re_; }
    const MpReal& im() const { return im_; }
    Bits precision() const { return re_.precision(); }
    MpComplex rounded(Bits prec) const { return {re_.rounded(prec), im_.rounded(prec)}; }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    MpComplex operator-() const { return {-re_, -im_}; }
    MpComplex& operator+=(const MpComplex& o);
    MpComplex& operator-=(const MpComplex& o);
    MpComplex& operator*=(const MpComplex& o);
    MpComplex& operator/=(const MpComplex& o);
    MpComplex& operator*=(const MpReal& o);
    MpComplex& operator/=(const MpReal& o);
    MpComplex& operator*=(long o);
    MpComplex& operator/=(long o);
    MpComplex& operator*=(const Rational& q);

private:
    MpReal re_;
    MpReal im_;
};

MpComplex operator+(MpComplex a, const MpComplex& b);
MpComplex operator-(MpComplex a, const MpComplex& b);
MpComplex operator*(MpComplex a, const MpComplex& b);
MpComplex operator/(MpComplex a, const MpComplex& b);
MpComplex operator*(MpComplex a, const MpReal& b);
MpComplex operator*(const MpReal& b, MpComplex a);
MpComplex operator/(MpComplex a, const MpReal& b);
MpComplex operator*(MpComplex a, long b);
MpComplex operator*(MpComplex a, const Rational& q);
MpComplex operator*(const Rational& q, MpComplex a);
MpComplex operator+(MpComplex a, const MpReal& b);
MpComplex operator-(MpComplex a, const MpReal& b);
MpComplex operator+(MpComplex a, long b);
MpComplex operator-(long a, const MpComplex& b);

MpComplex conj(const MpComplex& z);
MpReal abs(const MpComplex& z);
MpReal arg(const MpComplex& z);
MpComplex exp(const MpComplex& z);
MpComplex log(const MpComplex& z);  // principal branch
MpComplex sqrt(const MpComplex& z);
MpComplex sin(const MpComplex& z);
MpComplex cos(const MpComplex& z);
MpComplex pow(const MpComplex& z, long e);
MpComplex pow(const MpComplex& z, const MpComplex& w);  // principal branch

}  // namespace polylad::mp
