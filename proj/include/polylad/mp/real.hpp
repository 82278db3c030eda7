#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <mpfr.h>

namespace polylad::mp {

using BigInt = mpz_class;

// Precision in bits. A distinct type so precisions never mix with orders,
// counts or positions.
struct Bits {
    long value;
    constexpr explicit Bits(long v) : value(v) {}
    constexpr Bits operator+(long extra) const { return Bits{value + extra}; }
    constexpr Bits operator-(long less) const { return Bits{value - less}; }
    constexpr auto operator<=>(const Bits&) const = default;
};

inline Bits max(Bits a, Bits b) { return a.value >= b.value ? a : b; }

// Exact rational with canonical form (reduced, positive denominator).
class Rational {
public:
    Rational() = default;
    Rational(long n) : q_(n) {}  // NOLINT: implicit integer promotion is intended
    Rational(long n, long d);
    explicit Rational(const BigInt& n) : q_(n) {}
    Rational(const BigInt& n, const BigInt& d);
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // Accepts "a", "-a" or "a/b".
    static Rational parse(std::string_view text);

    BigInt num() const { return q_.get_num(); }
    BigInt den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    std::string to_string() const { return q_.get_str(); }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_;
};

Rational abs(const Rational& q);
Rational pow(const Rational& q, long e);  // e may be negative for nonzero q

// RAII wrapper around an MPFR value. All rounding is to nearest, ties to even.
// Binary operations produce a result at the larger operand precision.
class MpReal {
public:
    explicit MpReal(Bits prec);  // +0
    MpReal(long v, Bits prec);
    MpReal(int v, Bits prec) : MpReal(static_cast<long>(v), prec) {}
    MpReal(const BigInt& v, Bits prec);
    MpReal(const Rational& q, Bits prec);
    MpReal(double v, Bits prec);
    static MpReal parse(std::string_view text, Bits prec, int base = 10);

    MpReal(const MpReal& o);
    MpReal(MpReal&& o) noexcept;
    MpReal& operator=(const MpReal& o);
    MpReal& operator=(MpReal&& o) noexcept;
    ~MpReal();

    Bits precision() const { return Bits{static_cast<long>(mpfr_get_prec(v_))}; }
    // Same value rounded to a new precision.
    MpReal rounded(Bits prec) const;

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    // Binary exponent e with 2^(e-1) <= |x| < 2^e; LONG_MIN for zero.
    long exponent() const;
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // Nearest integer (ties to even).
    BigInt to_integer() const;
    // Digits in the given base, e.g. "3.243f6a88...".
    std::string to_string(int digits, int base = 10) const;

    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    MpReal operator-() const;
    MpReal& operator+=(const MpReal& o);
    MpReal& operator-=(const MpReal& o);
    MpReal& operator*=(const MpReal& o);
    MpReal& operator/=(const MpReal& o);
    MpReal& operator+=(long o);
    MpReal& operator-=(long o);
    MpReal& operator*=(long o);
    MpReal& operator/=(long o);
    MpReal& operator*=(const Rational& q);
    MpReal& operator+=(const Rational& q);

private:
    mpfr_t v_;
};

MpReal operator+(const MpReal& a, const MpReal& b);
MpReal operator-(const MpReal& a, const MpReal& b);
MpReal operator*(const MpReal& a, const MpReal& b);
MpReal operator/(const MpReal& a, const MpReal& b);
MpReal operator+(MpReal a, long b);
MpReal operator-(MpReal a, long b);
MpReal operator*(MpReal a, long b);
MpReal operator/(MpReal a, long b);
MpReal operator+(long a, const MpReal& b);
MpReal operator-(long a, const MpReal& b);
MpReal operator*(long a, MpReal b);
MpReal operator/(long a, const MpReal& b);
MpReal operator*(MpReal a, const Rational& q);
MpReal operator*(const Rational& q, MpReal a);
MpReal operator+(MpReal a, const Rational& q);

bool operator==(const MpReal& a, const MpReal& b);
std::partial_ordering operator<=>(const MpReal& a, const MpReal& b);
bool operator==(const MpReal& a, long b);
std::partial_ordering operator<=>(const MpReal& a, long b);

MpReal abs(const MpReal& x);
MpReal sqrt(const MpReal& x);
MpReal exp(const MpReal& x);
MpReal log(const MpReal& x);
MpReal sin(const MpReal& x);
MpReal cos(const MpReal& x);
MpReal sinh(const MpReal& x);
MpReal cosh(const MpReal& x);
MpReal atan2(const MpReal& y, const MpReal& x);
MpReal pow(const MpReal& x, long e);
MpReal pow(const MpReal& x, const MpReal& e);  // x > 0
MpReal ldexp(const MpReal& x, long e);          // x * 2^e, exact
MpReal floor(const MpReal& x);
MpReal frac(const MpReal& x);  // x - floor(x), in [0, 1)
MpReal hypot(const MpReal& x, const MpReal& y);

// log2 of |x| as a double; -inf for zero. Used for residual reporting.
double log2_abs(const MpReal& x);

}  // namespace polylad::mp
