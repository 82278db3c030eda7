#include "polylad/mp/real.hpp"

#include <climits>
#include <cmath>
#include <limits>
#include <string>

#include "polylad/errors.hpp"

namespace polylad::mp {

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

mpfr_prec_t wider(const MpReal& a, const MpReal& b) {
    return std::max(mpfr_get_prec(a.get()), mpfr_get_prec(b.get()));
}

void check_prec(Bits prec) {
    if (prec.value < MPFR_PREC_MIN || prec.value > MPFR_PREC_MAX) {
        throw DomainError("precision out of range: " + std::to_string(prec.value));
    }
}

}  // namespace

Rational::Rational(long n, long d) : q_(n, d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    q_.canonicalize();
}

Rational::Rational(const BigInt& n, const BigInt& d) : q_(n, d) {
    if (d == 0) throw DomainError("rational with zero denominator");
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    if (!s.empty() && s.front() == '+') s.erase(s.begin());
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw DomainError("not a rational: '" + s + "'");
    }
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("rational division by zero");
    q_ /= o.q_;
    return *this;
}

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

Rational pow(const Rational& q, long e) {
    if (e < 0) return Rational(1) / pow(q, -e);
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), q.num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q.den().get_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
}

MpReal::MpReal(Bits prec) {
    check_prec(prec);
    mpfr_init2(v_, prec.value);
    mpfr_set_zero(v_, 1);
}

MpReal::MpReal(long v, Bits prec) : MpReal(prec) { mpfr_set_si(v_, v, kRnd); }

MpReal::MpReal(const BigInt& v, Bits prec) : MpReal(prec) {
    mpfr_set_z(v_, v.get_mpz_t(), kRnd);
}

MpReal::MpReal(const Rational& q, Bits prec) : MpReal(prec) {
    mpfr_set_q(v_, q.raw().get_mpq_t(), kRnd);
}

MpReal::MpReal(double v, Bits prec) : MpReal(prec) { mpfr_set_d(v_, v, kRnd); }

MpReal MpReal::parse(std::string_view text, Bits prec, int base) {
    MpReal r(prec);
    std::string s(text);
    if (mpfr_set_str(r.v_, s.c_str(), base, kRnd) != 0) {
        throw DomainError("not a number: '" + s + "'");
    }
    return r;
}

MpReal::MpReal(const MpReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, kRnd);
}

MpReal::MpReal(MpReal&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
}

MpReal& MpReal::operator=(const MpReal& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, kRnd);
    }
    return *this;
}

MpReal& MpReal::operator=(MpReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

MpReal::~MpReal() { mpfr_clear(v_); }

MpReal MpReal::rounded(Bits prec) const {
    MpReal r(prec);
    mpfr_set(r.v_, v_, kRnd);
    return r;
}

long MpReal::exponent() const {
    if (mpfr_zero_p(v_)) return LONG_MIN;
    return mpfr_get_exp(v_);
}

BigInt MpReal::to_integer() const {
    BigInt z;
    mpfr_get_z(z.get_mpz_t(), v_, kRnd);
    return z;
}

std::string MpReal::to_string(int digits, int base) const {
    if (mpfr_zero_p(v_)) return "0";
    mpfr_exp_t e = 0;
    char* raw = mpfr_get_str(nullptr, &e, base, static_cast<size_t>(digits), v_, kRnd);
    std::string m(raw);
    mpfr_free_str(raw);
    std::string sign;
    if (!m.empty() && m[0] == '-') {
        sign = "-";
        m.erase(m.begin());
    }
    std::string out;
    if (e > 0 && e <= static_cast<mpfr_exp_t>(m.size())) {
        out = m.substr(0, static_cast<size_t>(e)) + "." + m.substr(static_cast<size_t>(e));
    } else if (e <= 0 && e > -8) {
        out = "0." + std::string(static_cast<size_t>(-e), '0') + m;
    } else {
        out = m.substr(0, 1) + "." + m.substr(1) + (base == 10 ? "e" : "@") + std::to_string(e - 1);
    }
    return sign + out;
}

MpReal MpReal::operator-() const {
    MpReal r(*this);
    mpfr_neg(r.v_, r.v_, kRnd);
    return r;
}

MpReal& MpReal::operator+=(const MpReal& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), kRnd);
    mpfr_add(v_, v_, o.v_, kRnd);
    return *this;
}
MpReal& MpReal::operator-=(const MpReal& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), kRnd);
    mpfr_sub(v_, v_, o.v_, kRnd);
    return *this;
}
MpReal& MpReal::operator*=(const MpReal& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), kRnd);
    mpfr_mul(v_, v_, o.v_, kRnd);
    return *this;
}
MpReal& MpReal::operator/=(const MpReal& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), kRnd);
    mpfr_div(v_, v_, o.v_, kRnd);
    return *this;
}
MpReal& MpReal::operator+=(long o) { mpfr_add_si(v_, v_, o, kRnd); return *this; }
MpReal& MpReal::operator-=(long o) { mpfr_sub_si(v_, v_, o, kRnd); return *this; }
MpReal& MpReal::operator*=(long o) { mpfr_mul_si(v_, v_, o, kRnd); return *this; }
MpReal& MpReal::operator/=(long o) { mpfr_div_si(v_, v_, o, kRnd); return *this; }

MpReal& MpReal::operator*=(const Rational& q) {
    mpfr_mul_z(v_, v_, q.raw().get_num_mpz_t(), kRnd);
    mpfr_div_z(v_, v_, q.raw().get_den_mpz_t(), kRnd);
    return *this;
}

MpReal& MpReal::operator+=(const Rational& q) {
    mpfr_add_q(v_, v_, q.raw().get_mpq_t(), kRnd);
    return *this;
}

MpReal operator+(const MpReal& a, const MpReal& b) {
    MpReal r{Bits{wider(a, b)}};
    mpfr_add(r.get(), a.get(), b.get(), kRnd);
    return r;
}
MpReal operator-(const MpReal& a, const MpReal& b) {
    MpReal r{Bits{wider(a, b)}};
    mpfr_sub(r.get(), a.get(), b.get(), kRnd);
    return r;
}
MpReal operator*(const MpReal& a, const MpReal& b) {
    MpReal r{Bits{wider(a, b)}};
    mpfr_mul(r.get(), a.get(), b.get(), kRnd);
    return r;
}
MpReal operator/(const MpReal& a, const MpReal& b) {
    MpReal r{Bits{wider(a, b)}};
    mpfr_div(r.get(), a.get(), b.get(), kRnd);
    return r;
}
MpReal operator+(MpReal a, long b) { return a += b; }
MpReal operator-(MpReal a, long b) { return a -= b; }
MpReal operator*(MpReal a, long b) { return a *= b; }
MpReal operator/(MpReal a, long b) { return a /= b; }
MpReal operator+(long a, const MpReal& b) { return b + a; }
MpReal operator-(long a, const MpReal& b) {
    MpReal r(b.precision());
    mpfr_si_sub(r.get(), a, b.get(), kRnd);
    return r;
}
MpReal operator*(long a, MpReal b) { return b *= a; }
MpReal operator/(long a, const MpReal& b) {
    MpReal r(b.precision());
    mpfr_si_div(r.get(), a, b.get(), kRnd);
    return r;
}
MpReal operator*(MpReal a, const Rational& q) { return a *= q; }
MpReal operator*(const Rational& q, MpReal a) { return a *= q; }
MpReal operator+(MpReal a, const Rational& q) { return a += q; }

bool operator==(const MpReal& a, const MpReal& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }

std::partial_ordering operator<=>(const MpReal& a, const MpReal& b) {
    if (mpfr_unordered_p(a.get(), b.get())) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.get(), b.get());
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

bool operator==(const MpReal& a, long b) { return mpfr_cmp_si(a.get(), b) == 0; }

std::partial_ordering operator<=>(const MpReal& a, long b) {
    if (mpfr_nan_p(a.get())) return std::partial_ordering::unordered;
    int c = mpfr_cmp_si(a.get(), b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

#define POLYLAD_UNARY(name, fn)                    \
    MpReal name(const MpReal& x) {                 \
        MpReal r(x.precision());                   \
        fn(r.get(), x.get(), kRnd);                \
        return r;                                  \
    }

POLYLAD_UNARY(abs, mpfr_abs)
POLYLAD_UNARY(sqrt, mpfr_sqrt)
POLYLAD_UNARY(exp, mpfr_exp)
POLYLAD_UNARY(log, mpfr_log)
POLYLAD_UNARY(sin, mpfr_sin)
POLYLAD_UNARY(cos, mpfr_cos)
POLYLAD_UNARY(sinh, mpfr_sinh)
POLYLAD_UNARY(cosh, mpfr_cosh)

#undef POLYLAD_UNARY

MpReal atan2(const MpReal& y, const MpReal& x) {
    MpReal r{Bits{wider(x, y)}};
    mpfr_atan2(r.get(), y.get(), x.get(), kRnd);
    return r;
}

MpReal pow(const MpReal& x, long e) {
    MpReal r(x.precision());
    mpfr_pow_si(r.get(), x.get(), e, kRnd);
    return r;
}

MpReal pow(const MpReal& x, const MpReal& e) {
    MpReal r{Bits{wider(x, e)}};
    mpfr_pow(r.get(), x.get(), e.get(), kRnd);
    return r;
}

MpReal ldexp(const MpReal& x, long e) {
    MpReal r(x.precision());
    mpfr_mul_2si(r.get(), x.get(), e, kRnd);
    return r;
}

MpReal floor(const MpReal& x) {
    MpReal r(x.precision());
    mpfr_floor(r.get(), x.get());
    return r;
}

MpReal frac(const MpReal& x) {
    MpReal r = x - floor(x);
    return r;
}

MpReal hypot(const MpReal& x, const MpReal& y) {
    MpReal r{Bits{wider(x, y)}};
    mpfr_hypot(r.get(), x.get(), y.get(), kRnd);
    return r;
}

double log2_abs(const MpReal& x) {
    if (x.is_zero()) return -std::numeric_limits<double>::infinity();
    long e = 0;
    double m = mpfr_get_d_2exp(&e, x.get(), kRnd);
    return std::log2(std::fabs(m)) + static_cast<double>(e);
}

}  // namespace polylad::mp
