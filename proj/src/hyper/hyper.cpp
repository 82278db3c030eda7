#include "polylad/hyper/hyper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "polylad/errors.hpp"
#include "polylad/ladders/ladders.hpp"
#include "polylad/mp/functions.hpp"

namespace polylad::hyper {

using ladders::ExactComplex;
using ladders::QuadExt;

namespace {

MpReal one(Bits p) { return MpReal(1, p); }

using mp::log2_abs;
double log2_abs(const MpComplex& z) { return log2_abs(mp::abs(z)); }

CheckReport make_report(std::string name, Bits P, double log2_res, double threshold, std::string detail = {}) {
    CheckReport r;
    r.name = std::move(name);
    r.bits = P.value;
    r.log2_residual = log2_res;
    r.pass = log2_res < threshold;
    r.detail = std::move(detail);
    return r;
}

bool is_nonpositive_integer(const MpReal& x) {
    if (x.sign() > 0) return false;
    return x == MpReal(x.to_integer(), x.precision());
}

// Coefficients l_k (k = 1..J) with
//   log prod Gamma(n + alpha) / prod Gamma(n + beta) = (sum alpha - sum beta) log n + sum l_k n^-k.
std::vector<MpReal> gamma_ratio_log_series(const std::vector<MpReal>& alphas, const std::vector<MpReal>& betas,
                                           int J, Bits wp) {
    std::vector<MpReal> l(static_cast<size_t>(J + 1), MpReal(wp));
    for (int k = 1; k <= J; ++k) {
        MpReal s(wp);
        for (const auto& a : alphas) s += mp::bernoulli_poly(k + 1, a.rounded(wp));
        for (const auto& b : betas) s -= mp::bernoulli_poly(k + 1, b.rounded(wp));
        s /= static_cast<long>(k) * (k + 1);
        l[static_cast<size_t>(k)] = (k % 2 == 1) ? s : -s;
    }
    return l;
}

// exp(sum_{k>=1} l_k x^k) as a power series e_0..e_J.
std::vector<MpReal> exp_series(const std::vector<MpReal>& l, Bits wp) {
    const int J = static_cast<int>(l.size()) - 1;
    std::vector<MpReal> e(static_cast<size_t>(J + 1), MpReal(wp));
    e[0] = one(wp);
    for (int j = 1; j <= J; ++j) {
        MpReal s(wp);
        for (int k = 1; k <= j; ++k) s += l[static_cast<size_t>(k)] * e[static_cast<size_t>(j - k)] * static_cast<long>(k);
        e[static_cast<size_t>(j)] = s / static_cast<long>(j);
    }
    return e;
}

std::vector<MpReal> series_mul(const std::vector<MpReal>& a, const std::vector<MpReal>& b, Bits wp) {
    const size_t n = std::min(a.size(), b.size());
    std::vector<MpReal> c(n, MpReal(wp));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
    return c;
}

// B_{2k}/(2k)! for k = 1..K.
std::vector<MpReal> scaled_bernoulli(int K, Bits wp) {
    std::vector<MpReal> out;
    out.reserve(static_cast<size_t>(K));
    MpReal inv_fact = one(wp);
    for (int k = 1; k <= K; ++k) {
        inv_fact /= static_cast<long>((2 * k - 1) * (2 * k));
        out.push_back(MpReal(mp::bernoulli(2 * k), wp) * inv_fact);
    }
    return out;
}

struct ZetaTail {
    MpReal value;  // sum_{n>=N} n^-s
    MpReal deriv;  // d/ds of the same
};

// Euler-Maclaurin at a large integer N. Accurate when N is well above s and wp/8.
ZetaTail zeta_tail(const MpReal& s, long N, Bits wp, const std::vector<MpReal>& bern, bool want_deriv) {
    MpReal n(N, wp);
    MpReal logn = log(n);
    MpReal ns = exp(-s * logn);  // N^-s
    MpReal sm1 = s - 1L;
    MpReal value = ns * n / sm1 + ns / 2L;
    MpReal deriv(wp);
    if (want_deriv) deriv = -(ns * n) * (logn / sm1 + one(wp) / (sm1 * sm1)) - logn * ns / 2L;

    MpReal cutoff = ldexp(one(wp), -(wp.value + 4));
    MpReal inv_n2 = one(wp) / (n * n);
    MpReal poch = s;             // (s)_{2k-1}
    MpReal dlog(one(wp) / s);    // sum_{i<2k-1} 1/(s+i)
    MpReal power = ns / n;       // N^{-s-2k+1}
    for (size_t k = 1; k <= bern.size(); ++k) {
        MpReal term = bern[k - 1] * poch * power;
        value += term;
        if (want_deriv) deriv += term * (dlog - logn);
        if (abs(term) < cutoff * abs(value) && k > 1) break;
        if (k == bern.size()) throw PrecisionError("zeta tail: Euler-Maclaurin did not converge");
        long i0 = static_cast<long>(2 * k - 1);
        MpReal s1 = s + i0;
        MpReal s2 = s + (i0 + 1);
        poch *= s1 * s2;
        dlog += one(wp) / s1 + one(wp) / s2;
        power *= inv_n2;
    }
    return {value, deriv};
}

// Complex digamma via upward shift and the Stirling series.
MpComplex digamma(const MpComplex& z, Bits wp) {
    MpComplex w = z.rounded(wp);
    MpComplex acc(wp);
    const double target = static_cast<double>(wp.value) / 4.0 + 8.0;
    while (w.re().to_double() < target) {
        acc += MpComplex(one(wp)) / w;
        w += MpComplex(one(wp));
    }
    MpComplex result = mp::log(w) - MpComplex(one(wp)) / (w * 2L);
    MpComplex inv_w2 = MpComplex(one(wp)) / (w * w);
    MpComplex pw = inv_w2;
    MpReal cutoff = ldexp(one(wp), -(wp.value + 4));
    for (int k = 1; k <= 1024; ++k) {
        MpComplex term = pw * (mp::bernoulli(2 * k) / Rational(2 * k));
        result -= term;
        if (mp::abs(term) < cutoff) break;
        pw *= inv_w2;
    }
    return result - acc;
}

}  // namespace

// ---------------------------------------------------------------- 3F2 core

MpReal hyp3f2_unit(const MpReal& a1, const MpReal& a2, const MpReal& b1, const MpReal& b2, Bits P) {
    if (is_nonpositive_integer(b1) || is_nonpositive_integer(b2))
        throw PoleError("3F2 lower parameter is a non-positive integer");
    const Bits wp = P + 64;
    MpReal A1 = a1.rounded(wp), A2 = a2.rounded(wp), B1 = b1.rounded(wp), B2 = b2.rounded(wp);

    const bool terminating = is_nonpositive_integer(A1) || is_nonpositive_integer(A2);
    if (terminating) {
        long m = std::numeric_limits<long>::max();
        for (const MpReal* a : {&A1, &A2})
            if (is_nonpositive_integer(*a)) m = std::min(m, -a->to_integer().get_si());
        MpReal term = one(wp), sum(wp);
        for (long n = 0; n <= m; ++n) {
            sum += term;
            term *= (A1 + n) * (A2 + n) / ((B1 + n) * (B2 + n));
        }
        return sum.rounded(P);
    }

    MpReal excess = B1 + B2 - A1 - A2;
    if (!(excess > 1L)) throw DivergenceError("3F2 at unit argument needs b1 + b2 - a1 - a2 > 1");

    const long N = std::max<long>(64, P.value + 64);
    MpReal term = one(wp), sum(wp);
    for (long n = 0; n < N; ++n) {
        sum += term;
        term *= (A1 + n) * (A2 + n) / ((B1 + n) * (B2 + n));
    }
    if (term.is_zero()) return sum.rounded(P);

    // t_n = K n^-excess sum e_j n^-j for n >= N; K fixed from t_N itself.
    const int J = static_cast<int>(std::ceil(static_cast<double>(wp.value) / std::log2(static_cast<double>(N)))) + 8;
    auto e = exp_series(gamma_ratio_log_series({A1, A2}, {B1, B2}, J, wp), wp);
    MpReal nn(N, wp);
    MpReal inv_n = one(wp) / nn;
    MpReal shape(wp), pw = one(wp);
    for (int j = 0; j <= J; ++j) {
        shape += e[static_cast<size_t>(j)] * pw;
        pw *= inv_n;
    }
    MpReal K = term / (exp(-excess * log(nn)) * shape);

    auto bern = scaled_bernoulli(std::max<long>(16, wp.value / 4), wp);
    MpReal tail(wp);
    MpReal cutoff = ldexp(one(wp), -(wp.value + 8));
    for (int j = 0; j <= J; ++j) {
        MpReal z = zeta_tail(excess + static_cast<long>(j), N, wp, bern, false).value;
        MpReal piece = e[static_cast<size_t>(j)] * z;
        tail += piece;
        if (j > 2 && abs(piece) < cutoff * abs(tail)) break;
    }
    return (sum + K * tail).rounded(P);
}

// ---------------------------------------------------------------- W series

MpReal eval_W(const WArgs& a, Bits P) {
    const Bits wp = P + 32;
    MpReal half(Rational(1, 2), wp);
    MpReal c3 = half + a.a3, c4 = half + a.a4;
    if (!(c3 > 0L) || !(c4 > 0L)) throw DivergenceError("W needs 1/2 + a3 > 0 and 1/2 + a4 > 0");
    MpReal s1 = a.a1 + a.a2 + a.a3 + a.a4;
    if (!(s1 > -1L)) throw DivergenceError("W needs a1 + a2 + a3 + a4 > -1");
    MpReal f = hyp3f2_unit(half - a.a1, half - a.a2, c3 + 1L, c4 + 1L, wp);
    return (f / (c3 * c4)).rounded(P);
}

MpReal reflection_rhs(const WArgs& a, Bits P) {
    const Bits wp = P + 32;
    MpReal half(Rational(1, 2), wp);
    const MpReal* ak[4] = {&a.a1, &a.a2, &a.a3, &a.a4};
    MpReal s1 = a.a1 + a.a2 + a.a3 + a.a4;
    MpReal r = mp::gamma(s1.rounded(wp) + 1L, wp);
    for (auto* x : ak) r /= mp::gamma(half + *x, wp);
    for (int i = 0; i < 2; ++i)
        for (int j = 2; j < 4; ++j) r *= mp::beta_fn(half + *ak[i], half + *ak[j], wp);
    return r.rounded(P);
}

CheckReport check_reflection(const WArgs& a, Bits P) {
    const Bits wp = P + 32;
    MpReal lhs = eval_W(a, wp) + eval_W({a.a3, a.a4, a.a1, a.a2}, wp);
    MpReal res = abs(lhs - reflection_rhs(a, wp));
    return make_report("inv", P, log2_abs(res), -static_cast<double>(P.value - 32));
}

CheckReport check_symmetry(const WArgs& a, Bits P) {
    const Bits wp = P + 16;
    MpReal w0 = eval_W(a, wp);
    MpReal r1 = abs(w0 - eval_W({a.a2, a.a1, a.a3, a.a4}, wp));
    MpReal r2 = abs(w0 - eval_W({a.a1, a.a2, a.a4, a.a3}, wp));
    return make_report("W-symmetry", P, std::max(log2_abs(r1), log2_abs(r2)), -static_cast<double>(P.value - 16));
}

Rational f5(const F5Args& a) {
    Rational s1 = a.sigma1(), s2 = a.sigma2(), d1 = a.delta1(), d2 = a.delta2();
    return Rational(2) * s2 * d1 - Rational(3) * s1 * (d2 + s1 * d1);
}

// ---------------------------------------------------------------- F(a,b,c)

MpReal F_abc(const MpReal& a, const MpReal& b, const MpReal& c, Bits P) {
    const Bits wp = P + 16;
    MpReal half(Rational(1, 2), wp);
    MpReal f = hyp3f2_unit(-a, half - b, one(wp) - a, one(wp) - c, wp);
    return (one(wp) - f).rounded(P);
}

MpReal F_abc_transformed(const MpReal& a, const MpReal& b, const MpReal& c, Bits P) {
    const Bits wp = P + 32;
    MpReal half(Rational(1, 2), wp);
    MpReal pi = mp::pi(wp);
    MpReal A = a.rounded(wp), B = b.rounded(wp), C = c.rounded(wp);
    MpReal ratio = pi * A * mp::beta_fn(half + B, one(wp) - C, wp) /
                   (sin(pi * A) * mp::beta_fn(half - A + B, one(wp) + A - C, wp));
    MpReal w = eval_W({C - B, A - B, B, B - C}, wp);
    return (one(wp) - ratio + A * C * w).rounded(P);
}

// ---------------------------------------------------------------- generating functions

GenFnId parse_genfn(const std::string& name) {
    if (name.size() == 1 && name[0] >= 'A' && name[0] <= 'H') return static_cast<GenFnId>(name[0] - 'A');
    throw DomainError("unknown generating function: " + name);
}

std::string to_string(GenFnId id) { return std::string(1, static_cast<char>('A' + static_cast<int>(id))); }

bool has_hypergeometric(GenFnId id) { return id != GenFnId::E && id != GenFnId::H; }

namespace {

// t sum_k c_k / (k - b t) with c_k = coef * Part(z^k); the pole-sum kernel.
void add_pole_sum(MpComplex& acc, const MpComplex& bt, const Rational& coef, const ExactComplex& z, ladders::Part part,
                  Bits wp) {
    MpComplex zv = z.value(wp);
    double lz = log2_abs(zv);
    if (!(lz < 0)) throw DomainError("pole sum needs |z| < 1");
    double mag = std::max(0.0, log2_abs(bt));
    long K = static_cast<long>(std::ceil((static_cast<double>(wp.value) + mag + 8) / -lz)) + 2;
    MpComplex pw = zv;
    MpReal tiny = ldexp(one(wp), -(wp.value / 2));
    MpComplex s(wp);
    for (long k = 1; k <= K; ++k) {
        MpComplex den = MpComplex(MpReal(k, wp)) - bt;
        if (mp::abs(den) < tiny) throw PoleError("generating function evaluated at a pole");
        const MpReal& c = part == ladders::Part::re ? pw.re() : pw.im();
        s += MpComplex(c) / den;
        pw *= zv;
    }
    acc += s * bt * coef;
}

}  // namespace

MpComplex genfn_pf(GenFnId id, const MpComplex& t, Bits P) {
    const Bits wp = P + 32;
    const auto& spec = ladders::default_catalog().ladder(to_string(id));
    MpComplex acc(wp);
    if (t.is_zero()) return acc.rounded(P);
    MpComplex tt = t.rounded(wp);
    for (const auto& term : spec.terms) {
        // coef base^offset sum_k Part(z^k) (b t)/(k - b t)
        MpComplex bt = tt * term.base;
        Rational c = term.coef * pow(term.base, term.offset);
        add_pole_sum(acc, bt, c, term.arg, term.part, wp);
    }
    if (id != GenFnId::A) acc *= 2L;
    return acc.rounded(P);
}

MpReal genfn_pf(GenFnId id, const MpReal& t, Bits P) { return genfn_pf(id, MpComplex(t), P).re(); }

MpReal genfn_hyp(GenFnId id, const MpReal& t, Bits P) {
    if (!has_hypergeometric(id)) throw DomainError("no hypergeometric form is known for " + to_string(id));
    if (!(abs(t) < MpReal(Rational(1, 2), t.precision())))
        throw DomainError("genfn_hyp needs |t| < 1/2");
    const Bits wp = P + 32;
    MpReal T = t.rounded(wp);
    MpReal half(Rational(1, 2), wp);
    MpReal th = T / 2L;
    switch (id) {
        case GenFnId::A: return F_abc(th, th, T, P);
        case GenFnId::B: return F_abc(th, MpReal(wp), T, P);
        case GenFnId::C: return F_abc(th, T / 6L, T * 2L / 3L, P);
        case GenFnId::D: return F_abc(th, T / 3L, T * 2L / 3L, P);
        case GenFnId::F:
        case GenFnId::G: {
            MpReal b2 = id == GenFnId::F ? MpReal(half) : MpReal(half - T / 3L);
            MpReal d2 = id == GenFnId::F ? MpReal(one(wp) - T) : MpReal(one(wp) - T * 2L / 3L);
            if (T.is_zero()) return MpReal(P);
            MpReal f = hyp3f2_unit(half - th, b2, half * 3L - th, d2, wp);
            return (T / (one(wp) - T) * f).rounded(P);
        }
        default: break;
    }
    throw DomainError("no hypergeometric form");
}

CheckReport check_genfn(GenFnId id, const MpReal& t, Bits P) {
    const Bits wp = P + 16;
    MpReal res = abs(genfn_hyp(id, t, wp) - genfn_pf(id, t, wp));
    return make_report("genfn-" + to_string(id), P, log2_abs(res), -static_cast<double>(P.value - 32));
}

CheckReport check_trig_forms(GenFnId id, const MpReal& t, Bits P) {
    if (id != GenFnId::A && id != GenFnId::B && id != GenFnId::C && id != GenFnId::D)
        throw DomainError("trig forms exist for A, B, C, D only");
    const Bits wp = P + 32;
    MpReal T = t.rounded(wp);
    if (!(T > 0L) || !(T < MpReal(Rational(1, 3), wp))) throw DomainError("check_trig_forms needs t in (0, 1/3)");
    MpReal pi = mp::pi(wp);
    MpReal two_t = exp(T * mp::log2(wp));
    MpReal pt = pi * T;
    MpReal t2 = T * T;
    auto W = [&](const MpReal& x1, const MpReal& x2, const MpReal& x3, const MpReal& x4) {
        return eval_W({x1, x2, x3, x4}, wp);
    };
    MpReal z(wp);
    MpReal th = T / 2L, t3 = T / 3L, t6 = T / 6L;
    MpReal a(wp), b(wp), c(wp), con(wp), alt(wp);
    switch (id) {
        case GenFnId::A:
            a = th, b = th, c = T;
            con = one(wp) - pt / (two_t * sin(pt)) + t2 / 2L * W(th, z, th, -th);
            alt = one(wp) - pt * cos(pt) / (two_t * sin(pt)) - t2 / 2L * W(th, -th, th, z);
            break;
        case GenFnId::B:
            a = th, b = z, c = T;
            con = one(wp) - (pt / 2L) / (two_t * sin(pt / 2L)) + t2 / 2L * W(T, th, z, -T);
            alt = one(wp) - pt * 2L * cos(pt * 3L / 2L) / (two_t * sin(pt * 2L)) - t2 / 2L * W(z, -T, T, th);
            break;
        case GenFnId::C:
            a = th, b = t6, c = T * 2L / 3L;
            con = one(wp) - (pt / 2L) / (two_t * sin(pt / 2L) * cos(pt / 6L)) + t2 / 3L * W(th, t3, t6, -th);
            alt = one(wp) - pt * cos(pt) / (two_t * sin(pt) * cos(pt / 3L)) - t2 / 3L * W(t6, -th, th, t3);
            break;
        default:
            a = th, b = t3, c = T * 2L / 3L;
            con = one(wp) - (pt / 2L) / (two_t * sin(pt / 2L) * cos(pt / 3L)) + t2 / 3L * W(t3, t6, t3, -t3);
            alt = one(wp) - (pt / 2L) * cos(pt * 5L / 6L) / (two_t * sin(pt / 2L) * cos(pt / 6L) * cos(pt / 3L)) -
                  t2 / 3L * W(t3, -t3, t3, t6);
            break;
    }
    MpReal f = F_abc(a, b, c, wp);
    MpReal fab = F_abc_transformed(a, b, c, wp);
    double r_con = log2_abs(f - con), r_alt = log2_abs(f - alt), r_fab = log2_abs(f - fab);
    std::string detail = "con " + std::to_string(r_con) + ", alt " + std::to_string(r_alt) + ", fab " +
                         std::to_string(r_fab);
    return make_report("trig-" + to_string(id), P, std::max({r_con, r_alt, r_fab}),
                       -static_cast<double>(P.value - 32), detail);
}

// ---------------------------------------------------------------- complex generators

ComplexGen parse_complex_gen(const std::string& name) {
    if (name == "F" || name == "F-gen" || name == "frec") return ComplexGen::F;
    if (name == "G" || name == "G-gen" || name == "grec") return ComplexGen::G;
    if (name == "H" || name == "H-gen" || name == "hrec") return ComplexGen::H;
    throw DomainError("unknown recurrence: " + name);
}

MpComplex complex_genfn(ComplexGen id, const MpComplex& t, Bits P) {
    const Bits wp = P + 32;
    MpComplex tt = t.rounded(wp);
    MpComplex acc(wp);
    if (tt.is_zero()) return acc.rounded(P);
    auto add = [&](const ExactComplex& z, const Rational& b, const Rational& coef) {
        // t sum z^k / (k - b t) = (1/b) sum z^k (b t)/(k - b t); both parts of z^k.
        MpComplex bt = tt * b;
        MpComplex re(wp), im(wp);
        add_pole_sum(re, bt, coef / b, z, ladders::Part::re, wp);
        add_pole_sum(im, bt, coef / b, z, ladders::Part::im, wp);
        acc += re + im * MpComplex(MpReal(wp), one(wp));
    };
    ExactComplex neg_i_half = ladders::arg::neg_i_half();
    switch (id) {
        case ComplexGen::F: add(ladders::arg::w(), Rational(2), Rational(1)); break;
        case ComplexGen::G:
            add(ladders::arg::quarter_w(), Rational(2, 3), Rational(1));
            add(neg_i_half, Rational(1), Rational(-1));
            break;
        case ComplexGen::H:
            add(ladders::arg::eighth_w_conj(), Rational(2, 5), Rational(1));
            add(neg_i_half, Rational(1), Rational(-2));
            break;
    }
    acc *= 2L;
    return acc.rounded(P);
}

CheckReport check_recurrence(ComplexGen id, const MpComplex& t, Bits P) {
    const Bits wp = P + 32;
    MpComplex T = t.rounded(wp);
    MpComplex I(MpReal(wp), one(wp));
    auto c = [&](long re, long im) { return MpComplex(MpReal(re, wp), MpReal(im, wp)); };
    auto inv = [&](const MpComplex& num, const MpComplex& den) { return num / den; };
    auto L = [&](long k, long m) { return c(k, 0) - T * m; };  // k - m t
    MpComplex lhs(wp), rhs(wp);
    std::string name;
    switch (id) {
        case ComplexGen::F: {
            name = "frec";
            MpComplex s = T - c(1, 0);
            lhs = complex_genfn(id, T, wp) * 2L / T - (I * complex_genfn(id, s, wp) - I) / s;
            rhs = inv(c(2, 2), L(1, 2));
            break;
        }
        case ComplexGen::G: {
            name = "grec";
            MpComplex s = T - c(3, 0);
            lhs = complex_genfn(id, T, wp) * 8L / T - (I * complex_genfn(id, s, wp) - I) / s;
            rhs = inv(c(12, 12), L(3, 2)) + inv(c(0, 8), L(1, 1)) + inv(c(4, 0), L(2, 1));
            break;
        }
        case ComplexGen::H: {
            name = "hrec";
            MpComplex s = T - c(5, 0);
            lhs = complex_genfn(id, T, wp) * 32L / T + (I * complex_genfn(id, s, wp) - I) / s;
            rhs = inv(c(40, -40), L(5, 2)) + inv(c(0, 64), L(1, 1)) + inv(c(32, 0), L(2, 1)) -
                  inv(c(0, 16), L(3, 1)) - inv(c(8, 0), L(4, 1));
            break;
        }
    }
    return make_report(name, P, log2_abs(lhs - rhs), -static_cast<double>(P.value - 32));
}

// ---------------------------------------------------------------- U(t)

namespace {

// The trig subtraction of E(t): (pi t/2)/(2^t sin(pi t/2)) (1/cos(pi t/5) - 8 sin^2(pi t/5)).
MpReal trig_part(const MpReal& t, Bits wp) {
    MpReal pi = mp::pi(wp);
    MpReal x = pi * t;
    MpReal s5 = sin(x / 5L);
    MpReal bracket = one(wp) / cos(x / 5L) - s5 * s5 * 8L;
    return (x / 2L) / (exp(t * mp::log2(wp)) * sin(x / 2L)) * bracket;
}

MpReal U_direct(const MpReal& t, Bits wp) {
    MpReal e = genfn_pf(GenFnId::E, t, wp);
    return (one(wp) - trig_part(t, wp) - e) * 5L / 2L;
}

// Nearest point of {0} U {2k} U {5k/2} (k >= 1) as an exact rational.
Rational nearest_lattice(const MpReal& t) {
    double x = t.to_double();
    Rational best(0);
    double bd = std::fabs(x);
    long k2 = std::lround(x / 2.0);
    if (k2 >= 1 && std::fabs(x - 2.0 * k2) < bd) best = Rational(2 * k2), bd = std::fabs(x - 2.0 * k2);
    long k5 = std::lround(x / 2.5);
    if (k5 >= 1 && std::fabs(x - 2.5 * k5) < bd) best = Rational(5 * k5, 2), bd = std::fabs(x - 2.5 * k5);
    return best;
}

// Negative poles of U: even t < 0 and t = -5/2 - 5j.
bool near_negative_pole(const MpReal& t, Bits P, Rational* pole) {
    double x = t.to_double();
    if (x > -1.5) return false;
    Rational cands[2] = {Rational(2 * std::lround(x / 2.0)), Rational(5 * (2 * std::lround((x + 2.5) / 5.0) - 1), 2)};
    for (const auto& c : cands) {
        if (c.sign() >= 0) continue;
        MpReal d = abs(t - MpReal(c, t.precision()));
        if (d.is_zero() || log2_abs(d) < -static_cast<double>(P.value) / 2) {
            if (pole) *pole = c;
            return true;
        }
    }
    return false;
}

// Value at a lattice point from symmetric samples t0 +- j h, j = 1..m.
MpReal U_interpolated(const Rational& t0, Bits P) {
    const double R = mp::MpReal(t0, Bits{64}).to_double() + 2.0;  // distance to the pole at -2
    const double r = 0.25;
    long m = static_cast<long>(std::ceil((static_cast<double>(P.value) + 64) / (2 * std::log2(R / r)))) + 2;
    const Bits wp = P + 48 + static_cast<long>(std::log2(4.0 * m)) + 8;
    Rational h(1, 4 * m);
    MpReal acc(wp);
    // w_j = prod_{i != j} i/(i - j) over i in {+-1..+-m}; |w_j| = C(2m, m+j)/C(2m, m).
    BigInt cm;
    mpz_bin_uiui(cm.get_mpz_t(), static_cast<unsigned long>(2 * m), static_cast<unsigned long>(m));
    for (long j = -m; j <= m; ++j) {
        if (j == 0) continue;
        BigInt cj;
        mpz_bin_uiui(cj.get_mpz_t(), static_cast<unsigned long>(2 * m), static_cast<unsigned long>(m + j));
        Rational w(cj, cm);
        if ((j % 2 + 2) % 2 == 0) w = -w;  // sign (-1)^(j+1)
        MpReal x(t0 + h * Rational(j), wp);
        acc += U_direct(x, wp) * w;
    }
    return acc.rounded(P);
}

}  // namespace

MpReal U(const MpReal& t, Bits P) {
    if (t.is_zero()) return MpReal(P);
    Rational pole;
    if (near_negative_pole(t, P, &pole)) throw PoleError("U is singular at t = " + pole.to_string());
    if (t.sign() > 0 || t > MpReal(Rational(-1, 2), Bits{64})) {
        Rational t0 = nearest_lattice(t);
        MpReal d = abs(t - MpReal(t0, t.precision() + 64));
        double ld = log2_abs(d);
        if (d.is_zero() || ld < -4.0 * static_cast<double>(P.value)) {
            if (t0.is_zero()) return MpReal(P);
            return U_interpolated(t0, P);
        }
        long extra = ld < 0 ? static_cast<long>(std::ceil(-ld)) : 0;
        return U_direct(t.rounded(P + 64 + extra), P + 40 + extra).rounded(P);
    }
    // Negative axis: only the trig term has poles there.
    double x = t.to_double();
    double dist = std::min(std::fabs(x - 2.0 * std::round(x / 2.0)), std::fabs(x + 2.5 - 5.0 * std::round((x + 2.5) / 5.0)));
    MpReal d(dist, Bits{64});
    long extra = static_cast<long>(std::max(0.0, -std::log2(std::max(dist, 1e-300)))) +
                 static_cast<long>(std::ceil(std::fabs(x)));
    if (dist < 1e-12) {
        // Too close for a double estimate; measure exactly.
        MpReal e1 = abs(t - MpReal(Rational(2 * std::lround(x / 2.0)), t.precision()));
        MpReal e2 = abs(t - MpReal(Rational(5 * (2 * std::lround((x + 2.5) / 5.0) - 1), 2), t.precision()));
        extra += static_cast<long>(std::ceil(-std::min(log2_abs(e1), log2_abs(e2))));
    }
    return U_direct(t.rounded(P + 64 + extra), P + 40 + extra).rounded(P);
}

MpReal Utilde(const MpReal& t, Bits P) {
    const Bits wp = P + 32;
    MpReal pi = mp::pi(wp);
    if (t.is_zero()) return MpReal(-10, P);
    double x = t.to_double();
    long k = std::lround(x / 2.0);
    if (k != 0 && log2_abs(t - MpReal(2 * k, t.precision())) < -static_cast<double>(P.value) / 2)
        throw PoleError("Utilde is singular at even t");
    MpReal T = t.rounded(wp);
    MpReal sub = pi * T * 5L / (exp(T * mp::log2(wp)) * sin(pi * T / 2L));
    return (U(t, wp) - sub).rounded(P);
}

// ---------------------------------------------------------------- rational families

namespace {

ExactComplex ec(long re, long im) { return {QuadExt(Rational(re)), QuadExt(Rational(im))}; }
ExactComplex ec(const Rational& re) { return {QuadExt(re)}; }
Rational re_of(const ExactComplex& z) {
    if (!z.re.is_rational()) throw DomainError("unexpected surd");
    return z.re.a;
}

Rational U_positive(long n) {
    ExactComplex ih = ladders::arg::i_half();
    ExactComplex s;
    for (long k = 1; k <= 2 * n; ++k)
        s = s + (pow(ec(2, 2), static_cast<int>(k)) - ec(2, 0)) * ec(Rational(1, k)) *
                    pow(ih, static_cast<int>(5 * n - k));
    for (long k = 2 * n + 1; k <= 5 * n; ++k) s = s - ec(Rational(2, k)) * pow(ih, static_cast<int>(5 * n - k));
    return Rational(25 * n) * re_of(s);
}

Rational Re_pow(long re, long im, long e) { return re_of(pow(ec(re, im), static_cast<int>(e))); }

}  // namespace

Rational V(long n) {
    if (n < 1) throw DomainError("V(n) needs n >= 1");
    ExactComplex ih = ladders::arg::i_half();
    ExactComplex s;
    for (long k = 1; k <= 2 * n - 1; ++k)
        s = s + (pow(ec(2, 2), static_cast<int>(-k)) - ec(2, 0)) * ec(Rational(1, k)) *
                    pow(ih, static_cast<int>(k - 5 * n));
    for (long k = 2 * n; k <= 5 * n - 1; ++k) s = s - ec(Rational(2, k)) * pow(ih, static_cast<int>(k - 5 * n));
    return Rational(-25 * n) * re_of(s);
}

URational U_rational(const Rational& t) {
    URational out;
    if (t.is_zero()) {
        out.value = Rational(0);
        out.family = "zero";
        return out;
    }
    if (t.is_integer()) {
        long v = t.num().get_si();
        if (v % 5 != 0) throw DomainError("U_rational: t is not in a rational family");
        long n = std::labs(v) / 5;
        if (v > 0) {
            out.value = U_positive(n);
            out.family = "ratp";
            return out;
        }
        if (n % 2 == 1) {
            out.value = V(n);
            out.family = "ratm";
            return out;
        }
        long m = n / 2;  // t = -10 m
        Rational pw = pow(Rational(-1024), m);
        out.residue = pw * Rational(25 * m);
        out.value = V(2 * m) - pw * Rational(5, 2);
        out.family = "rats";
        return out;
    }
    if (t.den() == 2) {
        long v = t.num().get_si();  // t = v/2
        if (v % 5 != 0 || (v / 5) % 2 == 0) throw DomainError("U_rational: t is not in a rational family");
        long n = std::labs(v) / 5;
        out.tilde = true;
        if (v > 0) {
            Rational a(0), b(0);
            for (long k = 0; k <= n - 1; ++k) a += Re_pow(4, 4, -k) / Rational(2 * n - 2 * k);
            for (long k = 0; k <= (5 * n) / 4; ++k) b += pow(Rational(-4), -k) / Rational(5 * n - 4 * k);
            out.value = Rational(25 * n) * a - Rational(50 * n) * b;
            out.family = "rathp";
            return out;
        }
        Rational rp = Re_pow(4, 4, n);
        Rational a(0), b(0);
        for (long k = 1; k <= n - 1; ++k) a += Re_pow(4, 4, k) / Rational(2 * n - 2 * k);
        for (long k = 1; k <= (5 * n) / 4; ++k) b += pow(Rational(-4), k) / Rational(5 * n - 4 * k);
        out.residue = rp * Rational(125 * n, 4);
        out.value = -rp * Rational(25, 2) - Rational(25 * n) * a + Rational(50 * n) * b;
        out.family = "rathm";
        return out;
    }
    throw DomainError("U_rational: t is not in a rational family");
}

// ---------------------------------------------------------------- asymptotic integers

namespace {

// Coefficient of q^e in (1/cosh(pi x/5) + 8 sinh^2(pi x/5)) / sinh(pi x/2), q = exp(-pi x/10).
long kernel_coeff(long e) {
    auto A = [](long k) -> long {
        long v = 0;
        if (k == -4) v += 2;
        if (k == 0) v -= 4;
        if (k == 4) v += 2;
        if (k >= 2 && (k - 2) % 4 == 0) v += ((k - 2) / 4) % 2 == 0 ? 2 : -2;
        return v;
    };
    long c = 0;
    for (long l = 0; e - 5 - 10 * l >= -4; ++l) c += 2 * A(e - 5 - 10 * l);
    return c;
}

}  // namespace

BigInt asymp_coeff(int m) {
    if (m < 1 || m > 64) throw DomainError("asymp_coeff needs 1 <= m <= 64");
    const int n = m;
    // |k_n| <~ n! (10/0.76)^n; keep 64 bits below the unit.
    double mag = std::lgamma(n + 1.0) / std::log(2.0) + n * std::log2(10.0 / 0.75) + 8;
    const Bits wp{static_cast<long>(mag) + 96};

    const long m0 = 8, E0 = 40 * m0;
    std::vector<long> alpha(41), beta(41);
    for (long r = 1; r <= 40; ++r) {
        long c0 = kernel_coeff(r + 40 * m0), c1 = kernel_coeff(r + 40 * (m0 + 1)),
             c2 = kernel_coeff(r + 40 * (m0 + 2));
        beta[static_cast<size_t>(r)] = c1 - c0;
        alpha[static_cast<size_t>(r)] = c0 - beta[static_cast<size_t>(r)] * m0;
        if (c2 - c1 != c1 - c0) throw PrecisionError("kernel coefficients are not periodic-linear");
    }

    MpReal pi = mp::pi(wp);
    MpReal b = mp::log2(wp);
    // Direct part: sum_{e <= E0} c_e / (pi e/10 + i b)^(n+1).
    MpComplex J(wp);
    for (long e = 1; e <= E0; ++e) {
        long c = kernel_coeff(e);
        if (c == 0) continue;
        MpComplex z(pi * e / 10L, b);
        J += MpComplex(MpReal(c, wp)) / pow(z, n + 1);
    }
    // Tail e = r + 40 m, m >= m0: (4 pi)^-(n+1) [(alpha - beta a) zeta(n+1, a') + beta zeta(n, a')].
    MpComplex tail(wp);
    MpReal ib = b / (pi * 4L);
    long beta_sum = 0;
    for (long r = 1; r <= 40; ++r) {
        long al = alpha[static_cast<size_t>(r)], be = beta[static_cast<size_t>(r)];
        beta_sum += be;
        if (al == 0 && be == 0) continue;
        MpComplex a(MpReal(Rational(r, 40), wp), ib);
        MpComplex ashift = a + MpComplex(MpReal(m0, wp));
        MpComplex z_hi(wp), z_lo(wp);
        if (n >= 2) {
            auto zs = mp::hurwitz_zeta_batch(ashift, n, n + 1, wp);
            z_lo = zs[0];
            z_hi = zs[1];
        } else {
            z_hi = mp::hurwitz_zeta_batch(ashift, 2, 2, wp)[0];
            z_lo = -digamma(ashift, wp);  // finite part at s = 1; the poles cancel since sum beta = 0
        }
        MpComplex coef = MpComplex(MpReal(al, wp)) - a * be;
        tail += coef * z_hi + z_lo * be;
    }
    if (beta_sum != 0) throw PrecisionError("kernel growth does not cancel");
    tail /= pow(pi * 4L, n + 1);
    J += tail;
    MpReal fact(1, wp);
    for (int k = 2; k <= n; ++k) fact *= static_cast<long>(k);
    J *= fact;

    // I_n = J + (-1)^(n+1) conj(J);  k_n = -(5/48) 10^n i^(n-1) I_n.
    MpComplex I = (n % 2 == 1) ? J + mp::conj(J) : J - mp::conj(J);
    MpComplex ipow(wp);
    switch ((n - 1) % 4) {
        case 0: ipow = MpComplex(one(wp)); break;
        case 1: ipow = MpComplex(MpReal(wp), one(wp)); break;
        case 2: ipow = MpComplex(-one(wp)); break;
        default: ipow = MpComplex(MpReal(wp), -one(wp)); break;
    }
    MpComplex k = I * ipow * MpReal(Rational(-5, 48), wp) * pow(MpReal(10, wp), n);
    BigInt rounded = k.re().to_integer();
    MpReal margin = abs(k.re() - MpReal(rounded, wp));
    if (!(margin < MpReal(Rational(1, 4), wp)) || !(abs(k.im()) < MpReal(Rational(1, 4), wp)))
        throw PrecisionError("asymp_coeff rounding margin exceeds 1/4");
    return rounded;
}

std::vector<BigInt> asymp_coeffs(int m_max) {
    std::vector<BigInt> out;
    for (int m = 1; m <= m_max; ++m) out.push_back(asymp_coeff(m));
    return out;
}

std::string asymp_json(const std::vector<BigInt>& ks) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& k : ks) j.push_back(k.get_str());
    return j.dump();
}

// ---------------------------------------------------------------- Pochhammer identities

Pochhammer parse_pochhammer(const std::string& name) {
    static const char* names[] = {"poca", "pocb", "pocc", "pocd", "poc4", "poc6"};
    for (int i = 0; i < 6; ++i)
        if (name == names[i]) return static_cast<Pochhammer>(i);
    throw DomainError("unknown Pochhammer identity: " + name);
}

std::string to_string(Pochhammer p) {
    static const char* names[] = {"poca", "pocb", "pocc", "pocd", "poc4", "poc6"};
    return names[static_cast<int>(p)];
}

CheckReport pochhammer_check(Pochhammer which, const MpReal& t, Bits P) {
    const Bits wp = P + 32;
    MpReal T = t.rounded(wp);
    MpReal half(Rational(1, 2), wp);
    MpReal pi = mp::pi(wp);
    auto poch = [&](const MpReal& a, const MpReal& n) { return mp::gamma(a + n, wp) / mp::gamma(a, wp); };
    auto p2 = [&](long k) { return exp((MpReal(k, wp) - T) * mp::log2(wp)); };  // 2^(k - t)
    MpReal lhs(wp), rhs(wp);
    switch (which) {
        case Pochhammer::poca: {
            MpReal n = T / 2L - half;
            lhs = poch(half, n) / poch(half + T / 2L, n);
            rhs = p2(1);
            break;
        }
        case Pochhammer::pocb: {
            MpReal n = T - half;
            lhs = poch(half - T / 2L, n) / poch(half, n);
            rhs = p2(1) * cos(pi * T / 2L);
            break;
        }
        case Pochhammer::pocc: {
            MpReal n = T / 2L - half;
            lhs = poch(half - T / 3L, n) / poch(half + T / 6L, n);
            rhs = p2(2) * cos(pi * T / 3L);
            break;
        }
        case Pochhammer::pocd: {
            MpReal n = T / 3L - half;
            lhs = poch(half - T / 6L, n) / poch(half + T / 3L, n);
            rhs = p2(2) * cos(pi * T / 6L);
            break;
        }
        case Pochhammer::poc4: {
            MpReal n = T / 5L - half;
            MpReal d = poch(half + T / 5L, n);
            lhs = poch(half, n) * poch(half - T / 10L, n) / (d * d);
            rhs = p2(3) * cos(pi * T / 10L);
            break;
        }
        case Pochhammer::poc6: {
            MpReal n = T / 5L - half;
            MpReal a = poch(half - T / 10L, n), h = poch(half, n);
            lhs = a * a * a / (h * h * poch(half + T / 5L, n));
            rhs = p2(3) * cos(pi * T / 10L);
            break;
        }
    }
    return make_report(to_string(which), P, log2_abs(lhs - rhs), -static_cast<double>(P.value - 48));
}

// ---------------------------------------------------------------- expansion of U at 0

CheckReport expu_check(Bits P) {
    if (P.value < 512) throw DomainError("expu_check needs P >= 512");
    const int order = 5;
    MpReal radius(Rational(1, 4), P);
    const int points = static_cast<int>(P.value / 6) | 1;
    auto coeffs = mp::taylor_coeffs([&](const MpReal& x) { return U(x, Bits{2 * P.value}); }, order, P, radius,
                                    points);
    const Bits wp = P + 32;
    MpReal pi = mp::pi(wp), l2 = mp::log2(wp);
    MpReal pi2 = pi * pi, pi4 = pi2 * pi2;
    double worst = -std::numeric_limits<double>::infinity();
    std::string detail;
    for (int k = 0; k <= order; ++k) {
        MpReal c(wp);
        auto pref = [&](int j) {  // coefficient of t^j in 2^-(1+t)
            MpReal v = one(wp) / 2L;
            for (int i = 1; i <= j; ++i) v *= -l2 / static_cast<long>(i);
            return v;
        };
        if (k >= 2) c += pi2 * pref(k - 2);
        if (k >= 4) c += pi4 * Rational(53, 1200) * pref(k - 4);
        if (k >= 3) c -= ladders::eval_ladder("Abar", k, wp) * Rational(6, 5);
        if (k == 5) c += mp::zeta(5, wp) * Rational(213 * 31, 250 * 32);
        double r = log2_abs(coeffs[static_cast<size_t>(k)] - c);
        worst = std::max(worst, r);
        detail += (k ? ", " : "") + std::string("t^") + std::to_string(k) + " " + std::to_string(r);
    }
    return make_report("expu", P, worst, -static_cast<double>(P.value) / 4, detail);
}

// ---------------------------------------------------------------- geometric sums

CheckReport geo_checks(Bits P) {
    auto geom = [](const ExactComplex& x) { return x / (ec(1, 0) - x); };  // sum_{k>0} x^k
    auto geom0 = [](const Rational& x) { return Rational(1) / (Rational(1) - x); };
    bool ok = true;
    std::string detail;
    {
        ExactComplex l = ec(-3, 0) * geom(ec(Rational(-1, 8))) + ec(2, 0) * geom(ec(Rational(-1, 2)));
        Rational r = Rational(1) - geom0(Rational(1, 4));
        bool good = l == ec(Rational(-1, 3)) && r == Rational(-1, 3);
        ok = ok && good;
        detail += std::string("geoc ") + (good ? "exact" : "FAIL");
    }
    {
        ExactComplex l = ec(-3, 0) * ec(re_of(geom(ladders::arg::quarter_w()))) + ec(2, 0) * geom(ec(Rational(-1, 4)));
        Rational r = Rational(1) - geom0(Rational(1, 2));
        bool good = l == ec(Rational(-1)) && r == Rational(-1);
        ok = ok && good;
        detail += std::string(", geod ") + (good ? "exact" : "FAIL");
    }
    const Bits wp = P + 32;
    MpReal pi = mp::pi(wp);
    double worst = -std::numeric_limits<double>::infinity();
    for (long t : {0L, 2L, 4L, 6L, 8L, 10L}) {
        MpReal x = pi * t / 5L;
        MpReal s = sin(x);
        MpReal v = one(wp) / cos(x) - s * s * 8L;
        long expect = (t % 10 == 0) ? 1 : -4;
        worst = std::max(worst, log2_abs(v - MpReal(expect, wp)));
    }
    for (long twice : {5L, 15L, 25L}) {  // 2t = 5 mod 10
        MpReal t = MpReal(twice, wp) / 2L;
        MpReal v = one(wp) / sin(pi * t / 2L) + sin(pi * t / 10L) * 2L;
        worst = std::max(worst, log2_abs(v));
    }
    detail += ", trig " + std::to_string(worst);
    CheckReport r = make_report("geo", P, ok ? worst : 0.0, -static_cast<double>(P.value - 16), detail);
    r.pass = r.pass && ok;
    return r;
}

// ---------------------------------------------------------------- Catalan from the binomial sum

MpReal catalan_binomial(Bits P) {
    const Bits wp = P + 48;
    const long N = std::max<long>(64, 2 * P.value);
    // T_n = (1/2) C(2n,n) 4^-n H_{2n} / (2n+1), summed directly below N.
    MpReal c = one(wp) / 2L;  // C(2n,n)/4^n at n = 1
    MpReal H = MpReal(3, wp) / 2L;
    MpReal sum(wp);
    for (long n = 1; n < N; ++n) {
        sum += c * H / (2 * n + 1) / 2L;
        c *= MpReal(2 * n + 1, wp) / (2 * n + 2);
        H += one(wp) / (2 * n + 1) + one(wp) / (2 * n + 2);
    }
    // Tail: T_n ~ n^-3/2 / (4 sqrt pi) Q(1/n) (log n + log 2 + gamma + h(1/n)).
    const int J = static_cast<int>(std::ceil(static_cast<double>(wp.value) / std::log2(static_cast<double>(N)))) + 4;
    MpReal half(Rational(1, 2), wp);
    auto g = exp_series(gamma_ratio_log_series({half}, {one(wp)}, J, wp), wp);
    std::vector<MpReal> d(static_cast<size_t>(J + 1), MpReal(wp));
    d[0] = one(wp);
    for (int i = 1; i <= J; ++i) d[static_cast<size_t>(i)] = -d[static_cast<size_t>(i - 1)] / 2L;
    auto Q = series_mul(g, d, wp);
    MpReal euler(wp);
    mpfr_const_euler(euler.get(), MPFR_RNDN);
    std::vector<MpReal> h(static_cast<size_t>(J + 1), MpReal(wp));
    h[0] = mp::log2(wp) + euler;
    if (J >= 1) h[1] = one(wp) / 4L;
    for (int k = 1; 2 * k <= J; ++k)
        h[static_cast<size_t>(2 * k)] = -MpReal(mp::bernoulli(2 * k), wp) / (static_cast<long>(2 * k)) /
                                        pow(MpReal(4, wp), k);
    auto R = series_mul(Q, h, wp);

    auto bern = scaled_bernoulli(std::max<long>(16, wp.value / 4), wp);
    MpReal tail(wp);
    for (int j = 0; j <= J; ++j) {
        auto z = zeta_tail(MpReal(Rational(3 + 2 * j, 2), wp), N, wp, bern, true);
        tail += R[static_cast<size_t>(j)] * z.value - Q[static_cast<size_t>(j)] * z.deriv;
    }
    tail /= sqrt(mp::pi(wp)) * 4L;
    return (sum + tail).rounded(P);
}

}  // namespace polylad::hyper
