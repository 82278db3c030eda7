#include "polylad/mp/functions.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "polylad/errors.hpp"

namespace polylad::mp {

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

long bit_length(unsigned long v) {
    long b = 0;
    while (v) {
        ++b;
        v >>= 1;
    }
    return b;
}

MpReal one(Bits prec) { return MpReal(1, prec); }

// B_{2i}/(2i)! for i = 1..count, at precision wp.
std::vector<MpReal> scaled_bernoulli(int count, Bits wp) {
    std::vector<MpReal> out;
    out.reserve(static_cast<size_t>(count));
    MpReal inv_fact = one(wp);
    for (int i = 1; i <= count; ++i) {
        inv_fact /= static_cast<long>((2 * i - 1) * (2 * i));
        out.push_back(MpReal(bernoulli(2 * i), wp) * inv_fact);
    }
    return out;
}

// Euler-Maclaurin tail sum_{k>=0} (x+k)^(-s) for real s, large x.
MpReal em_tail(const MpReal& s, const MpReal& x, Bits wp) {
    MpReal xs = pow(x, -s);  // x^-s
    MpReal sum = xs * x / (s - 1) + ldexp(xs, -1);
    MpReal fac = s * xs / x;  // (s)_1 x^(-s-1)
    MpReal inv_x2 = one(wp) / (x * x);
    MpReal cutoff = ldexp(abs(sum), -wp.value);
    int limit = 1024;
    MpReal inv_fact = one(wp);
    for (int i = 1; i <= limit; ++i) {
        inv_fact /= static_cast<long>((2 * i - 1) * (2 * i));
        MpReal term = MpReal(bernoulli(2 * i), wp) * inv_fact * fac;
        sum += term;
        if (abs(term) < cutoff) return sum;
        fac *= (s + (2 * i - 1)) * (s + 2 * i) * inv_x2;
    }
    throw DomainError("Euler-Maclaurin tail did not converge");
}

// Spouge coefficients c_0..c_{a-1} at precision wp.
std::vector<MpReal> spouge_coefficients(long a, Bits wp) {
    std::vector<MpReal> c;
    c.reserve(static_cast<size_t>(a));
    c.push_back(sqrt(ldexp(pi(wp), 1)));
    MpReal inv_fact = one(wp);  // 1/(k-1)!
    for (long k = 1; k < a; ++k) {
        if (k > 1) inv_fact /= (k - 1);
        MpReal ak(a - k, wp);
        MpReal e = exp(log(ak) * MpReal(Rational(2 * k - 1, 2), wp) + ak);
        MpReal ck = e * inv_fact;
        if (k % 2 == 0) ck = -ck;
        c.push_back(std::move(ck));
    }
    return c;
}

long spouge_parameter(Bits P) {
    return static_cast<long>(std::ceil(static_cast<double>(P.value + 16) / std::log2(2 * M_PI))) + 1;
}

bool is_nonpositive_integer(const MpReal& x) {
    return x.sign() <= 0 && mpfr_integer_p(x.get());
}

// Complex Bernoulli polynomial B_n(w).
MpComplex bernoulli_poly_complex(int n, const MpComplex& w) {
    Bits wp = w.precision();
    MpComplex acc(wp);
    MpComplex wpow(one(wp));  // w^(n-k), built from k = n downwards
    for (int k = n; k >= 0; --k) {
        Rational bk = k == 0 ? Rational(1) : (k == 1 ? Rational(-1, 2) : (k % 2 ? Rational(0) : bernoulli(k)));
        if (!bk.is_zero()) {
            BigInt binom;
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
            acc += wpow * (bk * Rational(binom));
        }
        wpow *= w;
    }
    return acc;
}

// sum_{k>=0} (-1)^k / (a k + b)^n by Borwein's acceleration with exact
// integer weights d_k; the error is below 3 (3+sqrt8)^-m times the first term.
MpReal alternating_power_sum(long a, long b, int n, Bits wp) {
    const long m = static_cast<long>(std::ceil((wp.value + 4) / std::log2(3 + std::sqrt(8.0)))) + 1;
    std::vector<BigInt> d(static_cast<size_t>(m) + 1);
    BigInt t = 1, acc = 1;
    d[0] = 1;
    for (long i = 0; i < m; ++i) {
        mpz_mul_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(2 * (m + i) * (m - i)));
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>((2 * i + 1) * (i + 1)));
        acc += t;
        d[static_cast<size_t>(i) + 1] = acc;
    }
    const BigInt& dm = d[static_cast<size_t>(m)];
    MpReal sum(wp), pw(wp);
    for (long k = m - 1; k >= 0; --k) {
        mpfr_ui_pow_ui(pw.get(), static_cast<unsigned long>(a * k + b), static_cast<unsigned long>(n), kRnd);
        MpReal term = MpReal(BigInt(dm - d[static_cast<size_t>(k)]), wp) / pw;
        if (k % 2) sum -= term;
        else sum += term;
    }
    return sum / MpReal(dm, wp);
}

}  // namespace

MpReal zeta(int n, Bits P) {
    if (n < 2) throw DomainError("zeta needs n >= 2");
    Bits wp = P + 32;
    MpReal eta = alternating_power_sum(1, 1, n, wp);
    return (eta / (one(wp) - ldexp(one(wp), 1 - n))).rounded(P);
}

MpReal pi(Bits P) {
    if (P.value < 32) throw DomainError("pi needs P >= 32");
    Bits wp = P + 16;
    long terms = (P.value + 3) / 4 + 8;
    MpReal sum(wp), t(wp), u(wp);
    for (long k = 0; k < terms; ++k) {
        unsigned long b = 8 * static_cast<unsigned long>(k);
        mpfr_set_ui(t.get(), 4, kRnd);
        mpfr_div_ui(t.get(), t.get(), b + 1, kRnd);
        const unsigned long nums[3] = {2, 1, 1};
        const unsigned long dens[3] = {b + 4, b + 5, b + 6};
        for (int i = 0; i < 3; ++i) {
            mpfr_set_ui(u.get(), nums[i], kRnd);
            mpfr_div_ui(u.get(), u.get(), dens[i], kRnd);
            t -= u;
        }
        mpfr_mul_2si(t.get(), t.get(), -4 * k, kRnd);
        sum += t;
    }
    return sum.rounded(P);
}

MpReal log2(Bits P) {
    if (P.value < 32) throw DomainError("log2 needs P >= 32");
    Bits wp = P + 16 + bit_length(static_cast<unsigned long>(P.value));
    MpReal sum(wp), t(wp);
    for (long k = 1; k <= P.value + 16; ++k) {
        mpfr_set_ui(t.get(), 1, kRnd);
        mpfr_div_ui(t.get(), t.get(), static_cast<unsigned long>(k), kRnd);
        mpfr_mul_2si(t.get(), t.get(), -k, kRnd);
        sum += t;
    }
    return sum.rounded(P);
}

MpComplex polylog(int n, const MpComplex& z, Bits P) {
    if (n < 1) throw DomainError("polylog order must be >= 1");
    double r = abs(z).to_double();
    if (r > 0.75 * (1 + 1e-15)) throw DomainError("polylog series needs |z| <= 3/4");
    if (r == 0) return MpComplex(P);
    long terms = static_cast<long>(std::ceil((P.value + 8 + std::log2(1 / (1 - r))) / -std::log2(r)));
    Bits wp = P + 32 + bit_length(static_cast<unsigned long>(terms));
    bool real = z.is_real();
    MpComplex zz = z.rounded(wp);
    MpReal sre(wp), sim(wp), tre(wp), tim(wp);
    MpReal pre = zz.re(), pim = zz.im();  // z^k
    BigInt kn;
    for (long k = 1; k <= terms; ++k) {
        mpz_ui_pow_ui(kn.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(n));
        mpfr_div_z(tre.get(), pre.get(), kn.get_mpz_t(), kRnd);
        sre += tre;
        if (!real) {
            mpfr_div_z(tim.get(), pim.get(), kn.get_mpz_t(), kRnd);
            sim += tim;
        }
        if (k == terms) break;
        if (real) {
            pre *= zz.re();
        } else {
            MpReal nre = pre * zz.re() - pim * zz.im();
            pim = pre * zz.im() + pim * zz.re();
            pre = std::move(nre);
        }
    }
    return MpComplex(sre, sim).rounded(P);
}

MpReal polylog(int n, const MpReal& x, Bits P) { return polylog(n, MpComplex(x), P).re(); }

MpComplex polylog_any(int n, const MpComplex& z, Bits P) {
    if (n < 1) throw DomainError("polylog order must be >= 1");
    double r = abs(z).to_double();
    if (r <= 0.75) return polylog(n, z, P);
    Bits wp = P + 32;
    MpComplex zz = z.rounded(wp);
    if (zz.is_real() && zz.re() == 1) {
        if (n == 1) throw PoleError("Li_1 has a pole at 1");
        return MpComplex(zeta(n, P));
    }
    MpReal two_pi = ldexp(pi(wp), 1);
    if (r >= 4.0 / 3.0) {
        // Li_n(z) = -(-1)^n Li_n(1/z) - (2 pi i)^n / n! * B_n(1/2 + log(-z)/(2 pi i))
        MpComplex inv = MpComplex(one(wp)) / zz;
        MpComplex li = polylog(n, inv, wp);
        if (n % 2 == 0) li = -li;
        MpComplex two_pi_i(MpReal(wp), two_pi);
        MpComplex w = log(-zz) / two_pi_i;
        w = w + MpReal(Rational(1, 2), wp);
        MpComplex corr = pow(two_pi_i, n) * bernoulli_poly_complex(n, w);
        BigInt nf;
        mpz_fac_ui(nf.get_mpz_t(), static_cast<unsigned long>(n));
        corr /= MpReal(nf, wp);
        return (li - corr).rounded(P);
    }
    // Expansion in mu = log z about z = 1.
    MpComplex mu = log(zz);
    double mu_abs = abs(mu).to_double();
    MpComplex sum(wp);
    MpComplex mk(one(wp));  // mu^k / k!
    MpReal cutoff = ldexp(one(wp), -(P.value + 24));
    int small_run = 0;
    for (int k = 0;; ++k) {
        if (k > 0) {
            mk *= mu;
            mk /= static_cast<long>(k);
        }
        if (k == n - 1) {
            MpReal h(wp);  // harmonic number H_{n-1}
            for (int j = 1; j <= n - 1; ++j) h += MpReal(Rational(1, j), wp);
            sum += mk * (MpComplex(h) - log(-mu));
            continue;
        }
        int s = n - k;
        MpReal zv(wp);
        if (s >= 2) {
            zv = zeta(s, wp);
        } else if (s == 0) {  // s == 1 is k == n-1, handled above
            zv = MpReal(Rational(-1, 2), wp);
        } else {
            int m = -s;  // zeta(-m) = -B_{m+1}/(m+1)
            if ((m + 1) % 2 == 1) {
                zv = MpReal(wp);
            } else {
                if (m + 1 > 2048) throw DomainError("polylog_any: expansion too long");
                zv = MpReal(-bernoulli(m + 1) / Rational(m + 1), wp);
            }
        }
        if (!zv.is_zero()) {
            MpComplex term = mk * zv;
            sum += term;
            if (k > n && abs(term) < cutoff) {
                if (++small_run >= 4) break;
            } else {
                small_run = 0;
            }
        } else if (k > n && mu_abs < 1e-300) {
            break;
        }
    }
    return sum.rounded(P);
}

MpReal hurwitz_zeta(const MpReal& s, const MpReal& a, Bits P) {
    if (!(s > 1)) throw DomainError("hurwitz_zeta needs s > 1");
    if (!(a > 0)) throw DomainError("hurwitz_zeta needs a > 0");
    Bits wp = P + 32;
    double x_min = static_cast<double>(P.value) / 2 + std::fabs(s.to_double()) + 8;
    MpReal x = a.rounded(wp);
    MpReal ss = s.rounded(wp);
    MpReal sum(wp);
    bool int_s = mpfr_integer_p(ss.get()) && mpfr_fits_slong_p(ss.get(), kRnd);
    long si = int_s ? mpfr_get_si(ss.get(), kRnd) : 0;
    while (x.to_double() < x_min) {
        sum += int_s ? pow(x, -si) : pow(x, -ss);
        x += 1;
    }
    sum += em_tail(ss, x, wp);
    return sum.rounded(P);
}

std::vector<MpComplex> hurwitz_zeta_batch(const MpComplex& a, int s_min, int s_max, Bits P) {
    if (s_min < 2 || s_max < s_min) throw DomainError("hurwitz_zeta_batch: bad order range");
    if (!(a.re() > 0)) throw DomainError("hurwitz_zeta_batch needs Re a > 0");
    Bits wp = P + 32;
    const int count = s_max - s_min + 1;
    std::vector<MpComplex> out(static_cast<size_t>(count), MpComplex(wp));
    double x_min = static_cast<double>(P.value) / 2 + s_max + 8;
    MpComplex x = a.rounded(wp);
    MpComplex one_c(one(wp));
    while (abs(x).to_double() < x_min) {
        MpComplex u = one_c / x;
        MpComplex pw = pow(u, s_min);
        for (int j = 0; j < count; ++j) {
            out[static_cast<size_t>(j)] += pw;
            pw *= u;
        }
        x = x + 1L;
    }
    // Euler-Maclaurin at x for every order.
    MpComplex u = one_c / x;
    MpComplex u2 = u * u;
    const int max_terms = 1024;
    std::vector<MpReal> bern;
    MpReal cutoff = ldexp(one(wp), -(wp.value + 8));
    MpComplex xs = pow(u, s_min);  // x^-s
    for (int j = 0; j < count; ++j) {
        int s = s_min + j;
        MpComplex acc = xs * x / MpReal(s - 1, wp) + xs * MpReal(Rational(1, 2), wp);
        MpComplex fac = xs * u * MpReal(s, wp);  // (s)_1 x^(-s-1)
        for (int i = 1; i <= max_terms; ++i) {
            if (static_cast<int>(bern.size()) < i) bern = scaled_bernoulli(std::min(2 * i + 8, max_terms), wp);
            MpComplex term = fac * bern[static_cast<size_t>(i - 1)];
            acc += term;
            if (abs(term) < cutoff * abs(acc)) break;
            if (i == max_terms) throw DomainError("hurwitz_zeta_batch did not converge");
            fac *= u2;
            fac *= static_cast<long>((s + 2 * i - 1)) * static_cast<long>(s + 2 * i);
        }
        out[static_cast<size_t>(j)] += acc;
        xs *= u;
    }
    for (auto& v : out) v = v.rounded(P);
    return out;
}

MpReal dirichlet_beta(int n, Bits P) {
    if (n < 1) throw DomainError("beta needs n >= 1");
    Bits wp = P + 32;
    if (n == 1) return ldexp(pi(wp), -2).rounded(P);
    return alternating_power_sum(2, 1, n, wp).rounded(P);
}

MpReal dirichlet_lambda(int n, Bits P) {
    Bits wp = P + 16;
    MpReal z = zeta(n, wp);
    return (z - ldexp(z, -n)).rounded(P);
}

MpReal gamma(const MpReal& x, Bits P) {
    if (is_nonpositive_integer(x)) throw PoleError("gamma pole at " + x.to_string(20));
    Bits wp = Bits{2 * P.value + 64};
    MpReal xx = x.rounded(wp);
    if (xx < MpReal(Rational(1, 2), wp)) {
        MpReal p = pi(wp);
        MpReal s = sin(p * xx);
        return (p / (s * gamma(1L - xx, wp))).rounded(P);
    }
    long a = spouge_parameter(P);
    auto c = spouge_coefficients(a, wp);
    MpReal w = xx - 1L;
    MpReal sum = c[0];
    for (long k = 1; k < a; ++k) sum += c[static_cast<size_t>(k)] / (w + k);
    MpReal wa = w + a;
    MpReal r = exp(log(wa) * (w + MpReal(Rational(1, 2), wp)) - wa) * sum;
    return r.rounded(P);
}

MpComplex gamma(const MpComplex& z, Bits P) {
    if (z.is_real()) return MpComplex(gamma(z.re(), P));
    Bits wp = Bits{2 * P.value + 64};
    MpComplex zz = z.rounded(wp);
    if (zz.re() < MpReal(Rational(1, 2), wp)) {
        MpReal p = pi(wp);
        MpComplex s = sin(zz * p);
        return (MpComplex(p) / (s * gamma(1L - zz, wp))).rounded(P);
    }
    long a = spouge_parameter(P);
    auto c = spouge_coefficients(a, wp);
    MpComplex w = zz - MpReal(1, wp);
    MpComplex sum(c[0]);
    for (long k = 1; k < a; ++k) sum += MpComplex(c[static_cast<size_t>(k)]) / (w + k);
    MpComplex wa = w + a;
    MpComplex r = exp(log(wa) * (w + MpReal(Rational(1, 2), wp)) - wa) * sum;
    return r.rounded(P);
}

MpReal beta_fn(const MpReal& a, const MpReal& b, Bits P) {
    Bits wp = P + 16;
    MpReal aa = a.rounded(wp), bb = b.rounded(wp);
    return (gamma(aa, wp) * gamma(bb, wp) / gamma(aa + bb, wp)).rounded(P);
}

Rational bernoulli(int m) {
    if (m < 2 || m > 2048 || m % 2 != 0) {
        throw DomainError("bernoulli needs even m in [2, 2048], got " + std::to_string(m));
    }
    static std::mutex mutex;
    static std::vector<Rational> table;  // table[i] = B_{2i+2}
    const size_t want = static_cast<size_t>(m / 2);
    std::lock_guard<std::mutex> lock(mutex);
    if (table.size() < want) {
        // Tangent numbers T_1..T_N by the integer recurrence, then
        // B_{2k} = (-1)^(k-1) 2k T_k / (4^k (4^k - 1)).
        const size_t n = std::max(want, std::min<size_t>(1024, 2 * table.size() + 16));
        std::vector<BigInt> t(n + 1);
        t[1] = 1;
        for (size_t k = 2; k <= n; ++k) t[k] = t[k - 1] * static_cast<unsigned long>(k - 1);
        for (size_t k = 2; k <= n; ++k) {
            for (size_t j = k; j <= n; ++j) {
                t[j] = t[j - 1] * static_cast<unsigned long>(j - k) + t[j] * static_cast<unsigned long>(j - k + 2);
            }
        }
        std::vector<Rational> fresh;
        fresh.reserve(n);
        for (size_t k = 1; k <= n; ++k) {
            BigInt four_k = BigInt(1) << static_cast<mp_bitcnt_t>(2 * k);
            BigInt num = t[k] * static_cast<unsigned long>(2 * k);
            if (k % 2 == 0) num = -num;
            fresh.emplace_back(num, four_k * (four_k - 1));
        }
        // Insert-once: earlier entries are never replaced.
        for (size_t i = table.size(); i < fresh.size(); ++i) table.push_back(fresh[i]);
    }
    return table[want - 1];
}

MpReal bernoulli_poly(int m, const MpReal& x) {
    if (m < 0 || m > 2048) throw DomainError("bernoulli_poly order out of range");
    Bits wp = x.precision();
    MpReal acc(wp);
    MpReal xpow = one(wp);
    for (int k = m; k >= 0; --k) {
        Rational bk = k == 0 ? Rational(1) : (k == 1 ? Rational(-1, 2) : (k % 2 ? Rational(0) : bernoulli(k)));
        if (!bk.is_zero()) {
            BigInt binom;
            mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(k));
            acc += xpow * (bk * Rational(binom));
        }
        xpow *= x;
    }
    return acc;
}

std::vector<MpReal> taylor_coeffs(const RealFunction& f, int order, Bits P, const MpReal& radius, int points) {
    if (order < 0 || order > 12) throw DomainError("taylor_coeffs order must be in [0, 12]");
    if (points == 0) points = std::max(4 * order + 1, static_cast<int>(P.value / 3));
    if (points < 2 * order + 1) throw DomainError("taylor_coeffs needs >= 2*order+1 points");
    if (points % 2 == 0) ++points;
    const int deg = points - 1;
    const int half = deg / 2;
    Bits wp = Bits{2 * P.value};

    // Q(u) = prod (u - u_i) over integer nodes u_i = -half..half.
    std::vector<BigInt> q{BigInt(1)};
    for (int i = -half; i <= half; ++i) {
        std::vector<BigInt> next(q.size() + 1);
        for (size_t k = 0; k < q.size(); ++k) {
            next[k + 1] += q[k];
            next[k] -= q[k] * i;
        }
        q = std::move(next);
    }

    MpReal h = radius.rounded(wp) / static_cast<long>(half);
    double log2_h = log2_abs(h);
    std::vector<MpReal> coeffs(static_cast<size_t>(order + 1), MpReal(wp));
    std::vector<double> weight_norm(static_cast<size_t>(order + 1), 0.0);
    for (int j = -half; j <= half; ++j) {
        // N_j(u) = Q(u)/(u - u_j) by synthetic division; d_j = N_j(u_j).
        std::vector<BigInt> nj(static_cast<size_t>(deg + 1));
        BigInt carry = 0;
        for (int k = deg + 1; k >= 1; --k) {
            carry = q[static_cast<size_t>(k)] + carry * j;
            nj[static_cast<size_t>(k - 1)] = carry;
        }
        BigInt dj = 0;
        for (int k = deg; k >= 0; --k) dj = dj * j + nj[static_cast<size_t>(k)];
        MpReal x = h * static_cast<long>(j);
        MpReal fx = f(x).rounded(wp);
        for (int k = 0; k <= order; ++k) {
            Rational w(nj[static_cast<size_t>(k)], dj);
            coeffs[static_cast<size_t>(k)] += fx * w;
            weight_norm[static_cast<size_t>(k)] += std::fabs(mpq_get_d(w.raw().get_mpq_t()));
        }
    }
    for (int k = 0; k <= order; ++k) {
        double loss = std::log2(std::max(weight_norm[static_cast<size_t>(k)], 1e-300)) - k * log2_h;
        if (loss > static_cast<double>(P.value) / 2) {
            throw IllConditionedError("taylor_coeffs loses " + std::to_string(loss) + " bits at order " +
                                      std::to_string(k));
        }
        coeffs[static_cast<size_t>(k)] = (coeffs[static_cast<size_t>(k)] / pow(h, k)).rounded(P);
    }
    return coeffs;
}

}  // namespace polylad::mp
