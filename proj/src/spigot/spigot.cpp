#include "polylad/spigot/spigot.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>

#include <gmp.h>

#include "polylad/errors.hpp"

namespace polylad::spigot {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

constexpr int kModLimbs = kMaxModulusBits / 64;
constexpr int kMaxAccLimbs = 40;
constexpr int kMaxCLimbs = 16;
constexpr long kBlock = 1L << 16;

// Montgomery arithmetic modulo an odd L-limb number.
template <int L>
struct Mont {
    u64 m[L];
    u64 ninv;  // -m^-1 mod 2^64
    u64 one[L];  // R mod m

    explicit Mont(const u64* mod) {
        std::copy_n(mod, L, m);
        u64 inv = m[0];
        for (int i = 0; i < 6; ++i) inv *= 2 - m[0] * inv;
        ninv = ~inv + 1;
        u64 num[L + 1] = {};
        num[L] = 1;
        u64 q[2];
        mpn_tdiv_qr(q, one, 0, num, L + 1, m, L);
    }

    bool geq_m(const u64* t) const {
        for (int j = L - 1; j >= 0; --j) {
            if (t[j] != m[j]) return t[j] > m[j];
        }
        return true;
    }

    void mul(u64* r, const u64* a, const u64* b) const {
        u64 t[L + 2] = {};
        for (int i = 0; i < L; ++i) {
            u128 c = 0;
            for (int j = 0; j < L; ++j) {
                c = static_cast<u128>(a[j]) * b[i] + t[j] + (c >> 64);
                t[j] = static_cast<u64>(c);
            }
            c = static_cast<u128>(t[L]) + (c >> 64);
            t[L] = static_cast<u64>(c);
            t[L + 1] = static_cast<u64>(c >> 64);
            const u64 mq = t[0] * ninv;
            c = static_cast<u128>(mq) * m[0] + t[0];
            for (int j = 1; j < L; ++j) {
                c = static_cast<u128>(mq) * m[j] + t[j] + (c >> 64);
                t[j - 1] = static_cast<u64>(c);
            }
            c = static_cast<u128>(t[L]) + (c >> 64);
            t[L - 1] = static_cast<u64>(c);
            t[L] = t[L + 1] + static_cast<u64>(c >> 64);
        }
        if (t[L] != 0 || geq_m(t)) mpn_sub_n(t, t, m, L);
        std::copy_n(t, L, r);
    }

    void dbl(u64* x) const {
        const u64 carry = mpn_lshift(x, x, L, 1);
        if (carry || geq_m(x)) mpn_sub_n(x, x, m, L);
    }

    // 2^e mod m in ordinary representation.
    void pow2(u64* r, u64 e) const {
        u64 x[L];
        std::copy_n(one, L, x);
        if (e) {
            int top = 63 - __builtin_clzll(e);
            for (int b = top; b >= 0; --b) {
                mul(x, x, x);
                if ((e >> b) & 1) dbl(x);
            }
        }
        u64 unit[L] = {};
        unit[0] = 1;
        mul(r, x, unit);
    }
};

// Per-term data shared by all workers.
struct Plan {
    int n = 1, p = 1;
    long shift = 0;
    int acc_limbs = 0;
    long kmax = 0;
    u64 v[kModLimbs] = {};  // odd part of the multiplier denominator
    int v_limbs = 0;
    // |u * a_r| and its sign for the eight residues.
    std::array<std::array<u64, kMaxCLimbs>, 8> c{};
    std::array<int, 8> c_limbs{};
    std::array<int, 8> c_sign{};
};

struct Worker {
    u64 acc[kMaxAccLimbs] = {};
    u64 terms = 0;
};

void add_signed(Worker& w, const u64* q, int limbs, int sign) {
    if (sign > 0) mpn_add_n(w.acc, w.acc, q, limbs);
    else mpn_sub_n(w.acc, w.acc, q, limbs);
}

// M = v * k'^n with k' the odd part of k; returns limb count, 0 on overflow.
int modulus(const Plan& plan, u64 kodd, u64* M) {
    u64 buf[kModLimbs + 1] = {};
    std::copy_n(plan.v, plan.v_limbs, buf);
    int len = plan.v_limbs;
    for (int i = 0; i < plan.n; ++i) {
        const u64 carry = mpn_mul_1(buf, buf, len, kodd);
        if (carry) {
            if (len == kModLimbs) return 0;
            buf[len++] = carry;
        }
    }
    std::copy_n(buf, len, M);
    return len;
}

template <int L>
void head_term(const Plan& plan, const u64* M, long e, int r, Worker& w) {
    const Mont<L> mont(M);
    u64 pw[L];
    mont.pow2(pw, static_cast<u64>(e));
    // c mod M
    u64 cm[L] = {};
    const int cl = plan.c_limbs[static_cast<size_t>(r)];
    const u64* c = plan.c[static_cast<size_t>(r)].data();
    if (cl >= L) {
        u64 q[kMaxCLimbs];
        mpn_tdiv_qr(q, cm, 0, c, cl, M, L);
    } else {
        std::copy_n(c, cl, cm);
    }
    u64 prod[2 * L];
    mpn_mul_n(prod, pw, cm, L);
    u64 N[L], q[2 * L];
    mpn_tdiv_qr(q, N, 0, prod, 2 * L, M, L);
    // floor(N 2^acc / M)
    u64 num[kMaxAccLimbs + L] = {};
    std::copy_n(N, L, num + plan.acc_limbs);
    u64 frac[kMaxAccLimbs + 1], rem[L];
    mpn_tdiv_qr(frac, rem, 0, num, plan.acc_limbs + L, M, L);
    add_signed(w, frac, plan.acc_limbs, plan.c_sign[static_cast<size_t>(r)]);
}

// e < 0: add floor(c 2^(acc + e) / M) directly.
void tail_term(const Plan& plan, const u64* M, int L, long e, int r, Worker& w) {
    const long sh = 64L * plan.acc_limbs + e;
    if (sh < 0) return;
    const int cl = plan.c_limbs[static_cast<size_t>(r)];
    u64 num[kMaxAccLimbs + kMaxCLimbs + 2] = {};
    const long limb_shift = sh / 64;
    const unsigned bit_shift = static_cast<unsigned>(sh % 64);
    const u64* c = plan.c[static_cast<size_t>(r)].data();
    int nl = cl + static_cast<int>(limb_shift);
    if (bit_shift) {
        num[nl] = mpn_lshift(num + limb_shift, c, cl, bit_shift);
        ++nl;
    } else {
        std::copy_n(c, cl, num + limb_shift);
    }
    while (nl > 0 && num[nl - 1] == 0) --nl;
    if (nl < L) return;  // quotient is zero
    u64 q[kMaxAccLimbs + kMaxCLimbs + 2] = {}, rem[kModLimbs];
    mpn_tdiv_qr(q, rem, 0, num, nl, M, L);
    add_signed(w, q, plan.acc_limbs, plan.c_sign[static_cast<size_t>(r)]);
}

void run_range(const Plan& plan, long k0, long k1, Worker& w) {
    u64 M[kModLimbs];
    for (long k = k0; k < k1; ++k) {
        const int r = static_cast<int>((k - 1) % 8);
        if (plan.c_limbs[static_cast<size_t>(r)] == 0) continue;
        const int t = __builtin_ctzll(static_cast<u64>(k));
        const u64 kodd = static_cast<u64>(k) >> t;
        const int L = modulus(plan, kodd, M);
        if (L == 0) throw OverflowError("modulus exceeds " + std::to_string(kMaxModulusBits) + " bits");
        const long e = plan.shift - (plan.p * k + plan.p) / 2 - static_cast<long>(t) * plan.n;
        ++w.terms;
        if (e < 0) {
            tail_term(plan, M, L, e, r, w);
        } else if (L == 1) {
            head_term<1>(plan, M, e, r, w);
        } else if (L == 2) {
            head_term<2>(plan, M, e, r, w);
        } else {
            head_term<3>(plan, M, e, r, w);
        }
    }
}

void to_limbs(const mp::BigInt& x, u64* out, int max_limbs, int& len) {
    const size_t n = mpz_size(x.get_mpz_t());
    if (static_cast<int>(n) > max_limbs) throw OverflowError("coefficient too wide for the spigot");
    for (size_t i = 0; i < n; ++i) out[i] = mpz_getlimbn(x.get_mpz_t(), static_cast<mp_size_t>(i));
    len = static_cast<int>(n);
}

}  // namespace

MpReal FixedFrac::to_real() const {
    mp::BigInt x;
    mpz_import(x.get_mpz_t(), limbs.size(), -1, sizeof(u64), 0, 0, limbs.data());
    return mp::ldexp(MpReal(x, Bits{bits() + 8}), -bits());
}

std::string FixedFrac::hex(int count) const {
    static const char* digits = "0123456789ABCDEF";
    std::string s;
    for (int i = 0; i < count; ++i) {
        const long bit = bits() - 4L * (i + 1);
        const u64 limb = limbs[static_cast<size_t>(bit / 64)];
        s += digits[(limb >> (bit % 64)) & 0xF];
    }
    return s;
}

FixedFrac frac_term_sum(const SeriesSpec& spec, const Rational& multiplier, long shift, long acc_bits, int threads) {
    const int acc_limbs = static_cast<int>((acc_bits + 63) / 64);
    if (acc_limbs > kMaxAccLimbs) throw OverflowError("accumulator wider than supported");
    FixedFrac out;
    out.limbs.assign(static_cast<size_t>(acc_limbs), 0);
    if (spec.pattern.is_zero() || multiplier.is_zero()) return out;

    Plan plan;
    plan.n = spec.n;
    plan.p = spec.p;
    plan.acc_limbs = acc_limbs;
    mp::BigInt u = multiplier.num(), v = multiplier.den();
    const long tu = static_cast<long>(mpz_scan1(u.get_mpz_t(), 0));
    const long tv = static_cast<long>(mpz_scan1(v.get_mpz_t(), 0));
    u >>= static_cast<mp_bitcnt_t>(tu);
    v >>= static_cast<mp_bitcnt_t>(tv);
    plan.shift = shift + tu - tv;
    to_limbs(v, plan.v, kModLimbs, plan.v_limbs);
    long cbits = 0;
    for (size_t r = 0; r < 8; ++r) {
        mp::BigInt c = u * spec.pattern.a[r];
        plan.c_sign[r] = sgn(c);
        c = abs(c);
        to_limbs(c, plan.c[r].data(), kMaxCLimbs, plan.c_limbs[r]);
        cbits = std::max<long>(cbits, static_cast<long>(mpz_sizeinbase(c.get_mpz_t(), 2)));
    }
    // Beyond kmax every term is below 2^-(acc+8).
    plan.kmax = (2 * (plan.shift + 64L * acc_limbs + cbits + 10)) / spec.p + 2;
    if (plan.kmax < 1) return out;

    const long nblocks = (plan.kmax + kBlock - 1) / kBlock;
    const int nthreads = static_cast<int>(std::max<long>(1, std::min<long>(threads, nblocks)));
    std::vector<Worker> workers(static_cast<size_t>(nthreads));
    if (nthreads == 1) {
        run_range(plan, 1, plan.kmax + 1, workers[0]);
    } else {
        std::atomic<long> next{0};
        std::exception_ptr failure;
        std::mutex failure_mu;
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (long b = next++; b < nblocks; b = next++) {
                        const long k0 = 1 + b * kBlock;
                        run_range(plan, k0, std::min(plan.kmax + 1, k0 + kBlock), workers[static_cast<size_t>(t)]);
                    }
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mu);
                    failure = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }
    for (const auto& w : workers) {
        mpn_add_n(out.limbs.data(), out.limbs.data(), w.acc, acc_limbs);
        out.error_ulps += w.terms;
    }
    return out;
}

namespace {

// The window is safe when the accumulated error cannot carry into it and the
// bits just below it are not a run of 0s or Fs.
bool guard_ok(const FixedFrac& x, int count) {
    mp::BigInt all;
    mpz_import(all.get_mpz_t(), x.limbs.size(), -1, sizeof(u64), 0, 0, x.limbs.data());
    const long g = x.bits() - 4L * count;
    mp::BigInt low, span;
    mpz_fdiv_r_2exp(low.get_mpz_t(), all.get_mpz_t(), static_cast<mp_bitcnt_t>(g));
    mpz_setbit(span.get_mpz_t(), static_cast<mp_bitcnt_t>(g));
    const mp::BigInt err(std::to_string(x.error_ulps + 1));
    if (low <= err || low >= span - err) return false;
    mp::BigInt top = low >> static_cast<mp_bitcnt_t>(g - 32);
    return top != 0 && top != 0xFFFFFFFFUL;
}

}  // namespace

DigitRun hex_digits(const series::Formula& formula, const DigitRequest& req) {
    if (req.position < 1) throw DomainError("position must be >= 1");
    if (req.count < 1 || req.count > 64) throw DomainError("count must be in 1..64");
    if (req.position + req.count > kMaxPosition) throw DomainError("position exceeds 2^40");
    if (req.guard_bits < 32) throw DomainError("guard_bits must be >= 32");
    DigitRun run;
    run.position = req.position;
    long guard = req.guard_bits;
    for (int attempt = 0; attempt <= 3; ++attempt) {
        const long acc_bits = 4L * req.count + guard;
        FixedFrac total;
        total.limbs.assign(static_cast<size_t>((acc_bits + 63) / 64), 0);
        for (const auto& t : formula.terms) {
            FixedFrac part =
                frac_term_sum(t.spec, formula.scale * t.coef, 4 * (req.position - 1), acc_bits, req.threads);
            mpn_add_n(total.limbs.data(), total.limbs.data(), part.limbs.data(),
                      static_cast<mp_size_t>(total.limbs.size()));
            total.error_ulps += part.error_ulps;
        }
        if (guard_ok(total, req.count)) {
            run.digits = total.hex(req.count);
            run.guard_ok = true;
            run.retries = attempt;
            return run;
        }
        guard *= 2;
    }
    throw GuardExhausted("digit window at position " + std::to_string(req.position) +
                         " stays ambiguous after 3 retries");
}

DigitRun hex_digits(const DigitRequest& req) { return hex_digits(series::find_formula(req.formula), req); }

std::string oracle_digits(const MpReal& value, long d, int count) {
    MpReal x = mp::frac(mp::ldexp(value, 4 * (d - 1)));
    mp::BigInt window = mp::floor(mp::ldexp(x, 4L * count)).to_integer();
    std::string s = window.get_str(16);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    return std::string(static_cast<size_t>(count) - s.size(), '0') + s;
}

bool self_check(const std::string& formula, long d, int count) {
    if (d > 100000) throw DomainError("self_check needs d <= 1e5");
    const DigitRun run = hex_digits(DigitRequest{formula, d, count});
    const MpReal value = series::eval_formula(formula, Bits{4 * (d + count) + 64});
    if (run.digits != oracle_digits(value, d, count)) return false;
    if (d > 1 && count < 64) {
        const DigitRun earlier = hex_digits(DigitRequest{formula, d - 1, count + 1});
        if (earlier.digits.substr(1) != run.digits) return false;
    }
    return true;
}

}  // namespace polylad::spigot
