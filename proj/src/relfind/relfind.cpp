#include "polylad/relfind/relfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "polylad/errors.hpp"
#include "polylad/ladders/ladders.hpp"

namespace polylad::relfind {

using mp::log2_abs;

std::string to_string(RelationStatus s) {
    switch (s) {
        case RelationStatus::found: return "found";
        case RelationStatus::none_within_bound: return "none_within_bound";
        case RelationStatus::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

std::vector<BigInt> normalized(std::vector<BigInt> v) {
    BigInt g = 0;
    for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0) return v;
    for (auto& x : v) x /= g;
    auto it = std::find_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; });
    if (it != v.end() && sgn(*it) < 0)
        for (auto& x : v) x = -x;
    return v;
}

MpReal dot(const std::vector<BigInt>& v, const std::vector<MpReal>& x, Bits wp) {
    MpReal s(wp);
    for (size_t i = 0; i < v.size(); ++i) s += x[i] * MpReal(v[i], wp);
    return s;
}

}  // namespace

RelationResult pslq(const RelationQuery& q) {
    const size_t n = q.values.size();
    if (n < 2) throw DomainError("pslq needs at least two values");
    if (q.max_digits < 1) throw DomainError("pslq max_digits must be positive");
    Bits P = q.values[0].precision();
    for (const auto& v : q.values) {
        if (v.is_zero()) throw DomainError("pslq input values must be nonzero");
        P = Bits{std::min(P.value, v.precision().value)};
    }
    // A relation of height 10^D among n values needs about n*D*log2(10) bits to stand out.
    const double needed = static_cast<double>(n) * q.max_digits * std::log2(10.0);
    if (static_cast<double>(P.value) < needed)
        throw PrecisionError("pslq needs at least " + std::to_string(static_cast<long>(std::ceil(needed))) +
                             " bits for " + std::to_string(n) + " values at " + std::to_string(q.max_digits) +
                             " digits");
    const Bits wp = P;
    const MpReal one(1, wp);

    // Normalized input and the initial lower-trapezoidal H.
    std::vector<MpReal> x;
    MpReal norm(wp);
    for (const auto& v : q.values) norm += v * v;
    norm = sqrt(norm);
    for (const auto& v : q.values) x.push_back(v.rounded(wp) / norm);
    std::vector<MpReal> s(n, MpReal(wp));
    {
        MpReal acc(wp);
        for (size_t k = n; k-- > 0;) {
            acc += x[k] * x[k];
            s[k] = sqrt(acc);
        }
    }
    std::vector<std::vector<MpReal>> H(n, std::vector<MpReal>(n - 1, MpReal(wp)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n - 1 && j <= i; ++j) {
            if (i == j) H[i][j] = s[j + 1] / s[j];
            else H[i][j] = -(x[i] * x[j]) / (s[j] * s[j + 1]);
        }
    }
    std::vector<std::vector<BigInt>> A(n, std::vector<BigInt>(n, 0)), B(n, std::vector<BigInt>(n, 0));
    for (size_t i = 0; i < n; ++i) A[i][i] = B[i][i] = 1;
    std::vector<MpReal> y = x;

    auto reduce = [&](size_t row_from) {
        for (size_t i = row_from; i < n; ++i) {
            for (size_t jj = std::min(i, n - 1); jj-- > 0;) {
                const size_t j = jj;
                if (H[j][j].is_zero()) continue;
                BigInt t = (H[i][j] / H[j][j]).to_integer();
                if (t == 0) continue;
                MpReal tr(t, wp);
                y[j] += tr * y[i];
                for (size_t k = 0; k <= j; ++k) H[i][k] -= tr * H[j][k];
                for (size_t k = 0; k < n; ++k) {
                    A[i][k] -= t * A[j][k];
                    B[k][j] += t * B[k][i];
                }
            }
        }
    };
    reduce(1);

    const MpReal gamma = sqrt(MpReal(4, wp) / 3L);
    std::vector<MpReal> gpow(n, MpReal(wp));
    gpow[0] = gamma;
    for (size_t i = 1; i < n; ++i) gpow[i] = gpow[i - 1] * gamma;

    const double detect_exp = -0.75 * static_cast<double>(P.value);
    const double height_log2 = q.max_digits * std::log2(10.0);
    const double bound_target = height_log2 + 0.5 * std::log2(static_cast<double>(n));
    const long a_limit = P.value - 32;

    RelationResult out;
    // A relation shows up as a tiny y entry; the matching column of B is the vector.
    auto detect = [&]() {
        for (size_t j = 0; j < n; ++j) {
            if (!(y[j].is_zero() || log2_abs(y[j]) < detect_exp)) continue;
            std::vector<BigInt> v(n);
            for (size_t k = 0; k < n; ++k) v[k] = B[k][j];
            v = normalized(v);
            out.vector = v;
            out.log2_residual = log2_abs(dot(v, q.values, wp));
            BigInt limit;
            mpz_ui_pow_ui(limit.get_mpz_t(), 10, static_cast<unsigned long>(q.max_digits));
            bool small = std::all_of(v.begin(), v.end(), [&](const BigInt& e) { return abs(e) < limit; });
            bool tight = out.log2_residual < -static_cast<double>(P.value) / 2;
            out.status = (small && tight) ? RelationStatus::found : RelationStatus::inconclusive;
            return true;
        }
        return false;
    };
    // The initial reduction alone can expose a relation whose residual is
    // near the last bit; iterating further would grow it into noise.
    if (detect()) return out;
    for (long it = 1; it <= q.max_iterations; ++it) {
        out.iterations = it;
        // Exchange at the row with the largest weighted diagonal.
        size_t m = 0;
        MpReal best(-1, wp);
        for (size_t i = 0; i < n - 1; ++i) {
            MpReal v = gpow[i] * abs(H[i][i]);
            if (v > best) best = v, m = i;
        }
        std::swap(y[m], y[m + 1]);
        std::swap(A[m], A[m + 1]);
        std::swap(H[m], H[m + 1]);
        for (size_t k = 0; k < n; ++k) std::swap(B[k][m], B[k][m + 1]);
        if (m + 2 < n) {
            MpReal t0 = sqrt(H[m][m] * H[m][m] + H[m][m + 1] * H[m][m + 1]);
            MpReal t1 = H[m][m] / t0, t2 = H[m][m + 1] / t0;
            for (size_t i = m; i < n; ++i) {
                MpReal t3 = H[i][m], t4 = H[i][m + 1];
                H[i][m] = t1 * t3 + t2 * t4;
                H[i][m + 1] = t1 * t4 - t2 * t3;
            }
        }
        reduce(m + 1);

        if (detect()) return out;

        MpReal hmax(wp);
        for (size_t i = 0; i < n - 1; ++i) hmax = std::max(hmax, abs(H[i][i]), [](const MpReal& a, const MpReal& b) {
            return a < b;
        });
        if (hmax.is_zero()) break;
        double bound = -log2_abs(hmax);
        out.log10_norm_bound = bound / std::log2(10.0);
        if (bound > bound_target) {
            out.status = RelationStatus::none_within_bound;
            return out;
        }
        for (const auto& row : A)
            for (const auto& e : row)
                if (static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) > a_limit) {
                    out.status = RelationStatus::inconclusive;
                    return out;
                }
    }
    out.status = RelationStatus::inconclusive;
    return out;
}

CheckReport verify_vector(const std::vector<BigInt>& v, const std::vector<MpReal>& values, Bits P) {
    if (v.size() != values.size()) throw DomainError("verify_vector: length mismatch");
    long maxbits = 0;
    for (const auto& e : v) maxbits = std::max<long>(maxbits, static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)));
    const Bits wp = P + maxbits + 16;
    CheckReport r;
    r.name = "vector";
    r.bits = P.value;
    r.log2_residual = log2_abs(dot(v, values, wp));
    r.pass = r.log2_residual < -static_cast<double>(P.value - 64);
    return r;
}

RelationSystem relation_system(const std::string& name, Bits P) {
    const auto& cat = ladders::default_catalog();
    const auto& spec = cat.relation(name);
    if (spec.components.size() != 1) throw DomainError("relation " + name + " has more than one component");
    ladders::LinearForm f = ladders::compile(spec.components[0], cat);
    BigInt den = 1;
    for (const auto& [atom, c] : f.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.den().get_mpz_t());
    ladders::Evaluator ev(P + 64);
    RelationSystem out;
    for (const auto& [atom, c] : f.terms()) {
        out.vector.push_back(c.num() * (den / c.den()));
        out.values.push_back(ev.atom(atom).rounded(P + 64));
        out.labels.push_back(ladders::to_string(atom));
    }
    return out;
}

std::string result_json(const RelationResult& r) {
    nlohmann::json j;
    j["status"] = to_string(r.status);
    nlohmann::json v = nlohmann::json::array();
    for (const auto& e : r.vector) {
        if (e.fits_slong_p()) v.push_back(e.get_si());
        else v.push_back(e.get_str());
    }
    j["vector"] = v;
    if (r.status == RelationStatus::found && std::isfinite(r.log2_residual))
        j["log2_residual"] = std::round(r.log2_residual * 1000) / 1000;
    else
        j["log2_residual"] = nullptr;
    j["iterations"] = r.iterations;
    return j.dump();
}

}  // namespace polylad::relfind
