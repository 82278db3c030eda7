#pragma once

#include <functional>
#include <vector>

#include "polylad/mp/complex.hpp"
#include "polylad/mp/real.hpp"

namespace polylad::mp {

// pi from the series 8*S_{1,1}(1,0,0,-1,-1,-1,0,0), grouped by period.
MpReal pi(Bits P);

// log 2 = sum 1/(k 2^k).
MpReal log2(Bits P);

// Li_n(z) by its defining series; |z| <= 3/4.
MpComplex polylog(int n, const MpComplex& z, Bits P);
MpReal polylog(int n, const MpReal& x, Bits P);

// Li_n(z) on the principal sheet for any z != 1 (z == 1 gives zeta(n)).
// Uses the series, the inversion formula for |z| >= 4/3 and the log-series
// expansion about z = 1 in between.
MpComplex polylog_any(int n, const MpComplex& z, Bits P);

// Riemann zeta at an integer n >= 2, via the alternating eta series with
// Borwein acceleration.
MpReal zeta(int n, Bits P);

// Hurwitz zeta sum_{k>=0} (k+a)^(-s) for real s > 1, a > 0.
MpReal hurwitz_zeta(const MpReal& s, const MpReal& a, Bits P);

// zeta(s, a) for complex a with Re a > 0 at every integer s in
// [s_min, s_max], s_min >= 2. Shares powers across orders.
std::vector<MpComplex> hurwitz_zeta_batch(const MpComplex& a, int s_min, int s_max, Bits P);

// Dirichlet beta(n) = sum (-1)^k (2k+1)^(-n), n >= 1, accelerated the same way.
MpReal dirichlet_beta(int n, Bits P);

// lambda(n) = (1 - 2^-n) zeta(n), n >= 2.
MpReal dirichlet_lambda(int n, Bits P);

MpComplex gamma(const MpComplex& z, Bits P);
MpReal gamma(const MpReal& x, Bits P);
MpReal beta_fn(const MpReal& a, const MpReal& b, Bits P);

// Exact Bernoulli number B_m, m even with 2 <= m <= 2048. Memoized.
Rational bernoulli(int m);

// Bernoulli polynomial B_m(x) for 0 <= m <= 2048 (B_1 = -1/2 convention).
MpReal bernoulli_poly(int m, const MpReal& x);

using RealFunction = std::function<MpReal(const MpReal&)>;

// Taylor coefficients c_0..c_order of f at 0 from samples on a dyadic grid
// within [-radius, radius]. The interpolation weights are exact rationals;
// f is sampled at precision 2P. `points` of 0 picks max(4*order+1, P/3),
// enough for the truncation error to stay below 2^-(P/2) when f is analytic
// on a disc four times the sampling radius.
std::vector<MpReal> taylor_coeffs(const RealFunction& f, int order, Bits P, const MpReal& radius,
                                  int points = 0);

}  // namespace polylad::mp
