#pragma once

#include "qseries/polyq.hpp"

namespace qseries::qcore {

using polyq::BigInt;
using polyq::HalfInt;
using polyq::LaurentPoly;

// The working base is q^step; step is a nonzero half-integer.
struct BaseStep {
    HalfInt step;
    explicit BaseStep(HalfInt s) : step(s) {
        if (s.is_zero()) throw InvalidParameter("BaseStep with zero step");
    }
    static BaseStep q() { return BaseStep(HalfInt(1)); }
    static BaseStep q2() { return BaseStep(HalfInt(2)); }
};

// [n]_b = 1 + q^b + ... + q^{b(n-1)}; [0] = 0.
LaurentPoly q_int(long long n, BaseStep b = BaseStep::q());

// [n]_b! = [1][2]...[n]; [0]! = 1.
LaurentPoly q_factorial(long long n, BaseStep b = BaseStep::q());

// Gaussian binomial; zero when k < 0, n < 0 or k > n.  Memoized behind a lock;
// cached results are identical to the uncached path.
LaurentPoly q_binomial(long long n, long long k, BaseStep b = BaseStep::q());

// (a; Q)_len with a = a_coeff*q^{a_exp}, Q = q^{step_exp}; a_coeff is +1 or -1.
LaurentPoly poch(int a_coeff, HalfInt a_exp, HalfInt step_exp, long long len);

// Rising product (u + v)(u + qv)...(u + q^{len-1}v) for scalars.
LaurentPoly rising(const LaurentPoly& u, const LaurentPoly& v, long long len);

// g_i = (1-q)(1-q^3)...(1-q^{2i-1}); g_0 = 1.
LaurentPoly gauss_product(long long i);

// s_{N|r} = (-1)^N sum_l [N l] (-q^r)^l.
LaurentPoly s_sum(long long N, HalfInt r);

// G_k: 0 for odd k, the alternating-sum value for even k.
LaurentPoly gauss_G(long long k);

// sigma_N(gamma) = sum_k [N k]_{q^2} q^{gamma k}.
LaurentPoly sigma(long long N, HalfInt gamma);

// Coefficients c_{l|s} of the odd-gamma expansion, zero unless 0 <= s <= l:
// closed form via base-q^2 binomials and Gauss-product quotients, and the
// two-term recurrence; the two must agree.
LaurentPoly c_coeff_closed(long long l, long long s);
LaurentPoly c_coeff_rec(long long l, long long s);

}  // namespace qseries::qcore
